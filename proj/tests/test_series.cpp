#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <jb/series.hpp>

using namespace jb;

TEST_CASE("bernoulli coefficients") {
  // Frozen expected values c_0..c_12 (c_n = B_n/n!).
  const char* expected[] = {"1",          "-1/2", "1/12",        "0",
                            "-1/720",     "0",    "1/30240",     "0",
                            "-1/1209600", "0",    "1/47900160",  "0",
                            "-691/1307674368000"};
  auto c = bernoulli_coeffs(12);
  for (int n = 0; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(c[n] == rat_parse(expected[n]));
  }

  // Independent double-sum oracle agrees through n = 12.
  auto d = bernoulli_coeffs_double_sum(12);
  for (int n = 1; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(c[n] == d[n]);
  }

  // Odd coefficients vanish beyond c_1.
  auto c30 = bernoulli_coeffs(30);
  for (int n = 3; n <= 30; n += 2) CHECK(c30[n] == 0);
}

TEST_CASE("series C and B") {
  PowerSeries C = series(SeriesKind::C, 2);
  CHECK(C.c[0] == 1);
  CHECK(C.c[1] == Rat(-1, 2));
  CHECK(C.c[2] == Rat(1, 12));

  PowerSeries B = series(SeriesKind::B, 9);
  CHECK(B.c[0] == 1);
  for (int n = 1; n <= 9; n += 2) CHECK(B.c[n] == 0);

  CHECK(series(SeriesKind::C, 0).c[0] == 1);
}

TEST_CASE("apply_Dk") {
  PowerSeries x2(4);
  x2.c[2] = 1;
  PowerSeries d1 = apply_Dk(x2, 1);
  CHECK(d1.c[2] == -1);  // (-1)^1 binom(1,1)

  PowerSeries x(4);
  x.c[1] = 1;
  for (int k = 1; k <= 4; ++k) CHECK(apply_Dk(x, k).is_zero());

  // D_0 is the identity.
  PowerSeries f(4);
  f.c[0] = 3;
  f.c[3] = Rat(-2, 7);
  CHECK(apply_Dk(f, 0, 5).c[3] == Rat(-2, 7));

  // Shifted multiplier: (-1)^2 binom(5-1+3, 2) = 21 at i = 5.
  PowerSeries x5(6);
  x5.c[5] = 1;
  CHECK(apply_Dk(x5, 2, -3).c[5] == 21);

  // D_1[r] = D_1 + r D_0 on an arbitrary series.
  PowerSeries g(10);
  for (int n = 0; n <= 10; ++n) g.c[n] = Rat(n + 1, 3);
  for (long r = -3; r <= 3; ++r) {
    PowerSeries lhs = apply_Dk(g, 1, r);
    PowerSeries rhs = ps_add(apply_Dk(g, 1), ps_scale(g, Rat(r)));
    CHECK(ps_sub(lhs, rhs).is_zero());
  }
}

TEST_CASE("series arithmetic") {
  PowerSeries C = series(SeriesKind::C, 12);
  PowerSeries B = series(SeriesKind::B, 12);
  // B - C = x/2.
  PowerSeries d = ps_sub(B, C);
  CHECK(d.c[1] == Rat(1, 2));
  CHECK(d.first_nonzero() == 1);
  d.c[1] = 0;
  CHECK(d.is_zero());

  // x * C' has order one above C'.
  PowerSeries xdC = ps_shift(ps_derivative(C), 1);
  CHECK(xdC.order == 12);
  CHECK(xdC.c[1] == Rat(-1, 2));
}

TEST_CASE("scalar identities") {
  CHECK(verify_identity("eq04", 12).ok);
  CHECK(verify_identity("eq05", 30).ok);
  CHECK(verify_identity("eq05", 0).ok);
  CHECK(verify_identity("eq06", 30).ok);
  CHECK(verify_identity("quad_rec", 30).ok);
}

TEST_CASE("operator expansion identities") {
  for (int k = 1; k <= 8; ++k) {
    CAPTURE(k);
    CHECK(verify_identity("prop02(" + std::to_string(k) + ")", 30).ok);
    IdentityCheck bis =
        verify_identity("eq08bis(" + std::to_string(k) + ")", 30);
    CHECK(bis.ok);
    REQUIRE(bis.notes.size() == 1);
    // The sign-free displayed variant fails first at index 1.
    CHECK(bis.notes[0].find("index 1 =") != std::string::npos);
  }

  // Frozen variant fingerprints.
  IdentityCheck b1 = verify_identity("eq08bis(1)", 30);
  CHECK(b1.notes[0].find("= 1") != std::string::npos);
  IdentityCheck b2 = verify_identity("eq08bis(2)", 30);
  CHECK(b2.notes[0].find("= -1") != std::string::npos);
}

TEST_CASE("shifted expansions") {
  for (int k = 1; k <= 8; ++k) {
    for (long r = -3; r <= 3; ++r) {
      CAPTURE(k);
      CAPTURE(r);
      std::string suffix =
          "(" + std::to_string(k) + "," + std::to_string(r) + ")";
      CHECK(verify_identity("eq011" + suffix, 30).ok);
      CHECK(verify_identity("cor03" + suffix, 30).ok);
    }
  }

  // The variant coefficient binom(r+1-j,j) first fails at k = 2, r = 1,
  // with defect 1 in the constant coefficient.
  IdentityCheck v = verify_identity("eq011(2,1)", 20);
  CHECK(v.ok);
  REQUIRE(!v.notes.empty());
  CHECK(v.notes[0].find("index 0 = 1") != std::string::npos);
  IdentityCheck v3 = verify_identity("eq011(3,1)", 20);
  CHECK(v3.notes[0].find("index 0 = 3") != std::string::npos);

  // Plain -xC trailing variant fails at the constant coefficient for
  // k = 1, r = 1; the corrected trailing polynomial is exact.
  IdentityCheck c11 = verify_identity("cor03(1,1)", 20);
  CHECK(c11.ok);
  REQUIRE(c11.notes.size() >= 3);
  CHECK(c11.notes[0].find("index 0 = -1") != std::string::npos);
  CHECK(c11.notes[1].find("exact") != std::string::npos);
  CHECK(c11.notes[2].find("index 0 = 1") != std::string::npos);

  // At r = 0 the trailing correction vanishes and the identity reduces to
  // the unshifted expansion; the -xC variant still fails there.
  IdentityCheck c0 = verify_identity("cor03(3,0)", 20);
  CHECK(c0.ok);
  CHECK(c0.notes[0].find("exact") == std::string::npos);
}

TEST_CASE("tag errors") {
  CHECK_THROWS_AS(verify_identity("nosuch", 10), std::invalid_argument);
  CHECK_THROWS_AS(verify_identity("prop02(0)", 10), std::invalid_argument);
  CHECK_THROWS_AS(verify_identity("prop02", 10), std::invalid_argument);
  CHECK_THROWS_AS(verify_identity("cor03(1)", 10), std::invalid_argument);
  CHECK_THROWS_AS(verify_identity("eq011(1,x)", 10), std::invalid_argument);
}

TEST_CASE("default tag grid") {
  auto tags = default_identity_tags();
  CHECK(tags.size() == 4 + 8 + 8 + 56 + 56);
  for (const auto& t : tags) {
    CAPTURE(t);
    CHECK(verify_identity(t, 14).ok);
  }
}
