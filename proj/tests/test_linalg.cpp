#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <jb/linalg.hpp>

#include <random>

using namespace jb;

namespace {

QMatrix from_rows(int rows, int cols, const std::vector<std::vector<long>>& v) {
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (v[i][j] != 0) m.set(i, j, Rat(v[i][j]));
    }
  }
  return m;
}

QMatrix random_sparse(std::mt19937_64& rng, int rows, int cols, int percent) {
  std::uniform_int_distribution<int> hit(0, 99);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (hit(rng) < percent) {
        Rat v(num(rng), den(rng));
        v.canonicalize();
        m.set(i, j, v);
      }
    }
  }
  return m;
}

}  // namespace

TEST_CASE("rational parse and format") {
  CHECK(rat_str(rat_parse("3/4")) == "3/4");
  CHECK(rat_str(rat_parse("-3/6")) == "-1/2");
  CHECK(rat_str(rat_parse("7")) == "7");
  CHECK(rat_str(rat_parse("-0")) == "0");
  CHECK(rat_str(rat_parse("4/2")) == "2");
  CHECK_THROWS_AS(rat_parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse(""), std::invalid_argument);
  CHECK_THROWS_AS(rat_parse("1 2"), std::invalid_argument);

  Rat a(3, 7);
  CHECK(a * (Rat(7) / 3) == 1);
}

TEST_CASE("falling-factorial binomial") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(3, 0) == 1);
  CHECK(binom(2, 5) == 0);
  CHECK(binom(4, -1) == 0);
  CHECK(binom(-1, 2) == 1);
  CHECK(binom(-2, 3) == -4);
  CHECK(binom(-1, 3) == -1);
}

TEST_CASE("rank on small matrices") {
  CHECK(rank(QMatrix::identity(3)) == 3);
  CHECK(rank(QMatrix(2, 5)) == 0);
  CHECK(rank(from_rows(2, 2, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(QMatrix::identity(2)).cols == 0);

  QMatrix m = from_rows(2, 2, {{1, 2}, {2, 4}});
  QMatrix k = kernel_basis(m);
  CHECK(k.cols == 1);
  CHECK(mul(m, k).is_zero());
  // One column proportional to (-2, 1).
  CHECK(k.at(0, 0) * 1 == k.at(1, 0) * -2);

  QMatrix z(1, 3);
  CHECK(kernel_basis(z).cols == 3);
}

TEST_CASE("cokernel data") {
  Cokernel c0 = cokernel_data(QMatrix::identity(4));
  CHECK(c0.dim == 0);

  Cokernel c1 = cokernel_data(QMatrix(3, 1));
  CHECK(c1.dim == 3);
  CHECK(c1.proj == QMatrix::identity(3));

  QMatrix col(3, 1);
  col.set(0, 0, Rat(1));
  Cokernel c2 = cokernel_data(col);
  CHECK(c2.dim == 2);
  CHECK(mul(c2.proj, col).is_zero());
  CHECK(mul(c2.proj, c2.section) == QMatrix::identity(2));
}

TEST_CASE("solve") {
  QMatrix id = QMatrix::identity(2);
  Vec b = {Rat(3), Rat(-5)};
  auto x = solve(id, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  QMatrix m = from_rows(2, 2, {{1, 2}, {2, 4}});
  auto y = solve(m, {Rat(1), Rat(2)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] + 2 * (*y)[1] == 1);

  CHECK_FALSE(solve(m, {Rat(1), Rat(1)}).has_value());
  CHECK_THROWS_AS(solve(m, {Rat(1)}), std::invalid_argument);
}

TEST_CASE("arithmetic helpers") {
  QMatrix a = from_rows(2, 3, {{1, 0, 2}, {0, -1, 1}});
  QMatrix b = from_rows(3, 2, {{1, 1}, {0, 2}, {-1, 0}});
  QMatrix ab = mul(a, b);
  CHECK(ab.at(0, 0) == -1);
  CHECK(ab.at(0, 1) == 1);
  CHECK(ab.at(1, 0) == -1);
  CHECK(ab.at(1, 1) == -2);

  CHECK(transpose(transpose(a)) == a);
  CHECK(sub(a, a).is_zero());
  CHECK(add(a, scale(a, Rat(-1))).is_zero());

  QMatrix h = hstack(a, a);
  CHECK(h.cols == 6);
  CHECK(h.at(1, 5) == 1);

  Vec y = matvec(a, {Rat(1), Rat(1), Rat(1)});
  CHECK(y[0] == 3);
  CHECK(y[1] == 0);
}

TEST_CASE("randomized rank-nullity and span properties") {
  std::mt19937_64 rng(20260816);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int trial = 0; trial < 12; ++trial) {
    QMatrix m = random_sparse(rng, dim(rng), dim(rng), 25);
    int r = rank(m);
    QMatrix k = kernel_basis(m);
    CHECK(r + k.cols == m.cols);
    CHECK(mul(m, k).is_zero());
    CHECK(rank(k) == k.cols);

    Cokernel ck = cokernel_data(m);
    CHECK(ck.dim == m.rows - r);
    CHECK(mul(ck.proj, m).is_zero());
    CHECK(mul(ck.proj, ck.section) == QMatrix::identity(ck.dim));
    CHECK(rank(ck.proj) == ck.dim);

    // Consistent system: b in the column space by construction.
    Vec x0(m.cols);
    std::uniform_int_distribution<long> val(-4, 4);
    for (auto& v : x0) v = Rat(val(rng));
    Vec b = matvec(m, x0);
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(matvec(m, *x) == b);
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    QMatrix m = random_sparse(rng, 60, 45, 20);
    QMatrix n = random_sparse(rng, 45, 30, 20);
    CHECK(mul(m, n, Exec::Serial) == mul(m, n, Exec::Parallel));
    Echelon es = echelon(m, Exec::Serial);
    Echelon ep = echelon(m, Exec::Parallel);
    CHECK(es.mat == ep.mat);
    CHECK(es.pivots == ep.pivots);
    CHECK(kernel_basis(m, Exec::Serial) == kernel_basis(m, Exec::Parallel));
  }
}
