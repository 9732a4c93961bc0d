// Acceptance gate: one line per criterion, nonzero exit when any fails.
// argv[1] = cli binary, argv[2] = data directory.
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jb/freelie.hpp"
#include "jb/jb.hpp"
#include "jb/ks.hpp"
#include "jb/series.hpp"

using namespace jb;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void criterion(int n, const std::string& label, const std::function<bool()>& body) {
  bool ok = false;
  std::string err;
  try {
    ok = body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  std::cout << "criterion " << n << " [" << label << "]: "
            << (ok ? "pass" : "FAIL");
  if (!err.empty()) std::cout << " (" << err << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

QMatrix rand_elt(const DgLie& l, const ArtinAlgebra& a, int d,
                 std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sm(-2, 2);
  QMatrix x(l.dim, a.dim());
  for (int i = 0; i < l.dim; ++i) {
    if (l.deg[i] != d) continue;
    for (int u = 0; u < a.dim(); ++u) {
      int c = sm(rng);
      if (c != 0) x.add_entry(i, u, Rat(c));
    }
  }
  return x;
}

DgLie end11() { return dg_end({1, 1}, {QMatrix::identity(1)}); }

DgLie end12() {
  QMatrix d(2, 1);
  d.add_entry(0, 0, Rat(1));
  return dg_end({1, 2}, {d});
}

LieAtom one_letter_atom() {
  return pair_atom(LieAlgebra::abelian(0), LieAlgebra::abelian(1),
                   QMatrix(1, 0));
}

LieAtom line_pair() {
  return pair_atom(LieAlgebra::abelian(1), LieAlgebra::abelian(1),
                   QMatrix::identity(1));
}

bool ring_flags(const DeformationRing& r) {
  return r.descent_ok && r.coassoc_ok && r.cocomm_ok && r.assoc_ok &&
         r.comm_ok && r.nilpotent_ok;
}

std::vector<DeformationRing> built_rings;

DeformationRing ring_of(const LieAtom& atom, int m) {
  DeformationRing r = deformation_ring(build_jb(atom, m));
  built_rings.push_back(r);
  return r;
}

struct CliOutcome {
  int code = -1;
  std::string output;
};

CliOutcome run_cli(const std::string& bin, const std::string& args,
                   const std::string& outfile) {
  std::string cmd = bin + " " + args + " > " + outfile + " 2>/dev/null";
  int st = std::system(cmd.c_str());
  CliOutcome out;
  if (st != -1 && WIFEXITED(st)) out.code = WEXITSTATUS(st);
  std::ifstream in(outfile);
  std::ostringstream s;
  s << in.rdbuf();
  out.output = s.str();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <cli-binary> <data-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string data = argv[2];
  const auto start = Clock::now();

  criterion(1, "bernoulli identity grid, order 30, under 10s", [&] {
    auto t0 = Clock::now();
    bool ok = true;
    for (const std::string& tag : default_identity_tags()) {
      IdentityCheck c = verify_identity(tag, 30);
      ok = ok && c.ok;
    }
    return ok && secs_since(t0) < 10.0;
  });

  criterion(2, "bracket sum identity, m = 1..6, m = 0 discrepancy surfaced", [&] {
    bool ok = true;
    for (int m = 1; m <= 6; ++m) {
      FreeIdentityReport r = verify_lemma01(m);
      ok = ok && r.ok && r.defect_terms == 0;
    }
    FreeIdentityReport r0 = lemma01_m0_report();
    return ok && r0.defect_terms > 0 && !r0.notes.empty();
  });

  criterion(3, "two-letter expansion, m = 1..6, m = 2 cancellation witnessed", [&] {
    bool ok = true;
    std::string m2notes;
    for (int m = 1; m <= 6; ++m) {
      FreeIdentityReport r = verify_eq124(m);
      ok = ok && r.ok && r.defect_terms == 0;
      if (m == 2) {
        for (const std::string& n : r.notes) m2notes += n + "\n";
      }
    }
    return ok && m2notes.find("cancels") != std::string::npos;
  });

  criterion(4, "d^2 = 0 on random pairs, matrix atoms, heisenberg", [&] {
    bool ok = true;
    std::mt19937_64 rng(20260816);
    for (int i = 0; i < 20; ++i) {
      LieAtom atom = random_nilpotent_pair(rng);
      ok = ok && atom.g.dim <= 4 && atom.h.dim <= 4;
      JBComplex cx = build_jb(atom, 1 + (i % 4));
      ok = ok && check_d2(cx).ok;
      built_rings.push_back(deformation_ring(cx));
    }
    for (auto [s, a] : {std::pair{1, 2}, {1, 3}, {2, 4}}) {
      LieAtom atom = gl_atom(coordinate_inclusion(s, a), GlVariant::Sub);
      ok = ok && check_d2(build_jb(atom, 3)).ok;
    }
    return ok && check_d2(build_jb(heisenberg_pair(), 3)).ok;
  });

  criterion(5, "grassmannian h0 dimensions and graded ring", [&] {
    bool ok = true;
    for (auto [s, a, m] : {std::tuple{1, 2, 3}, {1, 3, 3}, {2, 4, 2}}) {
      LieAtom atom = gl_atom(coordinate_inclusion(s, a), GlVariant::Sub);
      JBComplex cx = build_jb(atom, m);
      long d = static_cast<long>(s) * (a - s);
      Rat expect(0);
      for (int r = 1; r <= m; ++r) expect += binom(d + r - 1, r);
      ok = ok && Rat(h0(cx).dim) == expect;
      DeformationRing ring = deformation_ring(cx);
      built_rings.push_back(ring);
      ok = ok && graded_dims(ring).bound_ok;
    }
    return ok;
  });

  criterion(6, "one-letter ring is Q[t]/t^4, quasi-trivial ring is Q", [&] {
    DeformationRing r = ring_of(one_letter_atom(), 3);
    bool ok = r.n == 3;
    auto cell = [&](int a, int b) { return r.table[a][b]; };
    ok = ok && cell(0, 0) == Vec{Rat(0), Rat(2), Rat(0)};
    ok = ok && cell(0, 1) == Vec{Rat(0), Rat(0), Rat(3)};
    ok = ok && cell(1, 0) == Vec{Rat(0), Rat(0), Rat(3)};
    for (auto [a, b] : {std::pair{1, 1}, {0, 2}, {2, 0}, {1, 2}, {2, 1}, {2, 2}}) {
      ok = ok && cell(a, b) == Vec{Rat(0), Rat(0), Rat(0)};
    }
    GradedReport g = graded_dims(r);
    ok = ok && g.graded == std::vector<int>{1, 1, 1};

    DeformationRing triv = ring_of(line_pair(), 3);
    ok = ok && triv.n == 0;

    for (const DeformationRing& ring : built_rings) ok = ok && ring_flags(ring);
    return ok;
  });

  criterion(7, "restriction tower surjective with the right kernel", [&] {
    bool ok = true;
    for (const DeformationRing& ring : built_rings) {
      ok = ok && ring.tower_surjective && ring.tower_ring_hom &&
           ring.tower_kernel_ok;
    }
    return ok && !built_rings.empty();
  });

  criterion(8, "quasi-isomorphisms preserve h0", [&] {
    bool ok = true;
    for (int m = 1; m <= 3; ++m) {
      {
        LieAtom atom = heisenberg_pair();
        AtomMorphism id{QMatrix::identity(3), QMatrix::identity(3)};
        QuasiIsoReport r = quasi_iso_check(atom, atom, id, m);
        ok = ok && r.ok && r.h0_a == r.h0_b;
      }
      {
        LieAtom a = line_pair();
        LieAtom b = pair_atom(LieAlgebra::abelian(0), LieAlgebra::abelian(0),
                              QMatrix(0, 0));
        QuasiIsoReport r =
            quasi_iso_check(a, b, AtomMorphism{QMatrix(0, 1), QMatrix(0, 1)}, m);
        ok = ok && r.ok && r.h0_a == 0 && r.h0_b == 0;
      }
      {
        LieAtom a = gl_atom(coordinate_inclusion(1, 2), GlVariant::Sub);
        LieAtom b = subalgebra_pair(gl(2), a.i_map);
        QuasiIsoReport r = quasi_iso_check(
            a, b, AtomMorphism{QMatrix::identity(3), QMatrix::identity(4)}, m);
        ok = ok && r.ok && r.h0_a == r.h0_b;
      }
      {
        LieAtom a = subalgebra_pair(heisenberg(), std::vector<int>{0, 2});
        LieAtom b = subalgebra_pair(LieAlgebra::abelian(2), std::vector<int>{0});
        QMatrix mh(2, 3);
        mh.set(0, 0, Rat(1));
        mh.set(1, 1, Rat(1));
        QMatrix mg(1, 2);
        mg.set(0, 0, Rat(1));
        QuasiIsoReport r = quasi_iso_check(a, b, AtomMorphism{mg, mh}, m);
        ok = ok && r.ok && r.h0_a == r.h0_b;
      }
      {
        LieAtom a = one_letter_atom();
        LieAtom b = pair_atom(LieAlgebra::abelian(0), LieAlgebra::abelian(0),
                              QMatrix(0, 0));
        QuasiIsoReport r =
            quasi_iso_check(a, b, AtomMorphism{QMatrix(0, 0), QMatrix(0, 1)}, m);
        ok = ok && !r.ok;
      }
    }
    return ok;
  });

  criterion(9, "maurer-cartan, gauge, bch, and closure checks", [&] {
    bool ok = true;

    DgLie ab;
    ab.dim = 2;
    ab.deg = {0, 1};
    ab.labels = {"p", "q"};
    ab.del = QMatrix(2, 2);
    ab.del.add_entry(1, 0, Rat(1));
    ArtinAlgebra t2 = artin({"t"}, 2);
    QMatrix phi(2, t2.dim()), psi(2, t2.dim());
    phi.add_entry(1, 0, Rat(1));
    psi.add_entry(0, 0, Rat(1));
    DeformationDatum abelian{dg_id_pair(ab), t2, phi, psi};
    ok = ok && mc_defect(abelian).is_zero() && compat_defect(abelian).is_zero();
    DeformationDatum untrivialized{dg_id_pair(ab), t2, phi, QMatrix(2, t2.dim())};
    ok = ok && compat_defect(untrivialized) == scale(phi, Rat(-1));

    DgLie sb = dg_self_bracket();
    QMatrix vphi(2, t2.dim());
    vphi.add_entry(0, 0, Rat(1));
    DeformationDatum obstructed{dg_id_pair(sb), t2, vphi, QMatrix(2, t2.dim())};
    QMatrix expect(2, t2.dim());
    expect.add_entry(1, 1, Rat(1, 2));
    ok = ok && mc_defect(obstructed) == expect;

    std::mt19937_64 rng(20260816);
    DgLie e1 = end11(), e2 = end12();
    ArtinAlgebra t4 = artin({"t"}, 4);
    ArtinAlgebra st = artin({"s", "t"}, 2);
    for (int i = 0; i < 10; ++i) {
      const DgLie& l = i < 5 ? e1 : e2;
      const ArtinAlgebra& a = i < 5 ? t4 : st;
      QMatrix s = rand_elt(l, a, 0, rng);
      DeformationDatum d{dg_id_pair(l), a, deligne_phi(l, a, s), s};
      ok = ok && verify_exp_intertwine(d).ok;
    }

    ArtinAlgebra t3 = artin({"t"}, 3);
    for (int i = 0; i < 25; ++i) {
      const DgLie& l = i < 12 ? e1 : e2;
      const ArtinAlgebra& a = i < 12 ? t3 : st;
      QMatrix s = rand_elt(l, a, 0, rng);
      QMatrix moved = gauge_transform(l, a, deligne_phi(l, a, s),
                                      rand_elt(l, a, 0, rng));
      DeformationDatum d{dg_id_pair(l), a, moved, QMatrix(l.dim, a.dim())};
      ok = ok && mc_defect(d).is_zero();
    }

    DgLie heis = dg_ungraded(heisenberg());
    DgLie s2 = dg_ungraded(sl2());
    for (int i = 0; i < 8; ++i) {
      const DgLie& l = i % 2 == 0 ? heis : s2;
      const ArtinAlgebra& a = i < 4 ? t3 : t4;
      QMatrix x = rand_elt(l, a, 0, rng);
      QMatrix y = rand_elt(l, a, 0, rng);
      try {
        ok = ok && env_log(l, a, env_exp(l, a, x)) == x;
        bch(l, a, x, y);
      } catch (const std::domain_error&) {
        ok = false;
      }
    }
    QMatrix xt(3, 3), yt(3, 3), zexp(3, 3);
    xt.add_entry(0, 0, Rat(1));
    yt.add_entry(1, 0, Rat(1));
    zexp.add_entry(0, 0, Rat(1));
    zexp.add_entry(1, 0, Rat(1));
    zexp.add_entry(2, 1, Rat(1, 2));
    ok = ok && bch(heis, t3, xt, yt) == zexp;

    Lemma113Report l1 = lemma113_check(heisenberg_atom(), t2, 10, rng);
    Lemma113Report l2 = lemma113_check(heisenberg_pair(), t2, 10, rng);
    return ok && l1.ok && l2.ok;
  });

  criterion(10, "cli covers the suite deterministically, under budget", [&] {
    const std::string common = "--format json --seed 20260816 ";
    struct Cmd {
      std::string args;
      int expect_code;
    };
    std::vector<Cmd> cmds = {
        {"bernoulli --order 30 --check all", 0},
        {"bernoulli --order 0 --check eq05", 0},
        {"lie verify --kind lemma01 --max-m 6", 0},
        {"lie verify --kind eq124 --max-m 6", 0},
        {"complex --atom " + data + "/heisenberg_pair.json --m 3", 0},
        {"complex --atom " + data + "/one_letter.json --m 3", 0},
        {"complex --atom " + data + "/line_pair.json --m 3", 0},
        {"complex --suite random-pairs --count 20 --max-m 4", 0},
        {"complex --suite quasi-iso", 0},
        {"examples --kind grassmannian --sub 1 --amb 2 --m 3", 0},
        {"examples --kind grassmannian --sub 1 --amb 3 --m 3", 0},
        {"examples --kind grassmannian --sub 2 --amb 4 --m 2", 0},
        {"mc --file " + data + "/mc_abelian.json", 0},
        {"mc --file " + data + "/mc_obstruction.json", 1},
        {"mc --suite gauge", 0},
        {"mc --suite intertwine", 0},
        {"mc --suite bch", 0},
        {"mc --suite lemma113", 0},
    };
    bool ok = true;
    for (size_t k = 0; k < cmds.size(); ++k) {
      std::string base = "acc_cli_" + std::to_string(k);
      CliOutcome first = run_cli(cli, common + cmds[k].args, base + "_a.json");
      CliOutcome second = run_cli(cli, common + cmds[k].args, base + "_b.json");
      bool good = first.code == cmds[k].expect_code &&
                  second.code == first.code && !first.output.empty() &&
                  first.output == second.output;
      if (!good) {
        std::cout << "  cli mismatch: " << cmds[k].args << " (exit "
                  << first.code << ", expected " << cmds[k].expect_code << ")"
                  << std::endl;
      }
      ok = ok && good;
    }
    CliOutcome usage = run_cli(cli, "examples --kind grassmannian --sub 2 --amb 2",
                               "acc_cli_usage.json");
    ok = ok && usage.code == 2;
    CliOutcome badfile =
        run_cli(cli, "complex --atom " + data + "/missing.json --m 2",
                "acc_cli_missing.json");
    ok = ok && badfile.code == 2;
    return ok && secs_since(start) < 300.0;
  });

  std::cout << (failures == 0 ? "acceptance: all criteria pass"
                              : "acceptance: " + std::to_string(failures) +
                                    " criteria failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
