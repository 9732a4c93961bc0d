#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jb/freelie.hpp"
#include "jb/io.hpp"
#include "jb/jb.hpp"
#include "jb/ks.hpp"
#include "jb/series.hpp"

using namespace jb;

namespace {

std::string two_digits(int i) {
  std::ostringstream s;
  s << std::setw(2) << std::setfill('0') << i;
  return s.str();
}

std::vector<std::string> dg_labels(const DgLie& l) {
  std::vector<std::string> out;
  for (int i = 0; i < l.dim; ++i) out.push_back(l.label(i));
  return out;
}

Json rat_vec_json(const Vec& v) {
  Json out = Json::array();
  for (const Rat& x : v) out.push_back(rat_str(x));
  return out;
}

Json rat_matrix_json(const QMatrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows; ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(rat_str(m.at(r, c)));
    out.push_back(row);
  }
  return out;
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

void run_bernoulli(RunReport& rep, int order, const std::string& check) {
  std::vector<std::string> tags;
  if (check == "all") {
    tags = default_identity_tags();
  } else {
    tags.push_back(check);
  }
  for (const std::string& tag : tags) {
    IdentityCheck c = verify_identity(tag, order);
    std::string witness;
    if (!c.ok) {
      witness = "x^" + std::to_string(c.first_bad) + " coefficient " +
                rat_str(c.first_bad_value);
    }
    Json detail = Json::object();
    if (!c.notes.empty()) detail["notes"] = c.notes;
    rep.add(tag, c.ok, witness, detail);
  }
  rep.extra["order"] = order;
}

void run_lie_verify(RunReport& rep, const std::string& kind, int max_m) {
  for (int m = 1; m <= max_m; ++m) {
    FreeIdentityReport r =
        kind == "lemma01" ? verify_lemma01(m) : verify_eq124(m);
    std::string witness;
    if (!r.ok) witness = std::to_string(r.defect_terms) + " defect terms";
    Json detail = Json::object();
    if (!r.notes.empty()) detail["notes"] = r.notes;
    rep.add(kind + " m=" + std::to_string(m), r.ok, witness, detail);
  }
  if (kind == "lemma01") {
    FreeIdentityReport r0 = lemma01_m0_report();
    rep.skip("lemma01 m=0", r0.notes.front());
  }
}

void ring_into_report(RunReport& rep, const DeformationRing& ring,
                      bool with_graded) {
  std::string witness;
  auto flag = [&](bool ok, const char* name) {
    if (!ok) {
      if (!witness.empty()) witness += ", ";
      witness += name;
    }
  };
  flag(ring.descent_ok, "descent");
  flag(ring.coassoc_ok, "coassociativity");
  flag(ring.cocomm_ok, "cocommutativity");
  flag(ring.assoc_ok, "associativity");
  flag(ring.comm_ok, "commutativity");
  flag(ring.nilpotent_ok, "nilpotence");
  flag(ring.tower_surjective, "tower surjectivity");
  flag(ring.tower_ring_hom, "tower ring map");
  flag(ring.tower_kernel_ok, "tower kernel");
  Json detail = {{"n", ring.n}, {"h1", ring.h1_dim}, {"prev_n", ring.prev_n}};
  rep.add("ring", ring.ok(), witness, detail);

  Json table = Json::array();
  for (int a = 0; a < ring.n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < ring.n; ++b) row.push_back(rat_vec_json(ring.table[a][b]));
    table.push_back(row);
  }
  rep.extra["ring"] = {{"n", ring.n},
                       {"h1", ring.h1_dim},
                       {"table", table},
                       {"prev_n", ring.prev_n},
                       {"eta", rat_matrix_json(ring.eta)}};

  if (with_graded) {
    GradedReport g = graded_dims(ring);
    Json gd = {{"graded", g.graded},
               {"sym_expected", g.sym_expected},
               {"bound_ok", g.bound_ok}};
    rep.add("graded", true, "", gd);
    rep.extra["graded"] = gd;
  }
}

void run_complex_file(RunReport& rep, const std::string& path, int m, bool fd2,
                      bool fh0, bool fring, bool fgraded) {
  if (!fd2 && !fh0 && !fring && !fgraded) fd2 = fh0 = fring = fgraded = true;
  LieAtom atom = atom_from_file(path);
  JBComplex cx = build_jb(atom, m);
  rep.extra["atom"] = path;
  rep.extra["m"] = m;
  rep.extra["term_dims"] = cx.term_dims();
  rep.extra["letters"] = cx.letters;
  rep.extra["letter_level"] = cx.letter_level;
  rep.extra["bracket_sign_convention"] = kBracketSignConvention;
  if (fd2) {
    D2Report r = check_d2(cx);
    rep.add("d2", r.ok, r.ok ? "" : r.failures.front());
  }
  if (fh0) {
    H0Data h = h0(cx);
    rep.add("h0", true, "", Json{{"dim", h.dim}});
    rep.extra["h0_dim"] = h.dim;
  }
  if (fring || fgraded) {
    ring_into_report(rep, deformation_ring(cx), fgraded);
  }
}

void run_complex_random(RunReport& rep, int count, int max_m, long seed) {
  rep.seed = seed;
  std::mt19937_64 rng(static_cast<unsigned long>(seed));
  for (int i = 0; i < count; ++i) {
    LieAtom atom = random_nilpotent_pair(rng);
    int m = 1 + (i % max_m);
    JBComplex cx = build_jb(atom, m);
    D2Report d = check_d2(cx);
    DeformationRing ring = deformation_ring(cx);
    std::string witness;
    if (!d.ok) witness = d.failures.front();
    if (d.ok && !ring.ok()) witness = "ring axioms";
    rep.add("pair " + two_digits(i) + " (m=" + std::to_string(m) + ")",
            d.ok && ring.ok(), witness,
            Json{{"dim_g", atom.g.dim}, {"dim_h", atom.h.dim}});
  }
}

void run_complex_quasi_iso(RunReport& rep) {
  for (int m = 1; m <= 3; ++m) {
    std::string suffix = " m=" + std::to_string(m);
    {
      LieAtom atom = heisenberg_pair();
      AtomMorphism id{QMatrix::identity(3), QMatrix::identity(3)};
      QuasiIsoReport r = quasi_iso_check(atom, atom, id, m);
      rep.add("heisenberg identity" + suffix, r.ok && r.h0_a == r.h0_b,
              r.ok ? "" : r.failures.front(),
              Json{{"h0_a", r.h0_a}, {"h0_b", r.h0_b}});
    }
    {
      LieAtom a = line_pair();
      LieAtom b = pair_atom(LieAlgebra::abelian(0), LieAlgebra::abelian(0),
                            QMatrix(0, 0));
      AtomMorphism zero{QMatrix(0, 1), QMatrix(0, 1)};
      QuasiIsoReport r = quasi_iso_check(a, b, zero, m);
      rep.add("line pair to trivial" + suffix,
              r.ok && r.h0_a == 0 && r.h0_b == 0,
              r.ok ? "" : r.failures.front(),
              Json{{"h0_a", r.h0_a}, {"h0_b", r.h0_b}});
    }
    {
      LieAtom a = gl_atom(coordinate_inclusion(1, 2), GlVariant::Sub);
      LieAtom b = subalgebra_pair(gl(2), a.i_map);
      AtomMorphism f{QMatrix::identity(3), QMatrix::identity(4)};
      QuasiIsoReport r = quasi_iso_check(a, b, f, m);
      rep.add("gl inclusion vs subalgebra pair" + suffix,
              r.ok && r.h0_a == r.h0_b, r.ok ? "" : r.failures.front(),
              Json{{"h0_a", r.h0_a}, {"h0_b", r.h0_b}});
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
      rep.add("heisenberg central quotient" + suffix,
              r.ok && r.h0_a == r.h0_b, r.ok ? "" : r.failures.front(),
              Json{{"h0_a", r.h0_a}, {"h0_b", r.h0_b}});
    }
    {
      LieAtom a = one_letter_atom();
      LieAtom b = pair_atom(LieAlgebra::abelian(0), LieAlgebra::abelian(0),
                            QMatrix(0, 0));
      AtomMorphism zero{QMatrix(0, 0), QMatrix(0, 1)};
      QuasiIsoReport r = quasi_iso_check(a, b, zero, m);
      rep.add("control: one letter vs trivial" + suffix, !r.ok,
              r.ok ? "expected a mismatch report" : "",
              Json{{"h0_a", r.h0_a}, {"h0_b", r.h0_b}});
    }
  }
}

void run_examples(RunReport& rep, int sub, int amb, int m) {
  if (sub < 1 || sub >= amb) {
    throw std::invalid_argument("examples: need 1 <= sub < amb");
  }
  LieAtom atom = gl_atom(coordinate_inclusion(sub, amb), GlVariant::Sub);
  JBComplex cx = build_jb(atom, m);
  rep.extra["kind"] = "grassmannian";
  rep.extra["sub"] = sub;
  rep.extra["amb"] = amb;
  rep.extra["m"] = m;
  rep.extra["term_dims"] = cx.term_dims();

  D2Report d = check_d2(cx);
  rep.add("d2", d.ok, d.ok ? "" : d.failures.front());

  H0Data h = h0(cx);
  long dim_hom = static_cast<long>(sub) * (amb - sub);
  Rat expect(0);
  for (int r = 1; r <= m; ++r) expect += binom(dim_hom + r - 1, r);
  rep.add("h0 dimension", Rat(h.dim) == expect,
          Rat(h.dim) == expect
              ? ""
              : "dim " + std::to_string(h.dim) + ", expected " + rat_str(expect),
          Json{{"dim", h.dim}, {"expected", rat_str(expect)}});
  rep.extra["h0_dim"] = h.dim;

  ring_into_report(rep, deformation_ring(cx), false);
  GradedReport g = graded_dims(deformation_ring(cx));
  std::string witness;
  if (!g.bound_ok) witness = "graded dimensions differ from symmetric powers";
  rep.add("graded matches symmetric powers", g.bound_ok, witness,
          Json{{"graded", g.graded}, {"sym_expected", g.sym_expected}});
  rep.extra["graded"] = g.graded;
}

struct McFlags {
  bool mc = false;
  bool compat = false;
  bool intertwine = false;
  bool ks = false;
};

void run_mc_file(RunReport& rep, const std::string& path, const McFlags& flags,
                 int m_order) {
  DeformationFile f = deformation_from_file(path);
  DgReport dg = check_dg(f.pair);
  if (!dg.ok) {
    throw std::invalid_argument(path + ": dg axioms fail: " +
                                dg.failures.front());
  }
  DeformationDatum d{f.pair, f.base, f.phi, f.psi};
  rep.extra["file"] = path;
  QMatrix mc = mc_defect(d);
  QMatrix compat = compat_defect(d);
  if (flags.mc) {
    rep.add("mc", mc.is_zero(),
            first_entry_witness(mc, dg_labels(f.pair.g), f.base));
  }
  if (flags.compat) {
    rep.add("compat", compat.is_zero(),
            first_entry_witness(compat, dg_labels(f.pair.h), f.base));
  }
  if (flags.intertwine) {
    if (!mc.is_zero() || !compat.is_zero()) {
      rep.skip("intertwine", "requires a compatible Maurer-Cartan datum");
    } else {
      IntertwineReport ir = verify_exp_intertwine(d);
      rep.add("intertwine", ir.ok, ir.ok ? "" : ir.failures.front(),
              Json{{"convention", ir.convention}});
      rep.extra["convention"] = ir.convention;
    }
  }
  if (flags.ks) {
    KsVector k = ks_vector(d, m_order);
    std::string witness = first_entry_witness(k.mc, dg_labels(f.pair.g), f.base);
    if (witness.empty()) {
      witness = first_entry_witness(k.compat, dg_labels(f.pair.h), f.base);
    }
    rep.add("ks", k.defects_ok, witness, Json{{"m_order", m_order}});
    Json comps = Json::object();
    for (const auto& [key, v] : k.comp) {
      comps["r" + std::to_string(key.first) + "n" + std::to_string(key.second)] =
          rat_vec_json(v);
    }
    Json vg = Json::array(), vh = Json::array();
    for (const auto& [i, u] : k.vg_basis) {
      vg.push_back(f.pair.g.label(i) + "*" + f.base.mono_str(u));
    }
    for (const auto& [i, u] : k.vh_basis) {
      vh.push_back(f.pair.h.label(i) + "*" + f.base.mono_str(u));
    }
    rep.extra["ks"] = {{"m_order", m_order},
                       {"vg_basis", vg},
                       {"vh_basis", vh},
                       {"components", comps}};
  }
}

void run_mc_suite(RunReport& rep, const std::string& suite, long seed) {
  rep.seed = seed;
  std::mt19937_64 rng(static_cast<unsigned long>(seed));
  if (suite == "gauge") {
    DgLie e1 = end11(), e2 = end12();
    ArtinAlgebra t3 = artin({"t"}, 3);
    ArtinAlgebra st = artin({"s", "t"}, 2);
    for (int i = 0; i < 25; ++i) {
      const DgLie& l = i < 12 ? e1 : e2;
      const ArtinAlgebra& a = i < 12 ? t3 : st;
      QMatrix s = rand_elt(l, a, 0, rng);
      QMatrix phi = deligne_phi(l, a, s);
      QMatrix mu = rand_elt(l, a, 0, rng);
      QMatrix moved = gauge_transform(l, a, phi, mu);
      DeformationDatum d{dg_id_pair(l), a, moved, QMatrix(l.dim, a.dim())};
      QMatrix defect = mc_defect(d);
      rep.add("gauge trial " + two_digits(i), defect.is_zero(),
              first_entry_witness(defect, dg_labels(l), a));
    }
  } else if (suite == "intertwine") {
    DgLie e1 = end11(), e2 = end12();
    ArtinAlgebra t4 = artin({"t"}, 4);
    ArtinAlgebra st = artin({"s", "t"}, 2);
    for (int i = 0; i < 10; ++i) {
      const DgLie& l = i < 5 ? e1 : e2;
      const ArtinAlgebra& a = i < 5 ? t4 : st;
      QMatrix s = rand_elt(l, a, 0, rng);
      DeformationDatum d{dg_id_pair(l), a, deligne_phi(l, a, s), s};
      IntertwineReport ir = verify_exp_intertwine(d);
      rep.add("intertwine trial " + two_digits(i), ir.ok,
              ir.ok ? "" : ir.failures.front());
      rep.extra["convention"] = ir.convention;
    }
  } else if (suite == "bch") {
    ArtinAlgebra t3 = artin({"t"}, 3);
    DgLie ab2 = dg_ungraded(LieAlgebra::abelian(2));
    QMatrix ax = rand_elt(ab2, t3, 0, rng);
    QMatrix ay = rand_elt(ab2, t3, 0, rng);
    rep.add("abelian sum", bch(ab2, t3, ax, ay) == add(ax, ay));

    DgLie heis = dg_ungraded(heisenberg());
    QMatrix xt(3, 3), yt(3, 3), zexp(3, 3);
    xt.add_entry(0, 0, Rat(1));
    yt.add_entry(1, 0, Rat(1));
    zexp.add_entry(0, 0, Rat(1));
    zexp.add_entry(1, 0, Rat(1));
    zexp.add_entry(2, 1, Rat(1, 2));
    rep.add("heisenberg witness", bch(heis, t3, xt, yt) == zexp);

    DgLie s2 = dg_ungraded(sl2());
    ArtinAlgebra t4 = artin({"t"}, 4);
    for (int i = 0; i < 8; ++i) {
      const DgLie& l = i % 2 == 0 ? heis : s2;
      const ArtinAlgebra& a = i < 4 ? t3 : t4;
      QMatrix x = rand_elt(l, a, 0, rng);
      QMatrix y = rand_elt(l, a, 0, rng);
      bool ok = true;
      std::string witness;
      try {
        if (!(env_log(l, a, env_exp(l, a, x)) == x)) {
          ok = false;
          witness = "log(exp(x)) != x";
        }
        bch(l, a, x, y);
      } catch (const std::domain_error& e) {
        ok = false;
        witness = e.what();
      }
      rep.add("lie valued trial " + two_digits(i), ok, witness);
    }
  } else {  // lemma113
    ArtinAlgebra t3 = artin({"t"}, 2);
    Lemma113Report r1 = lemma113_check(heisenberg_atom(), t3, 10, rng);
    rep.add("heisenberg atom", r1.ok, r1.ok ? "" : r1.failures.front(),
            Json{{"samples", r1.samples}});
    Lemma113Report r2 = lemma113_check(heisenberg_pair(), t3, 10, rng);
    rep.add("heisenberg pair", r2.ok, r2.ok ? "" : r2.failures.front(),
            Json{{"samples", r2.samples}});
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Lie atom, Jacobi-Bernoulli complex, and deformation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "plain";
  long seed = 20260816;
  bool timing = false;
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "plain"}));
  app.add_option("--seed", seed, "seed for randomized suites");
  app.add_flag("--timing", timing, "include wall time in the report");

  CLI::App* cb = app.add_subcommand("bernoulli", "Bernoulli operator identity grid");
  int order = 30;
  std::string check = "all";
  cb->add_option("--order", order, "truncation order")->check(CLI::NonNegativeNumber);
  cb->add_option("--check", check, "identity tag, or all");

  CLI::App* cl = app.add_subcommand("lie", "free Lie algebra verifiers");
  cl->require_subcommand(1);
  CLI::App* clv = cl->add_subcommand("verify", "iterated bracket identities");
  std::string kind;
  int max_m = 6;
  clv->add_option("--kind", kind, "which identity family")
      ->required()
      ->check(CLI::IsMember({"lemma01", "eq124"}));
  clv->add_option("--max-m", max_m, "largest order")->check(CLI::PositiveNumber);

  CLI::App* cc = app.add_subcommand("complex", "Jacobi-Bernoulli complex of an atom");
  std::string atom_path;
  int cm = 2;
  bool fd2 = false, fh0 = false, fring = false, fgraded = false;
  std::string csuite;
  int count = 20, cmax_m = 4;
  cc->add_option("--atom", atom_path, "atom file");
  cc->add_option("--m", cm, "complex order")->check(CLI::PositiveNumber);
  cc->add_flag("--d2", fd2, "verify the differential squares to zero");
  cc->add_flag("--h0", fh0, "compute degree zero cohomology");
  cc->add_flag("--ring", fring, "compute the deformation ring");
  cc->add_flag("--graded", fgraded, "graded dimensions of the maximal ideal");
  cc->add_option("--suite", csuite, "built-in suite")
      ->check(CLI::IsMember({"random-pairs", "quasi-iso"}));
  cc->add_option("--count", count, "random pair count")->check(CLI::PositiveNumber);
  cc->add_option("--max-m", cmax_m, "largest order for random pairs")
      ->check(CLI::PositiveNumber);

  CLI::App* ce = app.add_subcommand("examples", "built-in example atoms");
  std::string ekind = "grassmannian";
  int sub = 0, amb = 0, em = 2;
  ce->add_option("--kind", ekind, "example family")
      ->check(CLI::IsMember({"grassmannian"}));
  ce->add_option("--sub", sub, "subspace dimension")->required();
  ce->add_option("--amb", amb, "ambient dimension")->required();
  ce->add_option("--m", em, "complex order")->check(CLI::PositiveNumber);

  CLI::App* cmc = app.add_subcommand("mc", "Maurer-Cartan and compatibility checks");
  std::string mfile;
  std::vector<std::string> mchecks;
  int m_order = 2;
  std::string msuite;
  cmc->add_option("--file", mfile, "deformation datum file");
  cmc->add_option("--check", mchecks, "checks to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"mc", "compat", "intertwine", "ks"}));
  cmc->add_option("--m-order", m_order, "highest total power in the ks vector")
      ->check(CLI::PositiveNumber);
  cmc->add_option("--suite", msuite, "built-in suite")
      ->check(CLI::IsMember({"gauge", "intertwine", "bch", "lemma113"}));

  CLI11_PARSE(app, argc, argv);

  RunReport rep;
  {
    std::string cmd;
    for (int i = 1; i < argc; ++i) {
      if (i > 1) cmd += " ";
      cmd += argv[i];
    }
    rep.command = cmd;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    if (cb->parsed()) {
      run_bernoulli(rep, order, check);
    } else if (clv->parsed()) {
      run_lie_verify(rep, kind, max_m);
    } else if (cc->parsed()) {
      if (atom_path.empty() == csuite.empty()) {
        throw std::invalid_argument("complex: pass exactly one of --atom or --suite");
      }
      if (!atom_path.empty()) {
        run_complex_file(rep, atom_path, cm, fd2, fh0, fring, fgraded);
      } else if (csuite == "random-pairs") {
        run_complex_random(rep, count, cmax_m, seed);
      } else {
        run_complex_quasi_iso(rep);
      }
    } else if (ce->parsed()) {
      run_examples(rep, sub, amb, em);
    } else if (cmc->parsed()) {
      if (mfile.empty() == msuite.empty()) {
        throw std::invalid_argument("mc: pass exactly one of --file or --suite");
      }
      if (!mfile.empty()) {
        McFlags flags;
        if (mchecks.empty()) {
          flags = {true, true, true, true};
        } else {
          for (const std::string& c : mchecks) {
            if (c == "mc") flags.mc = true;
            if (c == "compat") flags.compat = true;
            if (c == "intertwine") flags.intertwine = true;
            if (c == "ks") flags.ks = true;
          }
        }
        run_mc_file(rep, mfile, flags, m_order);
      } else {
        run_mc_suite(rep, msuite, seed);
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (timing) {
    rep.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  }

  if (format == "json") {
    std::cout << report_json(rep).dump(2) << "\n";
  } else {
    std::cout << report_plain(rep);
  }
  return rep.all_pass() ? 0 : 1;
}
