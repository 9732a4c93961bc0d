#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>

#include "jb/io.hpp"
#include "jb/jb.hpp"

using namespace jb;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = "tmp_" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("atom files") {
  std::string path = write_temp("atom.json", R"({
    "format": 1,
    "lie_algebra": {
      "dim": 3,
      "labels": ["x", "y", "z"],
      "brackets": [[0, 1, [[2, "1"]]]]
    },
    "module": {
      "dim": 3,
      "action": [[0, 1, [[2, "1"]]], [1, 0, [[2, "-1"]]]]
    },
    "atom_i": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    "hull": {
      "lie_algebra": {"dim": 3, "brackets": [[0, 1, [[2, "1"]]]]},
      "embed_h": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
      "embed_g": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    }
  })");
  LieAtom atom = atom_from_file(path);
  CHECK(atom.g.dim == 3);
  CHECK(atom.h.dim == 3);
  CHECK(atom.g.labels[2] == "z");
  CHECK(atom.i_map == QMatrix::identity(3));
  REQUIRE(atom.hull.has_value());
  CHECK(check_structures(atom).ok);

  LieAtom named = heisenberg_pair();
  CHECK(atom.g.bracket_basis(0, 1) == named.g.bracket_basis(0, 1));
  JBComplex cx = build_jb(atom, 2);
  CHECK(check_d2(cx).ok);

  SUBCASE("rejects a zero denominator and names the file") {
    std::string badpath = write_temp("bad_rat.json", R"({
      "format": 1,
      "lie_algebra": {"dim": 1, "brackets": []},
      "module": {"dim": 1, "action": []},
      "atom_i": [["1/0"]]
    })");
    CHECK_THROWS_WITH_AS(atom_from_file(badpath),
                         doctest::Contains("bad_rat"), std::invalid_argument);
  }
  SUBCASE("rejects a missing format tag") {
    std::string badpath = write_temp("no_format.json",
                                     R"({"lie_algebra": {"dim": 0}})");
    CHECK_THROWS_AS(atom_from_file(badpath), std::invalid_argument);
  }
  SUBCASE("rejects out of range bracket targets") {
    std::string badpath = write_temp("bad_bracket.json", R"({
      "format": 1,
      "lie_algebra": {"dim": 2, "brackets": [[0, 1, [[5, "1"]]]]},
      "module": {"dim": 0, "action": []},
      "atom_i": []
    })");
    CHECK_THROWS_AS(atom_from_file(badpath), std::invalid_argument);
  }
  SUBCASE("rejects malformed json with the path in the message") {
    std::string badpath = write_temp("syntax.json", "{ not json");
    CHECK_THROWS_WITH_AS(atom_from_file(badpath), doctest::Contains("syntax"),
                         std::invalid_argument);
  }
  SUBCASE("rejects dense matrices of the wrong shape") {
    std::string badpath = write_temp("bad_shape.json", R"({
      "format": 1,
      "lie_algebra": {"dim": 1, "brackets": []},
      "module": {"dim": 2, "action": []},
      "atom_i": [["1"]]
    })");
    CHECK_THROWS_AS(atom_from_file(badpath), std::invalid_argument);
  }
}

TEST_CASE("deformation files") {
  std::string path = write_temp("datum.json", R"({
    "format": 1,
    "base": {"vars": ["s", "t"], "max_degree": 2},
    "dg_pair": {
      "g": {"dim": 2, "deg": [0, 1], "labels": ["p", "q"],
            "brackets": [], "del": [[1, 0, "1"]]},
      "h": {"dim": 2, "deg": [0, 1], "labels": ["p", "q"],
            "brackets": [], "del": [[1, 0, "1"]]},
      "i": [[1, 0], [0, 1]]
    },
    "phi": [[1, "1*t"], [1, "-2/3*s*t"]],
    "psi": [[0, "1*s^2"]]
  })");
  DeformationFile f = deformation_from_file(path);
  CHECK(f.pair.g.dim == 2);
  CHECK(f.pair.g.deg[1] == 1);
  CHECK(f.base.dim() == 5);
  CHECK(check_dg(f.pair).ok);

  int t = -1, st = -1, s2 = -1;
  for (int u = 0; u < f.base.dim(); ++u) {
    if (f.base.mono_str(u) == "t") t = u;
    if (f.base.mono_str(u) == "s*t") st = u;
    if (f.base.mono_str(u) == "s^2") s2 = u;
  }
  REQUIRE(t >= 0);
  REQUIRE(st >= 0);
  REQUIRE(s2 >= 0);
  CHECK(f.phi.at(1, t) == Rat(1));
  CHECK(f.phi.at(1, st) == Rat(-2, 3));
  CHECK(f.psi.at(0, s2) == Rat(1));

  DeformationDatum d{f.pair, f.base, f.phi, f.psi};
  CHECK(mc_defect(d).is_zero());

  SUBCASE("rejects unknown monomial variables") {
    std::string badpath = write_temp("bad_var.json", R"({
      "format": 1,
      "base": {"vars": ["t"], "max_degree": 2},
      "dg_pair": {
        "g": {"dim": 1, "deg": [1], "brackets": [], "del": []},
        "h": {"dim": 1, "deg": [1], "brackets": [], "del": []},
        "i": [[1]]
      },
      "phi": [[0, "1*u"]],
      "psi": []
    })");
    CHECK_THROWS_WITH_AS(deformation_from_file(badpath),
                         doctest::Contains("unknown variable"),
                         std::invalid_argument);
  }
  SUBCASE("rejects coefficient entries without a monomial") {
    std::string badpath = write_temp("bad_entry.json", R"({
      "format": 1,
      "base": {"vars": ["t"], "max_degree": 2},
      "dg_pair": {
        "g": {"dim": 1, "deg": [1], "brackets": [], "del": []},
        "h": {"dim": 1, "deg": [1], "brackets": [], "del": []},
        "i": [[1]]
      },
      "phi": [[0, "1"]],
      "psi": []
    })");
    CHECK_THROWS_AS(deformation_from_file(badpath), std::invalid_argument);
  }
  SUBCASE("rejects monomials above the truncation order") {
    std::string badpath = write_temp("bad_order.json", R"({
      "format": 1,
      "base": {"vars": ["t"], "max_degree": 2},
      "dg_pair": {
        "g": {"dim": 1, "deg": [1], "brackets": [], "del": []},
        "h": {"dim": 1, "deg": [1], "brackets": [], "del": []},
        "i": [[1]]
      },
      "phi": [[0, "1*t^3"]],
      "psi": []
    })");
    CHECK_THROWS_WITH_AS(deformation_from_file(badpath),
                         doctest::Contains("not in the base ring"),
                         std::invalid_argument);
  }
}

TEST_CASE("run reports") {
  RunReport rep;
  rep.command = "demo --flag";
  rep.add("zeta", true);
  rep.add("alpha", false, "(z, t^2) = 1/2");
  rep.skip("midway", "not applicable here");
  rep.extra["order"] = 4;

  CHECK_FALSE(rep.all_pass());

  Json j = report_json(rep);
  CHECK(j["format"] == 1);
  CHECK(j["command"] == "demo --flag");
  CHECK(j["checks"].size() == 3);
  CHECK(j["checks"][0]["name"] == "alpha");
  CHECK(j["checks"][1]["name"] == "midway");
  CHECK(j["checks"][2]["name"] == "zeta");
  CHECK(j["checks"][0]["witness"] == "(z, t^2) = 1/2");
  CHECK_FALSE(j["checks"][2].contains("witness"));
  CHECK(j["summary"]["pass"] == 1);
  CHECK(j["summary"]["fail"] == 1);
  CHECK(j["summary"]["skipped"] == 1);
  CHECK(j["summary"]["ok"] == false);
  CHECK(j["data"]["order"] == 4);
  CHECK_FALSE(j.contains("seed"));
  CHECK_FALSE(j.contains("seconds"));

  CHECK(report_json(rep).dump(2) == j.dump(2));

  std::string plain = report_plain(rep);
  CHECK(plain.find("command: demo --flag") != std::string::npos);
  CHECK(plain.find("check alpha: fail  [(z, t^2) = 1/2]") != std::string::npos);
  CHECK(plain.find("check midway: skipped") != std::string::npos);
  CHECK(plain.find("summary: 1 pass, 1 fail, 1 skipped") != std::string::npos);

  RunReport clean;
  clean.command = "demo";
  clean.add("only", true);
  clean.skip("other", "because");
  CHECK(clean.all_pass());

  ArtinAlgebra a = artin({"t"}, 2);
  QMatrix m(2, a.dim());
  m.add_entry(1, 1, Rat(1, 2));
  CHECK(first_entry_witness(m, {"v", "w"}, a) == "(w, t^2) = 1/2");
  CHECK(first_entry_witness(QMatrix(2, a.dim()), {"v", "w"}, a) == "");
}
