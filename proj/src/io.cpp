#include "jb/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jb {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw std::invalid_argument(where + ": " + what);
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path, e.what());
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

int int_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

Rat rat_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) bad(where, "expected a rational as \"p/q\" or integer");
  try {
    return rat_parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    bad(where, e.what());
  }
}

std::vector<std::pair<int, Rat>> terms_of(const Json& j, int dim,
                                          const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of [index, coeff] terms");
  std::vector<std::pair<int, Rat>> out;
  for (const Json& t : j) {
    if (!t.is_array() || t.size() != 2) bad(where, "term must be [index, coeff]");
    int k = int_of(t[0], where);
    if (k < 0 || k >= dim) bad(where, "term index out of range");
    out.push_back({k, rat_of(t[1], where)});
  }
  return out;
}

std::vector<std::string> labels_of(const Json& j, int dim,
                                   const std::string& where) {
  std::vector<std::string> out;
  if (!j.contains("labels")) return out;
  const Json& l = j["labels"];
  if (!l.is_array() || static_cast<int>(l.size()) != dim) {
    bad(where, "labels must list one name per basis vector");
  }
  for (const Json& s : l) {
    if (!s.is_string()) bad(where, "labels must be strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

LieModule module_from_json(const Json& j, int alg_dim,
                           const std::string& where) {
  LieModule mod;
  mod.dim = int_of(field(j, "dim", where), where);
  if (mod.dim < 0) bad(where, "negative dimension");
  mod.alg_dim = alg_dim;
  mod.act.assign(alg_dim, QMatrix(mod.dim, mod.dim));
  if (!j.contains("action")) return mod;
  const Json& act = j["action"];
  if (!act.is_array()) bad(where, "action must be an array");
  for (const Json& e : act) {
    if (!e.is_array() || e.size() != 3) {
      bad(where, "action entry must be [algebra index, module index, terms]");
    }
    int i = int_of(e[0], where), v = int_of(e[1], where);
    if (i < 0 || i >= alg_dim) bad(where, "action algebra index out of range");
    if (v < 0 || v >= mod.dim) bad(where, "action module index out of range");
    for (const auto& [k, c] : terms_of(e[2], mod.dim, where)) {
      mod.act[i].add_entry(k, v, c);
    }
  }
  return mod;
}

int mono_index(const std::string& s, const ArtinAlgebra& base,
               const std::string& where) {
  std::vector<int> expo(base.vars.size(), 0);
  std::stringstream ss(s);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    std::string var = factor;
    int e = 1;
    auto caret = factor.find('^');
    if (caret != std::string::npos) {
      var = factor.substr(0, caret);
      try {
        e = std::stoi(factor.substr(caret + 1));
      } catch (const std::exception&) {
        bad(where, "bad exponent in monomial '" + s + "'");
      }
    }
    auto it = std::find(base.vars.begin(), base.vars.end(), var);
    if (it == base.vars.end()) {
      bad(where, "unknown variable '" + var + "' in monomial '" + s + "'");
    }
    expo[it - base.vars.begin()] += e;
  }
  auto it = base.index.find(expo);
  if (it == base.index.end()) {
    bad(where, "monomial '" + s + "' is not in the base ring");
  }
  return it->second;
}

QMatrix melt_from_json(const Json& j, int dim, const ArtinAlgebra& base,
                       const std::string& where) {
  QMatrix out(dim, base.dim());
  if (!j.is_array()) bad(where, "expected an array of [index, \"p/q*mono\"]");
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_string()) {
      bad(where, "entry must be [basis index, \"p/q*monomial\"]");
    }
    int r = int_of(e[0], where);
    if (r < 0 || r >= dim) bad(where, "basis index out of range");
    std::string s = e[1].get<std::string>();
    auto star = s.find('*');
    if (star == std::string::npos) {
      bad(where, "entry '" + s + "' must be \"p/q*monomial\"");
    }
    Rat c;
    try {
      c = rat_parse(s.substr(0, star));
    } catch (const std::invalid_argument& e2) {
      bad(where, e2.what());
    }
    out.add_entry(r, mono_index(s.substr(star + 1), base, where), c);
  }
  return out;
}

}  // namespace

LieAlgebra lie_from_json(const Json& j, const std::string& where) {
  LieAlgebra g;
  g.dim = int_of(field(j, "dim", where), where);
  if (g.dim < 0) bad(where, "negative dimension");
  g.labels = labels_of(j, g.dim, where);
  if (j.contains("brackets")) {
    const Json& br = j["brackets"];
    if (!br.is_array()) bad(where, "brackets must be an array");
    for (const Json& e : br) {
      if (!e.is_array() || e.size() != 3) {
        bad(where, "bracket entry must be [i, j, terms]");
      }
      int i = int_of(e[0], where), jj = int_of(e[1], where);
      try {
        g.set_bracket(i, jj, terms_of(e[2], g.dim, where));
      } catch (const std::invalid_argument& e2) {
        bad(where, e2.what());
      }
    }
  }
  return g;
}

QMatrix dense_from_json(const Json& j, int rows, int cols,
                        const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    bad(where, "expected a dense matrix with " + std::to_string(rows) +
                   " rows");
  }
  QMatrix out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      bad(where, "row " + std::to_string(r) + " must have " +
                     std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      Rat v = rat_of(row[c], where);
      if (v != 0) out.add_entry(r, c, v);
    }
  }
  return out;
}

ArtinAlgebra artin_from_json(const Json& j, const std::string& where) {
  const Json& jv = field(j, "vars", where);
  if (!jv.is_array() || jv.empty()) bad(where, "base needs a variable list");
  std::vector<std::string> vars;
  for (const Json& v : jv) {
    if (!v.is_string()) bad(where, "variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  int deg = int_of(field(j, "max_degree", where), where);
  if (deg < 1) bad(where, "max_degree must be at least 1");
  std::vector<std::vector<int>> zeros;
  if (j.contains("zero_monomials")) {
    for (const Json& z : j["zero_monomials"]) {
      if (!z.is_array() || z.size() != vars.size()) {
        bad(where, "zero monomial must list one exponent per variable");
      }
      std::vector<int> e;
      for (const Json& x : z) e.push_back(int_of(x, where));
      zeros.push_back(e);
    }
  }
  return artin(vars, deg, zeros);
}

DgLie dg_from_json(const Json& j, const std::string& where) {
  DgLie l;
  l.dim = int_of(field(j, "dim", where), where);
  if (l.dim < 0) bad(where, "negative dimension");
  const Json& jd = field(j, "deg", where);
  if (!jd.is_array() || static_cast<int>(jd.size()) != l.dim) {
    bad(where, "deg must list one degree per basis vector");
  }
  for (const Json& d : jd) l.deg.push_back(int_of(d, where));
  l.labels = labels_of(j, l.dim, where);
  if (j.contains("brackets")) {
    for (const Json& e : j["brackets"]) {
      if (!e.is_array() || e.size() != 3) {
        bad(where, "bracket entry must be [i, j, terms]");
      }
      int i = int_of(e[0], where), jj = int_of(e[1], where);
      if (i < 0 || jj < i || jj >= l.dim) bad(where, "bad bracket pair");
      try {
        l.set_bracket(i, jj, terms_of(e[2], l.dim, where));
      } catch (const std::invalid_argument& e2) {
        bad(where, e2.what());
      }
    }
  }
  l.del = QMatrix(l.dim, l.dim);
  if (j.contains("del")) {
    for (const Json& e : j["del"]) {
      if (!e.is_array() || e.size() != 3) {
        bad(where, "del entry must be [row, col, value]");
      }
      int r = int_of(e[0], where), c = int_of(e[1], where);
      if (r < 0 || r >= l.dim || c < 0 || c >= l.dim) {
        bad(where, "del index out of range");
      }
      l.del.add_entry(r, c, rat_of(e[2], where));
    }
  }
  return l;
}

LieAtom atom_from_file(const std::string& path) {
  Json j = load_json(path);
  if (!j.contains("format") || j["format"] != 1) {
    bad(path, "unsupported format (expected format: 1)");
  }
  LieAtom atom;
  atom.g = lie_from_json(field(j, "lie_algebra", path), path + ": lie_algebra");
  atom.h = module_from_json(field(j, "module", path), atom.g.dim,
                            path + ": module");
  atom.i_map = dense_from_json(field(j, "atom_i", path), atom.h.dim, atom.g.dim,
                               path + ": atom_i");
  if (j.contains("hull")) {
    const Json& jh = j["hull"];
    Hull hull;
    hull.alg = lie_from_json(field(jh, "lie_algebra", path),
                             path + ": hull.lie_algebra");
    hull.embed_h = dense_from_json(field(jh, "embed_h", path), hull.alg.dim,
                                   atom.h.dim, path + ": hull.embed_h");
    hull.embed_g = dense_from_json(field(jh, "embed_g", path), hull.alg.dim,
                                   atom.g.dim, path + ": hull.embed_g");
    atom.hull = hull;
  }
  return atom;
}

DeformationFile deformation_from_file(const std::string& path) {
  Json j = load_json(path);
  if (!j.contains("format") || j["format"] != 1) {
    bad(path, "unsupported format (expected format: 1)");
  }
  DeformationFile out;
  out.base = artin_from_json(field(j, "base", path), path + ": base");
  const Json& jp = field(j, "dg_pair", path);
  out.pair.g = dg_from_json(field(jp, "g", path), path + ": dg_pair.g");
  out.pair.h = dg_from_json(field(jp, "h", path), path + ": dg_pair.h");
  out.pair.i_map = dense_from_json(field(jp, "i", path), out.pair.h.dim,
                                   out.pair.g.dim, path + ": dg_pair.i");
  out.phi = melt_from_json(field(j, "phi", path), out.pair.g.dim, out.base,
                           path + ": phi");
  out.psi = melt_from_json(field(j, "psi", path), out.pair.h.dim, out.base,
                           path + ": psi");
  return out;
}

void RunReport::add(const std::string& name, bool ok,
                    const std::string& witness, Json detail) {
  entries.push_back({name, ok ? "pass" : "fail", witness, std::move(detail)});
}

void RunReport::skip(const std::string& name, const std::string& why) {
  entries.push_back({name, "skipped", why, Json::object()});
}

bool RunReport::all_pass() const {
  for (const CheckEntry& e : entries) {
    if (e.status == "fail") return false;
  }
  return true;
}

namespace {

std::vector<const CheckEntry*> sorted_entries(const RunReport& r) {
  std::vector<const CheckEntry*> out;
  for (const CheckEntry& e : r.entries) out.push_back(&e);
  std::stable_sort(out.begin(), out.end(),
                   [](const CheckEntry* a, const CheckEntry* b) {
                     return a->name < b->name;
                   });
  return out;
}

}  // namespace

Json report_json(const RunReport& r) {
  Json out;
  out["format"] = 1;
  out["command"] = r.command;
  if (r.seed) out["seed"] = *r.seed;
  Json checks = Json::array();
  int npass = 0, nfail = 0, nskip = 0;
  for (const CheckEntry* e : sorted_entries(r)) {
    Json je;
    je["name"] = e->name;
    je["status"] = e->status;
    if (!e->witness.empty()) je["witness"] = e->witness;
    if (!e->detail.empty()) je["detail"] = e->detail;
    checks.push_back(je);
    if (e->status == "pass") ++npass;
    if (e->status == "fail") ++nfail;
    if (e->status == "skipped") ++nskip;
  }
  out["checks"] = checks;
  out["summary"] = {{"pass", npass}, {"fail", nfail}, {"skipped", nskip},
                    {"ok", nfail == 0}};
  if (!r.extra.empty()) out["data"] = r.extra;
  if (r.seconds) out["seconds"] = *r.seconds;
  return out;
}

std::string report_plain(const RunReport& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  if (r.seed) out << "seed: " << *r.seed << "\n";
  int npass = 0, nfail = 0, nskip = 0;
  for (const CheckEntry* e : sorted_entries(r)) {
    out << "check " << e->name << ": " << e->status;
    if (!e->witness.empty()) out << "  [" << e->witness << "]";
    out << "\n";
    if (e->detail.contains("notes")) {
      for (const Json& n : e->detail["notes"]) {
        out << "  note: " << n.get<std::string>() << "\n";
      }
    }
    if (e->status == "pass") ++npass;
    if (e->status == "fail") ++nfail;
    if (e->status == "skipped") ++nskip;
  }
  out << "summary: " << npass << " pass, " << nfail << " fail, " << nskip
      << " skipped\n";
  if (!r.extra.empty()) out << "data: " << r.extra.dump() << "\n";
  if (r.seconds) out << "seconds: " << *r.seconds << "\n";
  return out.str();
}

std::string first_entry_witness(const QMatrix& m,
                                const std::vector<std::string>& row_labels,
                                const ArtinAlgebra& base) {
  for (int r = 0; r < m.rows; ++r) {
    for (const auto& [c, v] : m.data[r]) {
      if (v == 0) continue;
      std::string label = r < static_cast<int>(row_labels.size())
                              ? row_labels[r]
                              : "e" + std::to_string(r);
      return "(" + label + ", " + base.mono_str(c) + ") = " + rat_str(v);
    }
  }
  return "";
}

}  // namespace jb
