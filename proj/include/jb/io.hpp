#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jb/ks.hpp"
#include "jb/lie.hpp"

namespace jb {

using Json = nlohmann::ordered_json;

// Atom file: {format: 1, lie_algebra, module, atom_i, hull?} with the
// structure-constant schema (0-based indices, i < j, rationals as "p/q"
// strings). Throws std::invalid_argument naming the path on malformed
// content.
LieAtom atom_from_file(const std::string& path);

// Deformation-datum file: {format: 1, base, dg_pair: {g, h, i}, phi, psi}
// where phi/psi entries are [basis index, "p/q*monomial"].
struct DeformationFile {
  DgLiePair pair;
  ArtinAlgebra base;
  QMatrix phi;
  QMatrix psi;
};
DeformationFile deformation_from_file(const std::string& path);

// Parsers for embedded objects, exposed for tests; `where` prefixes error
// messages.
LieAlgebra lie_from_json(const Json& j, const std::string& where);
DgLie dg_from_json(const Json& j, const std::string& where);
ArtinAlgebra artin_from_json(const Json& j, const std::string& where);
QMatrix dense_from_json(const Json& j, int rows, int cols,
                        const std::string& where);

// One verification or computation inside a run.
struct CheckEntry {
  std::string name;
  std::string status;  // pass | fail | skipped
  std::string witness;
  Json detail;  // structured payload, empty object when unused
};

struct RunReport {
  std::string command;
  std::vector<CheckEntry> entries;
  std::optional<long> seed;       // echoed for randomized suites
  std::optional<double> seconds;  // filled only when timing is requested
  Json extra;                     // command-level payload

  void add(const std::string& name, bool ok, const std::string& witness = "",
           Json detail = Json::object());
  void skip(const std::string& name, const std::string& why);
  bool all_pass() const;
};

// Entries sorted by name; identical inputs give identical bytes.
Json report_json(const RunReport& r);
std::string report_plain(const RunReport& r);

// "(label, monomial) = value" for the first nonzero entry, or "" when zero.
std::string first_entry_witness(const QMatrix& m,
                                const std::vector<std::string>& row_labels,
                                const ArtinAlgebra& base);

}  // namespace jb
