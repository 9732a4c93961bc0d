#pragma once

#include <map>
#include <string>
#include <vector>

#include "jb/rat.hpp"

namespace jb {

// Local ring Q[vars]/(monomial ideal), truncated above a total degree so the
// maximal ideal m is nilpotent. Only the basis of m itself is stored; the
// unit is handled by callers where needed.
struct ArtinAlgebra {
  std::vector<std::string> vars;
  int max_total_degree = 0;
  // Exponent vectors of the monomial basis of m, sorted by (degree, lex).
  std::vector<std::vector<int>> basis;
  std::map<std::vector<int>, int> index;
  // Largest e with m^e != 0.
  int exponent = 0;

  int dim() const { return static_cast<int>(basis.size()); }
  int degree(int i) const;
  std::string mono_str(int i) const;
  // Product of two basis monomials: basis index, or -1 when it dies in the
  // quotient.
  int mono_mul(int i, int j) const;
};

// Monomial quotient: kills everything of total degree above the cap plus all
// multiples of the listed exponent vectors.
ArtinAlgebra artin(const std::vector<std::string>& vars, int max_total_degree,
                   const std::vector<std::vector<int>>& zero_monomials = {});

}  // namespace jb
