#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jb/lie.hpp"
#include "jb/rat.hpp"

namespace jb {

// Element of the free associative algebra on letters 'a', 'b', ... with
// words beyond a fixed length treated as zero. Free Lie computations embed
// here: brackets become commutators, and an identity holds freely iff its
// word expansion vanishes.
struct AssocElt {
  std::map<std::string, Rat> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const std::string& w, const Rat& c);
};

AssocElt assoc_add(const AssocElt& x, const AssocElt& y);
AssocElt assoc_sub(const AssocElt& x, const AssocElt& y);
AssocElt assoc_scale(const AssocElt& x, const Rat& c);
AssocElt assoc_mul(const AssocElt& x, const AssocElt& y, int cap);
AssocElt assoc_bracket(const AssocElt& x, const AssocElt& y, int cap);
// x_@y^m with all brackets truncated above the cap.
AssocElt assoc_ad_pow(const AssocElt& x, const AssocElt& y, int m, int cap);

struct HallElt {
  int gen = -1;             // generator index, or -1 for a bracket
  int left = -1, right = -1;
  int degree = 1;
  std::vector<int> multidegree;
  std::string name;
  AssocElt rep;
};

struct FreeNilpotentLie {
  int ngens = 0;
  int cls = 0;
  std::vector<std::string> gen_labels;
  std::vector<HallElt> basis;
  std::vector<int> deg_begin;  // degree d spans [deg_begin[d], deg_begin[d+1])

  int dim() const { return static_cast<int>(basis.size()); }
  int dim_of_degree(int d) const;
  const AssocElt& gen_rep(int i) const { return basis[i].rep; }
  AssocElt bracket(const AssocElt& x, const AssocElt& y) const;

  // Coordinates in the Hall basis; nullopt when the element is not a Lie
  // element of degree <= cls.
  std::optional<std::map<int, Rat>> hall_coords(const AssocElt& x) const;

  // Structure constants in the Hall basis (intended for small dimensions).
  LieAlgebra to_lie_algebra() const;

  // Images of the whole basis under the homomorphism sending generator k to
  // gen_images[k].
  std::vector<Vec> eval_hom(const LieAlgebra& target,
                            const std::vector<Vec>& gen_images) const;
};

FreeNilpotentLie free_nilpotent(const std::vector<std::string>& gens, int cls);

// Number of degree-d Hall elements on q generators (Witt's formula).
long witt_dim(int q, int d);

struct FreeIdentityReport {
  int m = 0;
  bool ok = false;
  long defect_terms = 0;  // words remaining in the defect expansion
  std::vector<std::string> notes;
};

// Defect of the alternated iterated-bracket expansion
//   [a1, a2_@b^m]^alt - sum_i (-1)^i (binom(m-i-1,i) + 2 binom(m-i-1,i-1))
//                       [a1_@b^i, a2_@b^i]_@b^{m-2i}
// in the free algebra on a1, a2, b truncated at class m+2. Requires m >= 1.
FreeIdentityReport verify_lemma01(int m);

// The m = 0 case of the same display: the alternation equals 2[a1,a2] while
// the displayed coefficient sum gives only 1[a1,a2]; both values are
// reported rather than patched.
FreeIdentityReport lemma01_m0_report();

// Defect of
//   sum_{i+j<=m-1} c_i c_{m-i} [a1_@b^j, a2_@b^i]^alt_@b^{m-1-i-j}
//   + c_{m-1} [a1, a2]_@b^{m-1}
// with Bernoulli-type coefficients c, truncated at class m+1. Requires
// m >= 1.
FreeIdentityReport verify_eq124(int m);

}  // namespace jb
