#pragma once

#include <string>
#include <vector>

#include "jb/lie.hpp"
#include "jb/linalg.hpp"

namespace jb {

// Basis vector of one term of the complex: a strictly increasing wedge tuple
// of g-basis indices and a weakly increasing monomial of adapted hull
// letters.
struct JBTerm {
  std::vector<int> wedge;
  std::vector<int> mono;
  auto operator<=>(const JBTerm&) const = default;
};

// The bracket part of the differential places [w_p, w_q] in front of the
// remaining wedge factors with sign (-1)^(p+q) (0-based slots). The slot-p
// placement with sign (-1)^(p-q-1) fails d^2 = 0 already on two wedge
// factors, so the construction uses the Chevalley-Eilenberg convention and
// reports exist to say so.
inline constexpr const char* kBracketSignConvention = "chevalley_eilenberg";

struct JBComplex {
  LieAtom atom;
  int m = 0;

  // Adapted hull data. Letters are the adapted basis vectors with level
  // <= m; a monomial's level is the sum of its letters' levels and only
  // monomials of level <= m are kept.
  int letters = 0;
  std::vector<int> letter_level;  // per adapted basis vector; m+1 = dropped
  LieAlgebra hull_adapted;
  QMatrix embed_g_adapted;  // hull coordinates of i, adapted basis
  QMatrix adapted_cols;     // adapted basis columns in original hull coords

  std::vector<std::vector<JBTerm>> bases;  // degree -m + k at position k
  std::vector<std::map<JBTerm, int>> index;
  std::vector<QMatrix> d;  // d[k] : degree -m+k -> degree -m+k+1

  // Bernoulli chains whose targets fall outside the level bound; any entry
  // here means the level cut is not d-stable for this atom and order.
  std::vector<std::string> leakage;

  int dim_at(int deg) const;
  const std::vector<JBTerm>& basis_at(int deg) const;
  const QMatrix& d_from(int deg) const;  // deg in [-m, -1]
  int index_of(int deg, const JBTerm& t) const;  // -1 when absent
  std::string term_str(int deg, int idx) const;
  std::vector<int> term_dims() const;  // dims at degrees -m..0
};

// Builds the order-m complex of an atom. The degree part keeps j <= deg + m
// with j >= 1 at degree 0; the differential combines the Bernoulli chain
// rule on monomials (ordered selections of distinct positions, coefficient
// c_t per chain length t, sign (-1)^p over wedge slots) with the
// Chevalley-Eilenberg bracket part. Throws on m < 1 or an atom that fails
// check_structures.
JBComplex build_jb(const LieAtom& atom, int m);

struct D2Report {
  bool ok = true;
  std::vector<std::string> failures;
};

// Composites of consecutive differentials must vanish entrywise and the
// level cut must not leak; failures name the offending source and target
// basis vectors.
D2Report check_d2(const JBComplex& cx);

// K^0 / im d^{-1} with projection and coset-representative section.
struct H0Data {
  int dim = 0;
  QMatrix proj;     // dim x dim K^0
  QMatrix section;  // dim K^0 x dim
};
H0Data h0(const JBComplex& cx);

// Dual ring of H^0 under the reduced unshuffle coproduct, with the unit
// adjoined: dimension n + 1, maximal ideal spanned by the dual basis
// xi_1..xi_n of H^0, and table[a][b] = coordinates of xi_a xi_b.
struct DeformationRing {
  int m = 0;
  int n = 0;       // dual generators; total dimension is n + 1
  int h1_dim = 0;  // dim coker(i) of the two-term complex
  std::vector<std::vector<Vec>> table;

  bool descent_ok = false;  // coproduct of im d^{-1} dies in H0 (x) H0
  bool coassoc_ok = false;
  bool cocomm_ok = false;
  bool assoc_ok = false;
  bool comm_ok = false;
  bool nilpotent_ok = false;  // maximal ideal power m+1 vanishes

  // Restriction to order m-1: eta is the dual-coordinate matrix of the map
  // induced by the inclusion of the order-(m-1) complex.
  int prev_n = 0;
  QMatrix eta;  // prev_n x n
  bool tower_surjective = false;
  bool tower_ring_hom = false;
  bool tower_kernel_ok = false;  // m_R^m inside ker eta

  bool ok() const {
    return descent_ok && coassoc_ok && cocomm_ok && assoc_ok && comm_ok &&
           nilpotent_ok && tower_surjective && tower_ring_hom &&
           tower_kernel_ok;
  }
};
DeformationRing deformation_ring(const JBComplex& cx);

// Dimensions of m_R^r / m_R^{r+1} for r = 1..m (trailing zeros trimmed)
// against the symmetric-power counts binom(h1 + r - 1, r); in the two-term
// scope the counts must agree exactly.
struct GradedReport {
  std::vector<int> graded;
  std::vector<int> sym_expected;  // untrimmed, r = 1..m
  bool bound_ok = false;
};
GradedReport graded_dims(const DeformationRing& ring);

struct AtomMorphism {
  QMatrix g_map;  // dim g_B x dim g_A
  QMatrix h_map;  // dim h_B x dim h_A
};

struct QuasiIsoReport {
  bool ok = true;
  int h0_a = 0;
  int h0_b = 0;
  std::vector<std::string> failures;
};

// For Lie pairs: checks the two-term kernel/cokernel isomorphism
// preconditions, then that the induced map on H^0 of the order-m complexes
// is an isomorphism. Throws std::invalid_argument when an atom is not a
// pair or the morphism does not commute with i, brackets, and actions.
QuasiIsoReport quasi_iso_check(const LieAtom& a, const LieAtom& b,
                               const AtomMorphism& f, int m);

}  // namespace jb
