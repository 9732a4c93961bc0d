#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jb/artin.hpp"
#include "jb/lie.hpp"
#include "jb/linalg.hpp"

namespace jb {

// Graded Lie algebra with a degree +1 differential. Brackets are stored for
// index pairs i <= j; the swapped value carries the Koszul sign.
struct DgLie {
  int dim = 0;
  std::vector<int> deg;
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> brk;
  QMatrix del;

  void set_bracket(int i, int j, const std::vector<std::pair<int, Rat>>& terms);
  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  std::string label(int i) const;
};

// Lie algebra concentrated in degree 0 with zero differential.
DgLie dg_ungraded(const LieAlgebra& g);

// Endomorphism algebra of a finite complex (V^0 -> V^1 -> ...): elementary
// maps V^a -> V^b in degree b - a, graded commutator bracket, differential
// [delta, -]. delta[i] maps V^i to V^{i+1} and must square to zero.
DgLie dg_end(const std::vector<int>& dims, const std::vector<QMatrix>& delta);

// One odd generator v whose self-bracket is an even top element w.
DgLie dg_self_bracket();

DgLie dg_direct_sum(const DgLie& a, const DgLie& b);

// Pair with h a dg Lie algebra, i a chain map and graded Lie homomorphism,
// g acting on h through ad composed with i.
struct DgLiePair {
  DgLie g;
  DgLie h;
  QMatrix i_map;
};

DgLiePair dg_id_pair(const DgLie& g);

struct DgReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Differential squares to zero and raises degree by one; brackets add
// degrees, vanish on even diagonals, and satisfy the graded Jacobi and
// Leibniz identities.
DgReport check_dg(const DgLie& g);
DgReport check_dg(const DgLiePair& p);

// Elements of L (x) m are matrices with one row per basis vector of L and
// one column per monomial of m.
QMatrix melt_bracket(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x,
                     const QMatrix& y);

struct DeformationDatum {
  DgLiePair pair;
  ArtinAlgebra base;
  QMatrix phi;  // degree 1 rows of g, one column per monomial of m
  QMatrix psi;  // degree 0 rows of h
};

// del phi + 1/2 [phi, phi].
QMatrix mc_defect(const DeformationDatum& d);

// del psi - sum_n c_n ad(-psi)^n(i(phi)) with the Bernoulli coefficients
// c_n; zero iff the pair (phi, psi) is compatible.
QMatrix compat_defect(const DeformationDatum& d);

// Components wedge^r(phi) (x) (-psi)^n on the multiset bases of the powers,
// r + n from 1 to m_order, plus both defects.
struct KsVector {
  int m_order = 0;
  std::vector<std::pair<int, int>> vg_basis;  // (g index, monomial) of degree 1
  std::vector<std::pair<int, int>> vh_basis;  // (h index, monomial) of degree 0
  std::map<std::pair<int, int>, Vec> comp;    // (r, n) -> power coordinates
  QMatrix mc;
  QMatrix compat;
  bool defects_ok = false;
};
KsVector ks_vector(const DeformationDatum& d, int m_order);

// sum_k (-ad s)^k (del s) / (k+1)! for s in degree 0; the result is
// Maurer-Cartan.
QMatrix deligne_phi(const DgLie& g, const ArtinAlgebra& base, const QMatrix& s);

// phi' with del + phi' = exp(-ad mu)(del + phi): the conjugated field
// exp(-ad mu)(phi) plus the gauge tail sum_k (-ad mu)^k (del mu) / (k+1)!.
QMatrix gauge_transform(const DgLie& g, const ArtinAlgebra& base,
                        const QMatrix& phi, const QMatrix& mu);

// Truncated enveloping algebra element: rational combination of PBW words
// over the basis of a dg Lie algebra, each word tensored with one monomial
// of m, plus a scalar constant term. Normal form keeps words weakly
// increasing, with equal adjacent letters only in even degree.
struct EnvElement {
  int word_cap = 0;
  Rat constant;
  std::map<std::pair<std::vector<int>, int>, Rat> terms;

  bool is_zero() const { return constant == 0 && terms.empty(); }
};
bool env_equal(const EnvElement& u, const EnvElement& v);

EnvElement env_from(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x);
EnvElement env_scale(const EnvElement& u, const Rat& c);
EnvElement env_add(const EnvElement& u, const EnvElement& v);
EnvElement env_mul(const DgLie& l, const ArtinAlgebra& a, const EnvElement& u,
                   const EnvElement& v);
// Derivation extension of del with sign (-1)^(degree sum left of the slot).
EnvElement env_del(const DgLie& l, const ArtinAlgebra& a, const EnvElement& u);

EnvElement env_exp(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x);
// Inverse of env_exp on group-like elements. Throws std::invalid_argument
// when the constant term is not 1 and std::domain_error when the normal
// form keeps a word of length >= 2.
QMatrix env_log(const DgLie& l, const ArtinAlgebra& a, const EnvElement& u);
QMatrix bch(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x,
            const QMatrix& y);

// The two intertwining identities for a compatible Maurer-Cartan datum,
// checked in the enveloping algebra of h (x) m. Throws std::invalid_argument
// when the datum fails the Maurer-Cartan or compatibility equation.
struct IntertwineReport {
  bool ok = true;
  std::string convention;
  std::vector<std::string> failures;
};
IntertwineReport verify_exp_intertwine(const DeformationDatum& d);

// bch of sampled elements of g (x) m against elements of the closure of
// h (x) m stays inside the closure.
struct Lemma113Report {
  bool ok = true;
  int samples = 0;
  std::vector<std::string> failures;
};
Lemma113Report lemma113_check(const LieAtom& atom, const ArtinAlgebra& a,
                              int samples, std::mt19937_64& rng);

}  // namespace jb
