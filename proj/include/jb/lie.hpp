#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "jb/artin.hpp"
#include "jb/linalg.hpp"

namespace jb {

// Finite-dimensional Lie algebra over Q given by structure constants.
// Brackets are stored for i < j only; [e_j, e_i] is derived by antisymmetry
// and [e_i, e_i] = 0.
struct LieAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Rat>>> brk;

  static LieAlgebra abelian(int dim);

  void set_bracket(int i, int j, std::vector<std::pair<int, Rat>> terms);
  Vec bracket_basis(int i, int j) const;
  Vec bracket(const Vec& x, const Vec& y) const;
  // Matrix of ad(x) acting on column vectors.
  QMatrix ad(const Vec& x) const;
  std::string label(int i) const;
};

// Representation of a Lie algebra g on a vector space: act[k] is the matrix
// of the pairing <e_k, -> for the k-th basis vector of g.
struct LieModule {
  int dim = 0;
  int alg_dim = 0;
  std::vector<QMatrix> act;

  Vec act_basis(int k, const Vec& v) const;
  Vec act_vec(const Vec& a, const Vec& v) const;
};

// Enveloping hull: a Lie algebra receiving both h and g, with the module
// structure realized by the hull bracket.
struct Hull {
  LieAlgebra alg;
  QMatrix embed_h;  // dim(hull) x dim(h)
  QMatrix embed_g;  // dim(hull) x dim(g)
};

// Lie atom (g, h, i): g acts on h and i : g -> h satisfies
// i([a,b]) = <a, i(b)> = -<b, i(a)>.
struct LieAtom {
  LieAlgebra g;
  LieModule h;
  QMatrix i_map;  // dim(h) x dim(g)
  std::optional<Hull> hull;
  bool is_pair = false;
};

// Lie pair: h is itself a Lie algebra, i a Lie homomorphism, g acting
// through ad composed with i. The hull is h itself.
LieAtom pair_atom(const LieAlgebra& g, const LieAlgebra& h, const QMatrix& i);

// Pair given by a bracket-closed subspace: g = span of the given columns
// inside h, with the inclusion map. Throws if the span is not closed.
LieAtom subalgebra_pair(const LieAlgebra& h, const QMatrix& g_cols);
LieAtom subalgebra_pair(const LieAlgebra& h, const std::vector<int>& g_idx);

struct StructureReport {
  bool ok = true;
  std::vector<std::string> failures;
};

StructureReport check_structures(const LieAlgebra& g);
StructureReport check_structures(const LieModule& mod, const LieAlgebra& g);
StructureReport check_structures(const LieAtom& atom);

// a_@b^m = (-ad b)^m (a), i.e. a bracketed with b on the right m times.
Vec ad_pow(const LieAlgebra& g, const Vec& a, const Vec& b, int m);

// Adjoint filtration h^[m] = h + sum_{k <= m} g_@h^k inside the hull.
struct Filtration {
  // spans[k] = canonical column basis of h^[k], k = 0..m_max.
  std::vector<QMatrix> spans;
  bool increasing = true;
  bool module_closed = true;   // <g, h^[k]> inside h^[k]
  bool pairing_closed = true;  // [h^[k1], h^[k2]] inside h^[k1+k2]
  int stable_from = -1;        // first k with h^[k] = h^[k+1] = ...
  std::vector<std::string> failures;
  bool ok() const { return increasing && module_closed && pairing_closed; }
};

Filtration adjoint_filtration(const LieAtom& atom, int m_max);

// gl(n) with matrix-unit basis E_{ab} at index a*n+b.
LieAlgebra gl(int n);
int gl_unit(int n, int a, int b);

enum class GlVariant { Sub, Quot, Vee };

// Atom of a linear map j : E1 -> E2 (given as an e2 x e1 matrix over Q).
// g is the intertwiner algebra {(a1, a2) : j a1 = a2 j} inside
// gl(E1) + gl(E2); the variant selects which factor(s) g maps to.
LieAtom gl_atom(const QMatrix& j, GlVariant variant);
// Inclusion of a coordinate subspace of dimension s into Q^a.
QMatrix coordinate_inclusion(int s, int a);

// Scalar extension by the maximal ideal of an Artin algebra:
// [x (X) u, y (X) v] = [x, y] (X) uv. Basis index = lie * dim(m) + mono.
LieAlgebra tensor_artin(const LieAlgebra& g, const ArtinAlgebra& a);

// Atom tensored with m, together with the Lie closure of h (X) m inside
// hull (X) m (columns of closure, in hull (X) m coordinates).
struct TensorAtom {
  LieAtom atom;
  QMatrix closure;
};
TensorAtom tensor_artin(const LieAtom& atom, const ArtinAlgebra& a);

// Structure constants in the basis given by the columns of new_basis_cols
// (square, invertible).
LieAlgebra change_basis(const LieAlgebra& g, const QMatrix& new_basis_cols);

// Fixtures.
LieAlgebra heisenberg();
LieAlgebra filiform4();
LieAlgebra sl2();
LieAtom heisenberg_pair();
// Subspace data g = span{x}, h = span{x, y} inside the Heisenberg hull. The
// action leaves h ([x, y] = z), so this is filtration/closure input, not a
// consistent atom; check_structures rejects it.
LieAtom heisenberg_atom();
// Consistent non-pair atom: hull u, v, w, p with [u,v] = w, [v,w] = -p,
// g = span{u}, h = span{u, v, w}. The chain u_@v_@v = p leaves h, so the
// filtration grows at level 2.
LieAtom ladder_atom();

// Seeded generator of nilpotent Lie pairs (dim <= 4) with scrambled bases;
// g is either all of h or a bracket-closed subalgebra.
LieAtom random_nilpotent_pair(std::mt19937_64& rng);

}  // namespace jb
