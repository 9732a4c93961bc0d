#include "jb/lie.hpp"

#include <algorithm>
#include <stdexcept>

namespace jb {

namespace {

bool is_zero_vec(const Vec& v) {
  for (const Rat& c : v) {
    if (c != 0) return false;
  }
  return true;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_add3(const Vec& a, const Vec& b, const Vec& c) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i] + c[i];
  return r;
}

}  // namespace

LieAlgebra LieAlgebra::abelian(int dim) {
  LieAlgebra g;
  g.dim = dim;
  return g;
}

void LieAlgebra::set_bracket(int i, int j, std::vector<std::pair<int, Rat>> terms) {
  if (i < 0 || j <= i || j >= dim) {
    throw std::invalid_argument("set_bracket: bad basis pair");
  }
  std::map<int, Rat> merged;
  for (auto& [k, c] : terms) {
    if (k < 0 || k >= dim) throw std::invalid_argument("set_bracket: bad target");
    merged[k] += c;
  }
  std::vector<std::pair<int, Rat>> clean;
  for (auto& [k, c] : merged) {
    if (c != 0) clean.emplace_back(k, c);
  }
  if (clean.empty()) {
    brk.erase({i, j});
  } else {
    brk[{i, j}] = std::move(clean);
  }
}

Vec LieAlgebra::bracket_basis(int i, int j) const {
  Vec v(dim, Rat(0));
  if (i == j) return v;
  Rat sign(1);
  int a = i, b = j;
  if (a > b) {
    std::swap(a, b);
    sign = -1;
  }
  auto it = brk.find({a, b});
  if (it != brk.end()) {
    for (const auto& [k, c] : it->second) v[k] = sign * c;
  }
  return v;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec v(dim, Rat(0));
  for (const auto& [ij, terms] : brk) {
    Rat coeff = x[ij.first] * y[ij.second] - x[ij.second] * y[ij.first];
    if (coeff == 0) continue;
    for (const auto& [k, c] : terms) v[k] += coeff * c;
  }
  return v;
}

QMatrix LieAlgebra::ad(const Vec& x) const {
  QMatrix m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec ej(dim, Rat(0));
    ej[j] = 1;
    set_col(m, j, bracket(x, ej));
  }
  return m;
}

std::string LieAlgebra::label(int i) const {
  if (i >= 0 && i < static_cast<int>(labels.size())) return labels[i];
  return "e" + std::to_string(i);
}

Vec LieModule::act_basis(int k, const Vec& v) const { return matvec(act[k], v); }

Vec LieModule::act_vec(const Vec& a, const Vec& v) const {
  Vec r(dim, Rat(0));
  for (int k = 0; k < alg_dim; ++k) {
    if (a[k] == 0) continue;
    Vec w = act_basis(k, v);
    for (int i = 0; i < dim; ++i) r[i] += a[k] * w[i];
  }
  return r;
}

StructureReport check_structures(const LieAlgebra& g) {
  StructureReport rep;
  for (const auto& [ij, terms] : g.brk) {
    if (ij.first < 0 || ij.second <= ij.first || ij.second >= g.dim) {
      rep.failures.push_back("bracket key out of range (" +
                             std::to_string(ij.first) + ", " +
                             std::to_string(ij.second) + ")");
    }
    for (const auto& [k, c] : terms) {
      (void)c;
      if (k < 0 || k >= g.dim) {
        rep.failures.push_back("bracket target out of range at (" +
                               std::to_string(ij.first) + ", " +
                               std::to_string(ij.second) + ")");
      }
    }
  }
  for (int i = 0; i < g.dim; ++i) {
    Vec ei(g.dim, Rat(0));
    ei[i] = 1;
    for (int j = i + 1; j < g.dim; ++j) {
      Vec ej(g.dim, Rat(0));
      ej[j] = 1;
      for (int k = j + 1; k < g.dim; ++k) {
        Vec ek(g.dim, Rat(0));
        ek[k] = 1;
        Vec s = vec_add3(g.bracket(g.bracket_basis(i, j), ek),
                         g.bracket(g.bracket_basis(j, k), ei),
                         g.bracket(g.bracket_basis(k, i), ej));
        if (!is_zero_vec(s)) {
          rep.failures.push_back("jacobi defect at (" + g.label(i) + ", " +
                                 g.label(j) + ", " + g.label(k) + ")");
        }
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

StructureReport check_structures(const LieModule& mod, const LieAlgebra& g) {
  StructureReport rep;
  if (mod.alg_dim != g.dim || static_cast<int>(mod.act.size()) != g.dim) {
    rep.failures.push_back("action matrix count does not match algebra dimension");
    rep.ok = false;
    return rep;
  }
  for (const auto& m : mod.act) {
    if (m.rows != mod.dim || m.cols != mod.dim) {
      rep.failures.push_back("action matrix has wrong shape");
      rep.ok = false;
      return rep;
    }
  }
  for (int i = 0; i < g.dim; ++i) {
    for (int j = i + 1; j < g.dim; ++j) {
      // act([e_i, e_j]) must equal the commutator of the action matrices.
      Vec b = g.bracket_basis(i, j);
      QMatrix lhs(mod.dim, mod.dim);
      for (int k = 0; k < g.dim; ++k) {
        if (b[k] != 0) lhs = add(lhs, scale(mod.act[k], b[k]));
      }
      QMatrix rhs = sub(mul(mod.act[i], mod.act[j]), mul(mod.act[j], mod.act[i]));
      if (!(lhs == rhs)) {
        rep.failures.push_back("action axiom fails at algebra pair (" +
                               g.label(i) + ", " + g.label(j) + ")");
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

StructureReport check_structures(const LieAtom& atom) {
  StructureReport rep = check_structures(atom.g);
  StructureReport mod = check_structures(atom.h, atom.g);
  rep.failures.insert(rep.failures.end(), mod.failures.begin(), mod.failures.end());
  if (atom.i_map.rows != atom.h.dim || atom.i_map.cols != atom.g.dim) {
    rep.failures.push_back("i has wrong shape");
    rep.ok = false;
    return rep;
  }

  // i([a,b]) = <a, i(b)> = -<b, i(a)> on basis pairs.
  for (int p = 0; p < atom.g.dim; ++p) {
    for (int q = p + 1; q < atom.g.dim; ++q) {
      Vec lhs = matvec(atom.i_map, atom.g.bracket_basis(p, q));
      Vec mid = atom.h.act_basis(p, get_col(atom.i_map, q));
      Vec neg = atom.h.act_basis(q, get_col(atom.i_map, p));
      if (!is_zero_vec(vec_sub(lhs, mid))) {
        rep.failures.push_back("equivariance i([a,b]) = <a, i(b)> fails at (" +
                               atom.g.label(p) + ", " + atom.g.label(q) + ")");
      }
      for (size_t t = 0; t < neg.size(); ++t) neg[t] = -neg[t];
      if (!is_zero_vec(vec_sub(lhs, neg))) {
        rep.failures.push_back("equivariance i([a,b]) = -<b, i(a)> fails at (" +
                               atom.g.label(p) + ", " + atom.g.label(q) + ")");
      }
    }
  }

  if (atom.hull) {
    const Hull& hl = *atom.hull;
    StructureReport hs = check_structures(hl.alg);
    for (const auto& f : hs.failures) rep.failures.push_back("hull: " + f);
    if (hl.embed_h.rows != hl.alg.dim || hl.embed_h.cols != atom.h.dim ||
        hl.embed_g.rows != hl.alg.dim || hl.embed_g.cols != atom.g.dim) {
      rep.failures.push_back("hull: embedding shape mismatch");
      rep.ok = false;
      return rep;
    }
    if (!(mul(hl.embed_h, atom.i_map) == hl.embed_g)) {
      rep.failures.push_back("hull: embed_g differs from embed_h composed with i");
    }
    for (int p = 0; p < atom.g.dim; ++p) {
      Vec gp = get_col(hl.embed_g, p);
      for (int q = p + 1; q < atom.g.dim; ++q) {
        Vec lhs = matvec(hl.embed_g, atom.g.bracket_basis(p, q));
        Vec rhs = hl.alg.bracket(gp, get_col(hl.embed_g, q));
        if (!is_zero_vec(vec_sub(lhs, rhs))) {
          rep.failures.push_back("hull: embed_g not a homomorphism at (" +
                                 atom.g.label(p) + ", " + atom.g.label(q) + ")");
        }
      }
      // <a, v> realized by the hull bracket for every module basis vector.
      for (int v = 0; v < atom.h.dim; ++v) {
        Vec ev(atom.h.dim, Rat(0));
        ev[v] = 1;
        Vec lhs = matvec(hl.embed_h, atom.h.act_basis(p, ev));
        Vec rhs = hl.alg.bracket(gp, get_col(hl.embed_h, v));
        if (!is_zero_vec(vec_sub(lhs, rhs))) {
          rep.failures.push_back("hull: action differs from hull bracket at (" +
                                 atom.g.label(p) + ", module " +
                                 std::to_string(v) + ")");
        }
      }
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

Vec ad_pow(const LieAlgebra& g, const Vec& a, const Vec& b, int m) {
  Vec x = a;
  for (int t = 0; t < m; ++t) x = g.bracket(x, b);
  return x;
}

Filtration adjoint_filtration(const LieAtom& atom, int m_max) {
  if (!atom.hull) throw std::invalid_argument("adjoint_filtration: missing hull");
  const Hull& hl = *atom.hull;
  const LieAlgebra& hp = hl.alg;
  Filtration fil;

  fil.spans.push_back(span_union(hl.embed_h, hl.embed_g));

  // g_@h^k is spanned by the powers a_@b^k over all b in h; by polarization
  // this is the span of the symmetrized chains
  //   S(a; B) = sum over arrangements of the multiset B of a_@b_1_@..._@b_k,
  // which satisfy S(a; B) = sum_{b in B} [S(a; B minus b), b].
  const int nh = hl.embed_h.cols;
  std::vector<std::map<std::vector<int>, Vec>> sym(hl.embed_g.cols);
  for (int a = 0; a < hl.embed_g.cols; ++a) {
    sym[a][{}] = get_col(hl.embed_g, a);
  }
  for (int k = 1; k <= m_max; ++k) {
    std::vector<Vec> level;
    for (int a = 0; a < hl.embed_g.cols; ++a) {
      std::map<std::vector<int>, Vec> next;
      for (const auto& [mset, chain] : sym[a]) {
        for (int b = (mset.empty() ? 0 : mset.back()); b < nh; ++b) {
          std::vector<int> grown = mset;
          grown.push_back(b);
          auto it = next.find(grown);
          if (it == next.end()) {
            // Assemble from scratch: sum over which copy is bracketed last.
            Vec s(hp.dim, Rat(0));
            std::vector<int> seen;
            for (size_t p = 0; p < grown.size(); ++p) {
              int v = grown[p];
              if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
              seen.push_back(v);
              std::vector<int> rest = grown;
              rest.erase(rest.begin() + p);
              Vec part = hp.bracket(sym[a][rest], get_col(hl.embed_h, v));
              for (int r = 0; r < hp.dim; ++r) s[r] += part[r];
            }
            next[grown] = s;
            if (!is_zero_vec(s)) level.push_back(s);
          }
        }
      }
      sym[a] = std::move(next);
    }
    fil.spans.push_back(
        span_union(fil.spans.back(), from_cols(hp.dim, level)));
  }

  for (int k = 0; k < m_max; ++k) {
    if (!span_contains(fil.spans[k + 1], fil.spans[k])) {
      fil.increasing = false;
      fil.failures.push_back("chain not increasing at level " + std::to_string(k));
    }
  }
  for (int k = 0; k <= m_max; ++k) {
    const QMatrix& sp = fil.spans[k];
    for (int p = 0; p < hl.embed_g.cols; ++p) {
      Vec gp = get_col(hl.embed_g, p);
      for (int c = 0; c < sp.cols; ++c) {
        if (!in_colspace(sp, hp.bracket(gp, get_col(sp, c)))) {
          fil.module_closed = false;
          fil.failures.push_back("module escape at level " + std::to_string(k) +
                                 " (generator " + std::to_string(p) + ")");
        }
      }
    }
  }
  for (int k1 = 0; k1 <= m_max; ++k1) {
    for (int k2 = k1; k1 + k2 <= m_max; ++k2) {
      const QMatrix& a = fil.spans[k1];
      const QMatrix& b = fil.spans[k2];
      const QMatrix& target = fil.spans[k1 + k2];
      for (int ca = 0; ca < a.cols; ++ca) {
        Vec x = get_col(a, ca);
        for (int cb = 0; cb < b.cols; ++cb) {
          if (!in_colspace(target, hp.bracket(x, get_col(b, cb)))) {
            fil.pairing_closed = false;
            fil.failures.push_back("pairing escape at levels (" +
                                   std::to_string(k1) + ", " +
                                   std::to_string(k2) + ")");
          }
        }
      }
    }
  }
  for (int k = 0; k < m_max; ++k) {
    bool stable = true;
    for (int l = k; l < m_max; ++l) {
      if (fil.spans[l].cols != fil.spans[l + 1].cols) {
        stable = false;
        break;
      }
    }
    if (stable) {
      fil.stable_from = k;
      break;
    }
  }
  return fil;
}

LieAlgebra change_basis(const LieAlgebra& g, const QMatrix& new_basis_cols) {
  if (new_basis_cols.rows != g.dim || new_basis_cols.cols != g.dim) {
    throw std::invalid_argument("change_basis: wrong shape");
  }
  QMatrix pinv = inverse(new_basis_cols);
  LieAlgebra out;
  out.dim = g.dim;
  for (int i = 0; i < g.dim; ++i) {
    Vec pi = get_col(new_basis_cols, i);
    for (int j = i + 1; j < g.dim; ++j) {
      Vec w = matvec(pinv, g.bracket(pi, get_col(new_basis_cols, j)));
      std::vector<std::pair<int, Rat>> terms;
      for (int k = 0; k < g.dim; ++k) {
        if (w[k] != 0) terms.emplace_back(k, w[k]);
      }
      if (!terms.empty()) out.set_bracket(i, j, terms);
    }
  }
  return out;
}

}  // namespace jb
