#include <algorithm>
#include <map>
#include <stdexcept>

#include "jb/lie.hpp"

namespace jb {

namespace {

bool is_zero_vec(const Vec& v) {
  for (const Rat& c : v) {
    if (c != 0) return false;
  }
  return true;
}

std::vector<std::pair<int, Rat>> to_terms(const Vec& v) {
  std::vector<std::pair<int, Rat>> terms;
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) terms.emplace_back(static_cast<int>(k), v[k]);
  }
  return terms;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  LieAlgebra s;
  s.dim = a.dim + b.dim;
  for (int i = 0; i < a.dim; ++i) s.labels.push_back(a.label(i));
  for (int i = 0; i < b.dim; ++i) s.labels.push_back(b.label(i) + "'");
  for (const auto& [ij, terms] : a.brk) {
    s.set_bracket(ij.first, ij.second, terms);
  }
  for (const auto& [ij, terms] : b.brk) {
    std::vector<std::pair<int, Rat>> shifted;
    for (const auto& [k, c] : terms) shifted.emplace_back(k + a.dim, c);
    s.set_bracket(ij.first + a.dim, ij.second + a.dim, shifted);
  }
  return s;
}

}  // namespace

LieAtom pair_atom(const LieAlgebra& g, const LieAlgebra& h, const QMatrix& i) {
  if (i.rows != h.dim || i.cols != g.dim) {
    throw std::invalid_argument("pair_atom: i has wrong shape");
  }
  LieAtom atom;
  atom.g = g;
  atom.h.dim = h.dim;
  atom.h.alg_dim = g.dim;
  for (int k = 0; k < g.dim; ++k) atom.h.act.push_back(h.ad(get_col(i, k)));
  atom.i_map = i;
  atom.hull = Hull{h, QMatrix::identity(h.dim), i};
  atom.is_pair = true;
  return atom;
}

LieAtom subalgebra_pair(const LieAlgebra& h, const QMatrix& g_cols) {
  if (g_cols.rows != h.dim) {
    throw std::invalid_argument("subalgebra_pair: wrong height");
  }
  if (rank(g_cols) != g_cols.cols) {
    throw std::invalid_argument("subalgebra_pair: dependent columns");
  }
  LieAlgebra g;
  g.dim = g_cols.cols;
  for (int p = 0; p < g.dim; ++p) {
    Vec xp = get_col(g_cols, p);
    for (int q = p + 1; q < g.dim; ++q) {
      Vec w = h.bracket(xp, get_col(g_cols, q));
      auto coords = solve(g_cols, w);
      if (!coords) {
        throw std::invalid_argument("subalgebra_pair: span not bracket-closed");
      }
      auto terms = to_terms(*coords);
      if (!terms.empty()) g.set_bracket(p, q, terms);
    }
  }
  return pair_atom(g, h, g_cols);
}

LieAtom subalgebra_pair(const LieAlgebra& h, const std::vector<int>& g_idx) {
  QMatrix cols(h.dim, static_cast<int>(g_idx.size()));
  for (size_t c = 0; c < g_idx.size(); ++c) {
    cols.add_entry(g_idx[c], static_cast<int>(c), Rat(1));
  }
  return subalgebra_pair(h, cols);
}

int gl_unit(int n, int a, int b) { return a * n + b; }

LieAlgebra gl(int n) {
  LieAlgebra g;
  g.dim = n * n;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      g.labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  }
  // [E_ab, E_cd] = d_bc E_ad - d_da E_cb.
  for (int i = 0; i < g.dim; ++i) {
    int a = i / n, b = i % n;
    for (int j = i + 1; j < g.dim; ++j) {
      int c = j / n, d = j % n;
      std::map<int, Rat> acc;
      if (b == c) acc[gl_unit(n, a, d)] += 1;
      if (d == a) acc[gl_unit(n, c, b)] -= 1;
      std::vector<std::pair<int, Rat>> terms;
      for (const auto& [k, v] : acc) {
        if (v != 0) terms.emplace_back(k, v);
      }
      if (!terms.empty()) g.set_bracket(i, j, terms);
    }
  }
  return g;
}

QMatrix coordinate_inclusion(int s, int a) {
  QMatrix j(a, s);
  for (int k = 0; k < s; ++k) j.add_entry(k, k, Rat(1));
  return j;
}

LieAtom gl_atom(const QMatrix& j, GlVariant variant) {
  const int e1 = j.cols, e2 = j.rows;
  const int n1 = e1 * e1, n2 = e2 * e2;

  // Intertwining constraint j*a1 - a2*j = 0 as a matrix on gl(E1)+gl(E2),
  // rows indexed by Hom(E1, E2) entries (r, c) at r*e1 + c.
  QMatrix t(e2 * e1, n1 + n2);
  for (int a = 0; a < e1; ++a) {
    for (int b = 0; b < e1; ++b) {
      for (int r = 0; r < e2; ++r) {
        Rat v = j.at(r, a);
        if (v != 0) t.add_entry(r * e1 + b, gl_unit(e1, a, b), v);
      }
    }
  }
  for (int c = 0; c < e2; ++c) {
    for (int d = 0; d < e2; ++d) {
      for (int s = 0; s < e1; ++s) {
        Rat v = j.at(d, s);
        if (v != 0) t.add_entry(c * e1 + s, n1 + gl_unit(e2, c, d), -v);
      }
    }
  }
  QMatrix k = kernel_basis(t);

  LieAlgebra gl1 = gl(e1), gl2 = gl(e2);
  LieAlgebra g;
  g.dim = k.cols;
  auto split = [&](const Vec& v) {
    Vec a1(n1), a2(n2);
    for (int idx = 0; idx < n1; ++idx) a1[idx] = v[idx];
    for (int idx = 0; idx < n2; ++idx) a2[idx] = v[n1 + idx];
    return std::make_pair(a1, a2);
  };
  for (int p = 0; p < g.dim; ++p) {
    auto [p1, p2] = split(get_col(k, p));
    for (int q = p + 1; q < g.dim; ++q) {
      auto [q1, q2] = split(get_col(k, q));
      Vec b1 = gl1.bracket(p1, q1);
      Vec b2 = gl2.bracket(p2, q2);
      Vec w(n1 + n2);
      for (int idx = 0; idx < n1; ++idx) w[idx] = b1[idx];
      for (int idx = 0; idx < n2; ++idx) w[n1 + idx] = b2[idx];
      auto coords = solve(k, w);
      if (!coords) throw std::logic_error("gl_atom: intertwiners not closed");
      auto terms = to_terms(*coords);
      if (!terms.empty()) g.set_bracket(p, q, terms);
    }
  }

  auto block = [&](int offset, int dim) {
    QMatrix i(dim, g.dim);
    for (int c = 0; c < g.dim; ++c) {
      Vec col = get_col(k, c);
      for (int r = 0; r < dim; ++r) {
        if (col[offset + r] != 0) i.add_entry(r, c, col[offset + r]);
      }
    }
    return i;
  };
  switch (variant) {
    case GlVariant::Sub:
      return pair_atom(g, gl2, block(n1, n2));
    case GlVariant::Quot:
      return pair_atom(g, gl1, block(0, n1));
    case GlVariant::Vee:
      return pair_atom(g, direct_sum(gl1, gl2), k);
  }
  throw std::invalid_argument("gl_atom: bad variant");
}

LieAlgebra tensor_artin(const LieAlgebra& g, const ArtinAlgebra& a) {
  const int na = a.dim();
  LieAlgebra t;
  t.dim = g.dim * na;
  for (int i = 0; i < g.dim; ++i) {
    for (int u = 0; u < na; ++u) t.labels.push_back(g.label(i) + "*" + a.mono_str(u));
  }
  for (const auto& [ij, terms] : g.brk) {
    for (int u = 0; u < na; ++u) {
      for (int v = 0; v < na; ++v) {
        int w = a.mono_mul(u, v);
        if (w < 0) continue;
        int p = ij.first * na + u;
        int q = ij.second * na + v;
        std::vector<std::pair<int, Rat>> shifted;
        for (const auto& [k, c] : terms) shifted.emplace_back(k * na + w, c);
        // p < q holds because ij.first < ij.second.
        t.set_bracket(p, q, shifted);
      }
    }
  }
  return t;
}

TensorAtom tensor_artin(const LieAtom& atom, const ArtinAlgebra& a) {
  if (!atom.hull) throw std::invalid_argument("tensor_artin: atom needs a hull");
  const int na = a.dim();
  const Hull& hl = *atom.hull;

  TensorAtom out;
  out.atom.g = tensor_artin(atom.g, a);
  out.atom.is_pair = atom.is_pair;

  const int hdim = atom.h.dim * na;
  out.atom.h.dim = hdim;
  out.atom.h.alg_dim = out.atom.g.dim;
  for (int kk = 0; kk < atom.g.dim; ++kk) {
    for (int u = 0; u < na; ++u) {
      QMatrix m(hdim, hdim);
      for (int v = 0; v < atom.h.dim; ++v) {
        Vec img = get_col(atom.h.act[kk], v);
        for (int w = 0; w < na; ++w) {
          int tm = a.mono_mul(u, w);
          if (tm < 0) continue;
          for (int r = 0; r < atom.h.dim; ++r) {
            if (img[r] != 0) m.add_entry(r * na + tm, v * na + w, img[r]);
          }
        }
      }
      out.atom.h.act.push_back(m);
    }
  }

  auto tensor_map = [&](const QMatrix& f) {
    QMatrix m(f.rows * na, f.cols * na);
    for (int r = 0; r < f.rows; ++r) {
      for (int c = 0; c < f.cols; ++c) {
        Rat v = f.at(r, c);
        if (v == 0) continue;
        for (int u = 0; u < na; ++u) m.add_entry(r * na + u, c * na + u, v);
      }
    }
    return m;
  };
  out.atom.i_map = tensor_map(atom.i_map);

  Hull th;
  th.alg = tensor_artin(hl.alg, a);
  th.embed_h = tensor_map(hl.embed_h);
  th.embed_g = tensor_map(hl.embed_g);
  out.atom.hull = th;

  // Lie closure of h(X)m inside hull(X)m.
  QMatrix closure = colspan_basis(out.atom.hull->embed_h);
  for (;;) {
    std::vector<Vec> next;
    for (int p = 0; p < closure.cols; ++p) {
      Vec x = get_col(closure, p);
      for (int q = p + 1; q < closure.cols; ++q) {
        Vec y = out.atom.hull->alg.bracket(x, get_col(closure, q));
        if (!is_zero_vec(y) && !in_colspace(closure, y)) next.push_back(y);
      }
    }
    if (next.empty()) break;
    closure = span_union(closure, from_cols(th.alg.dim, next));
  }
  out.closure = closure;
  return out;
}

LieAlgebra heisenberg() {
  LieAlgebra g;
  g.dim = 3;
  g.labels = {"x", "y", "z"};
  g.set_bracket(0, 1, {{2, Rat(1)}});
  return g;
}

LieAlgebra filiform4() {
  LieAlgebra g;
  g.dim = 4;
  g.labels = {"e1", "e2", "e3", "e4"};
  g.set_bracket(0, 1, {{2, Rat(1)}});
  g.set_bracket(0, 2, {{3, Rat(1)}});
  return g;
}

LieAlgebra sl2() {
  LieAlgebra g;
  g.dim = 3;
  g.labels = {"e", "f", "h"};
  g.set_bracket(0, 1, {{2, Rat(1)}});
  g.set_bracket(0, 2, {{0, Rat(-2)}});
  g.set_bracket(1, 2, {{1, Rat(2)}});
  return g;
}

LieAtom heisenberg_pair() {
  LieAlgebra h3 = heisenberg();
  return pair_atom(h3, h3, QMatrix::identity(3));
}

LieAtom heisenberg_atom() {
  LieAtom atom;
  atom.g = LieAlgebra::abelian(1);
  atom.g.labels = {"x"};
  atom.h.dim = 2;
  atom.h.alg_dim = 1;
  atom.h.act.push_back(QMatrix(2, 2));
  atom.i_map = QMatrix(2, 1);
  atom.i_map.add_entry(0, 0, Rat(1));
  Hull hl;
  hl.alg = heisenberg();
  hl.embed_h = QMatrix(3, 2);
  hl.embed_h.add_entry(0, 0, Rat(1));
  hl.embed_h.add_entry(1, 1, Rat(1));
  hl.embed_g = QMatrix(3, 1);
  hl.embed_g.add_entry(0, 0, Rat(1));
  atom.hull = hl;
  return atom;
}

LieAtom ladder_atom() {
  LieAlgebra hp;
  hp.dim = 4;
  hp.labels = {"u", "v", "w", "p"};
  hp.set_bracket(0, 1, {{2, Rat(1)}});
  hp.set_bracket(1, 2, {{3, Rat(-1)}});

  LieAtom atom;
  atom.g = LieAlgebra::abelian(1);
  atom.g.labels = {"u"};
  atom.h.dim = 3;
  atom.h.alg_dim = 1;
  QMatrix act(3, 3);
  act.add_entry(2, 1, Rat(1));  // <u, v> = w
  atom.h.act.push_back(act);
  atom.i_map = QMatrix(3, 1);
  atom.i_map.add_entry(0, 0, Rat(1));
  Hull hl;
  hl.alg = hp;
  hl.embed_h = QMatrix(4, 3);
  for (int r = 0; r < 3; ++r) hl.embed_h.add_entry(r, r, Rat(1));
  hl.embed_g = QMatrix(4, 1);
  hl.embed_g.add_entry(0, 0, Rat(1));
  atom.hull = hl;
  return atom;
}

LieAtom random_nilpotent_pair(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> small(-2, 2);

  LieAlgebra h;
  if (coin(rng) == 0) {
    // Central extension: [e_i, e_j] = c_ij * e_last, e_last central.
    std::uniform_int_distribution<int> dims(3, 4);
    h.dim = dims(rng);
    for (int i = 0; i + 1 < h.dim; ++i) {
      for (int j = i + 1; j + 1 < h.dim; ++j) {
        int c = small(rng);
        if (c != 0) h.set_bracket(i, j, {{h.dim - 1, Rat(c)}});
      }
    }
  } else {
    // Free 3-step algebra on a, b (basis a, b, c=[a,b], d=[c,a], e=[c,b])
    // modulo a random central line c3*d + c4*e.
    int c3 = small(rng), c4 = small(rng);
    if (c3 == 0 && c4 == 0) c3 = 1;
    h.dim = 4;
    h.set_bracket(0, 1, {{2, Rat(1)}});
    if (c3 != 0) {
      // Keep e as the surviving degree-3 vector: d = -(c4/c3)*e.
      h.set_bracket(0, 2, {{3, Rat(c4) / c3}});
      h.set_bracket(1, 2, {{3, Rat(-1)}});
    } else {
      // Kill e, keep d.
      h.set_bracket(0, 2, {{3, Rat(-1)}});
    }
  }

  // Scramble by a unimodular change of basis.
  QMatrix p = QMatrix::identity(h.dim);
  std::uniform_int_distribution<int> idx(0, h.dim - 1);
  for (int step = 0; step < 2 * h.dim; ++step) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int lam = small(rng);
    if (lam == 0) continue;
    // Column op: col_j += lam * col_i.
    for (int r = 0; r < h.dim; ++r) {
      Rat v = p.at(r, i);
      if (v != 0) p.set(r, j, p.at(r, j) + lam * v);
    }
  }
  h = change_basis(h, p);

  if (coin(rng) == 0) {
    return pair_atom(h, h, QMatrix::identity(h.dim));
  }
  // Random bracket-closed subspace: try coordinate subsets, fall back to the
  // whole algebra.
  std::uniform_int_distribution<int> sz(1, h.dim - 1);
  for (int attempt = 0; attempt < 8; ++attempt) {
    int want = sz(rng);
    std::vector<int> all(h.dim);
    for (int i = 0; i < h.dim; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int> pick(all.begin(), all.begin() + want);
    std::sort(pick.begin(), pick.end());
    QMatrix cols(h.dim, want);
    for (int c = 0; c < want; ++c) cols.add_entry(pick[c], c, Rat(1));
    bool closed = true;
    for (int a = 0; a < want && closed; ++a) {
      for (int b = a + 1; b < want && closed; ++b) {
        Vec w = h.bracket(get_col(cols, a), get_col(cols, b));
        if (!in_colspace(cols, w)) closed = false;
      }
    }
    if (closed) return subalgebra_pair(h, cols);
  }
  return pair_atom(h, h, QMatrix::identity(h.dim));
}

}  // namespace jb
