#include "jb/jb.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "jb/series.hpp"

namespace jb {

namespace {

long to_long(const Rat& r) {
  if (r.get_den() != 1) throw std::logic_error("expected an integer");
  return r.get_num().get_si();
}

bool vec_zero(const Vec& v) {
  for (const Rat& x : v) {
    if (x != 0) return false;
  }
  return true;
}

// Sorts wedge indices ascending in place; returns the permutation sign, or 0
// when an index repeats.
int sort_wedge(std::vector<int>& w) {
  int sign = 1;
  for (size_t i = 0; i < w.size(); ++i) {
    for (size_t j = 0; j + 1 + i < w.size(); ++j) {
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        sign = -sign;
      } else if (w[j] == w[j + 1]) {
        return 0;
      }
    }
  }
  return sign;
}

void for_each_combination(int n, int r,
                          const std::function<void(const std::vector<int>&)>& emit) {
  if (r > n || r < 0) return;
  std::vector<int> c(r);
  for (int i = 0; i < r; ++i) c[i] = i;
  while (true) {
    emit(c);
    int i = r - 1;
    while (i >= 0 && c[i] == n - r + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int k = i + 1; k < r; ++k) c[k] = c[k - 1] + 1;
  }
}

// Weakly increasing letter tuples of the given size whose level sum stays
// within the bound.
void for_each_monomial(int letters, const std::vector<int>& level, int size,
                       int max_level,
                       const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> mono;
  std::function<void(int, int, int)> rec = [&](int start, int remaining, int lv) {
    if (remaining == 0) {
      emit(mono);
      return;
    }
    for (int l = start; l < letters; ++l) {
      if (lv + level[l] > max_level) continue;
      mono.push_back(l);
      rec(l, remaining - 1, lv + level[l]);
      mono.pop_back();
    }
  };
  rec(0, size, 0);
}

template <class M>
void strip_zeros(M& m) {
  for (auto it = m.begin(); it != m.end();) {
    if (it->second == 0) {
      it = m.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace

int JBComplex::dim_at(int deg) const {
  return static_cast<int>(basis_at(deg).size());
}

const std::vector<JBTerm>& JBComplex::basis_at(int deg) const {
  if (deg < -m || deg > 0) throw std::out_of_range("degree outside [-m, 0]");
  return bases[deg + m];
}

const QMatrix& JBComplex::d_from(int deg) const {
  if (deg < -m || deg > -1) {
    throw std::out_of_range("no differential at this degree");
  }
  return d[deg + m];
}

int JBComplex::index_of(int deg, const JBTerm& t) const {
  const auto& ix = index[deg + m];
  auto it = ix.find(t);
  return it == ix.end() ? -1 : it->second;
}

std::string JBComplex::term_str(int deg, int idx) const {
  const JBTerm& t = basis_at(deg)[idx];
  bool plain = adapted_cols == QMatrix::identity(adapted_cols.rows);
  std::string w, mo;
  for (size_t k = 0; k < t.wedge.size(); ++k) {
    if (k) w += "^";
    w += atom.g.label(t.wedge[k]);
  }
  if (w.empty()) w = "1";
  for (size_t k = 0; k < t.mono.size(); ++k) {
    if (k) mo += ".";
    mo += plain ? atom.hull->alg.label(t.mono[k])
                : "u" + std::to_string(t.mono[k]);
  }
  if (mo.empty()) mo = "1";
  return w + " | " + mo;
}

std::vector<int> JBComplex::term_dims() const {
  std::vector<int> out;
  for (const auto& b : bases) out.push_back(static_cast<int>(b.size()));
  return out;
}

JBComplex build_jb(const LieAtom& atom, int m) {
  if (m < 1) throw std::invalid_argument("build_jb: order must be >= 1");
  StructureReport sr = check_structures(atom);
  if (!sr.ok) {
    throw std::invalid_argument("build_jb: inconsistent atom: " +
                                sr.failures.front());
  }
  if (!atom.hull) throw std::invalid_argument("build_jb: atom has no hull");

  JBComplex cx;
  cx.atom = atom;
  cx.m = m;

  const Hull& hull = *atom.hull;
  const int N = hull.alg.dim;

  // Adapted basis: h-letters first (level 0), then the new directions of the
  // adjoint filtration in level order, then the rest of the hull (dropped
  // from the monomial alphabet).
  Filtration filt = adjoint_filtration(atom, m);
  std::vector<Vec> cols;
  std::vector<int> level;
  QMatrix lvl0 = colspan_basis(hull.embed_h);
  QMatrix cur = lvl0;
  for (int j = 0; j < lvl0.cols; ++j) {
    cols.push_back(get_col(lvl0, j));
    level.push_back(0);
  }
  auto extend = [&](const Vec& v, int lv) {
    if (in_colspace(cur, v)) return;
    cols.push_back(v);
    level.push_back(lv);
    cur = from_cols(N, cols);
  };
  for (int k = 1; k <= m; ++k) {
    for (int j = 0; j < filt.spans[k].cols; ++j) {
      extend(get_col(filt.spans[k], j), k);
    }
  }
  for (int i = 0; i < N; ++i) {
    Vec e(N, Rat(0));
    e[i] = 1;
    extend(e, m + 1);
  }
  cx.adapted_cols = from_cols(N, cols);
  cx.letter_level = level;
  cx.letters = 0;
  while (cx.letters < N && level[cx.letters] <= m) ++cx.letters;
  cx.hull_adapted = change_basis(hull.alg, cx.adapted_cols);
  cx.embed_g_adapted = mul(inverse(cx.adapted_cols), hull.embed_g);

  const int gdim = atom.g.dim;
  cx.bases.resize(m + 1);
  cx.index.resize(m + 1);
  for (int deg = -m; deg <= 0; ++deg) {
    auto& lst = cx.bases[deg + m];
    const int r = -deg;
    const int jmin = (deg == 0) ? 1 : 0;
    const int jmax = deg + m;
    for (int j = jmin; j <= jmax; ++j) {
      for_each_combination(gdim, r, [&](const std::vector<int>& W) {
        for_each_monomial(cx.letters, cx.letter_level, j, m,
                          [&](const std::vector<int>& M) {
                            lst.push_back(JBTerm{W, M});
                          });
      });
    }
    for (int i = 0; i < static_cast<int>(lst.size()); ++i) {
      cx.index[deg + m][lst[i]] = i;
    }
  }

  std::vector<Rat> c = bernoulli_coeffs(m);

  for (int deg = -m; deg <= -1; ++deg) {
    QMatrix mat(cx.dim_at(deg + 1), cx.dim_at(deg));
    const auto& src_list = cx.basis_at(deg);
    for (int src = 0; src < static_cast<int>(src_list.size()); ++src) {
      const JBTerm& term = src_list[src];
      const int jlen = static_cast<int>(term.mono.size());
      std::map<JBTerm, Rat> out;

      // Chain part: sign (-1)^p over the removed wedge slot, coefficient c_t
      // per ordered selection of t distinct monomial positions, chain value
      // merged into the remaining monomial.
      for (int p = 0; p < static_cast<int>(term.wedge.size()); ++p) {
        Rat sgn = (p % 2 == 0) ? 1 : -1;
        std::vector<int> W2(term.wedge);
        W2.erase(W2.begin() + p);
        Vec start = get_col(cx.embed_g_adapted, term.wedge[p]);
        std::vector<char> used(jlen, 0);
        std::function<void(const Vec&, int)> dfs = [&](const Vec& v, int t) {
          std::vector<int> rest;
          int rest_level = 0;
          for (int q = 0; q < jlen; ++q) {
            if (!used[q]) {
              rest.push_back(term.mono[q]);
              rest_level += cx.letter_level[term.mono[q]];
            }
          }
          for (int k = 0; k < static_cast<int>(v.size()); ++k) {
            if (v[k] == 0) continue;
            if (k >= cx.letters || rest_level + cx.letter_level[k] > m) {
              cx.leakage.push_back(
                  "degree " + std::to_string(deg) + " (" + cx.term_str(deg, src) +
                  ") chain of length " + std::to_string(t) +
                  " reaches letter u" + std::to_string(k) +
                  " past the level bound");
              continue;
            }
            std::vector<int> M2(rest);
            M2.insert(std::upper_bound(M2.begin(), M2.end(), k), k);
            out[JBTerm{W2, M2}] += sgn * c[t] * v[k];
          }
          if (t == jlen) return;
          for (int q = 0; q < jlen; ++q) {
            if (used[q]) continue;
            Vec e(cx.hull_adapted.dim, Rat(0));
            e[term.mono[q]] = 1;
            Vec v2 = cx.hull_adapted.bracket(v, e);
            if (vec_zero(v2)) continue;
            used[q] = 1;
            dfs(v2, t + 1);
            used[q] = 0;
          }
        };
        dfs(start, 0);
      }

      // Bracket part: [w_p, w_q] prepended with sign (-1)^(p+q), then the
      // wedge resorted.
      for (int p = 0; p < static_cast<int>(term.wedge.size()); ++p) {
        for (int q = p + 1; q < static_cast<int>(term.wedge.size()); ++q) {
          Rat sgn = ((p + q) % 2 == 0) ? 1 : -1;
          Vec bv = atom.g.bracket_basis(term.wedge[p], term.wedge[q]);
          for (int k = 0; k < static_cast<int>(bv.size()); ++k) {
            if (bv[k] == 0) continue;
            std::vector<int> Wl;
            Wl.push_back(k);
            for (int r2 = 0; r2 < static_cast<int>(term.wedge.size()); ++r2) {
              if (r2 != p && r2 != q) Wl.push_back(term.wedge[r2]);
            }
            int s2 = sort_wedge(Wl);
            if (s2 == 0) continue;
            out[JBTerm{Wl, term.mono}] += sgn * Rat(s2) * bv[k];
          }
        }
      }

      for (const auto& [tgt, coef] : out) {
        if (coef == 0) continue;
        int ti = cx.index_of(deg + 1, tgt);
        if (ti < 0) throw std::logic_error("differential target missing from basis");
        mat.add_entry(ti, src, coef);
      }
    }
    cx.d.push_back(std::move(mat));
  }
  return cx;
}

D2Report check_d2(const JBComplex& cx) {
  D2Report rep;
  for (const auto& s : cx.leakage) {
    rep.ok = false;
    rep.failures.push_back("level cut leak: " + s);
  }
  for (int deg = -cx.m; deg <= -2; ++deg) {
    QMatrix comp = mul(cx.d_from(deg + 1), cx.d_from(deg));
    if (comp.is_zero()) continue;
    rep.ok = false;
    for (int i = 0; i < comp.rows; ++i) {
      for (const auto& [j, v] : comp.data[i]) {
        rep.failures.push_back("d^2 from (" + cx.term_str(deg, j) + ") to (" +
                               cx.term_str(deg + 2, i) + ") = " + rat_str(v));
      }
    }
  }
  return rep;
}

H0Data h0(const JBComplex& cx) {
  Cokernel ck = cokernel_data(cx.d.back());
  return H0Data{ck.dim, ck.proj, ck.section};
}

namespace {

// Reduced unshuffle coproduct of each degree-0 monomial: all proper
// two-part splittings of the exponent vector, weighted by the product of
// binomials.
std::vector<std::vector<std::tuple<int, int, Rat>>> reduced_coproduct(
    const JBComplex& cx) {
  const auto& b0 = cx.basis_at(0);
  std::vector<std::vector<std::tuple<int, int, Rat>>> co(b0.size());
  for (int s = 0; s < static_cast<int>(b0.size()); ++s) {
    std::vector<std::pair<int, int>> ex;  // (letter, count)
    for (int l : b0[s].mono) {
      if (!ex.empty() && ex.back().first == l) {
        ex.back().second++;
      } else {
        ex.push_back({l, 1});
      }
    }
    const int ne = static_cast<int>(ex.size());
    std::vector<int> u(ne, 0);
    while (true) {
      bool zero = true, full = true;
      for (int t = 0; t < ne; ++t) {
        if (u[t] != 0) zero = false;
        if (u[t] != ex[t].second) full = false;
      }
      if (!zero && !full) {
        Rat coeff = 1;
        std::vector<int> m1, m2;
        for (int t = 0; t < ne; ++t) {
          coeff *= binom(ex[t].second, u[t]);
          for (int r = 0; r < u[t]; ++r) m1.push_back(ex[t].first);
          for (int r = 0; r < ex[t].second - u[t]; ++r) m2.push_back(ex[t].first);
        }
        int i1 = cx.index_of(0, JBTerm{{}, m1});
        int i2 = cx.index_of(0, JBTerm{{}, m2});
        if (i1 < 0 || i2 < 0) throw std::logic_error("coproduct target missing");
        co[s].push_back({i1, i2, coeff});
      }
      int t = 0;
      while (t < ne && u[t] == ex[t].second) {
        u[t] = 0;
        ++t;
      }
      if (t == ne) break;
      ++u[t];
    }
  }
  return co;
}

struct RingCore {
  int n = 0;
  std::vector<std::vector<Vec>> table;
  H0Data h;
  bool descent_ok = true;
  bool coassoc_ok = true;
  bool cocomm_ok = true;
  bool assoc_ok = true;
  bool comm_ok = true;
};

RingCore ring_core(const JBComplex& cx) {
  RingCore rc;
  auto co = reduced_coproduct(cx);
  const int dim0 = cx.dim_at(0);

  for (int s = 0; s < dim0; ++s) {
    std::map<std::pair<int, int>, Rat> two, swp;
    for (const auto& [i1, i2, cv] : co[s]) {
      two[{i1, i2}] += cv;
      swp[{i2, i1}] += cv;
    }
    strip_zeros(two);
    strip_zeros(swp);
    if (two != swp) rc.cocomm_ok = false;

    std::map<std::array<int, 3>, Rat> lhs, rhs;
    for (const auto& [i1, i2, cv] : co[s]) {
      for (const auto& [a, b, cv2] : co[i1]) lhs[{a, b, i2}] += cv * cv2;
      for (const auto& [a, b, cv2] : co[i2]) rhs[{i1, a, b}] += cv * cv2;
    }
    strip_zeros(lhs);
    strip_zeros(rhs);
    if (lhs != rhs) rc.coassoc_ok = false;
  }

  rc.h = h0(cx);
  rc.n = rc.h.dim;

  auto coproduct_of = [&](const Vec& x) {
    std::map<std::pair<int, int>, Rat> acc;
    for (int s = 0; s < dim0; ++s) {
      if (x[s] == 0) continue;
      for (const auto& [i1, i2, cv] : co[s]) acc[{i1, i2}] += x[s] * cv;
    }
    strip_zeros(acc);
    return acc;
  };
  auto project_grid = [&](const std::map<std::pair<int, int>, Rat>& acc) {
    std::vector<Vec> grid(rc.n, Vec(rc.n, Rat(0)));
    for (const auto& [pr, cv] : acc) {
      for (int a = 0; a < rc.n; ++a) {
        const Rat& pa = rc.h.proj.at(a, pr.first);
        if (pa == 0) continue;
        for (int b = 0; b < rc.n; ++b) {
          const Rat& pb = rc.h.proj.at(b, pr.second);
          if (pb == 0) continue;
          grid[a][b] += cv * pa * pb;
        }
      }
    }
    return grid;
  };

  const QMatrix& dm1 = cx.d.back();
  for (int j = 0; j < dm1.cols; ++j) {
    auto grid = project_grid(coproduct_of(get_col(dm1, j)));
    for (const Vec& row : grid) {
      if (!vec_zero(row)) rc.descent_ok = false;
    }
  }

  rc.table.assign(rc.n, std::vector<Vec>(rc.n, Vec(rc.n, Rat(0))));
  for (int cc = 0; cc < rc.n; ++cc) {
    auto grid = project_grid(coproduct_of(get_col(rc.h.section, cc)));
    for (int a = 0; a < rc.n; ++a) {
      for (int b = 0; b < rc.n; ++b) rc.table[a][b][cc] = grid[a][b];
    }
  }

  for (int a = 0; a < rc.n; ++a) {
    for (int b = 0; b < rc.n; ++b) {
      if (rc.table[a][b] != rc.table[b][a]) rc.comm_ok = false;
    }
  }
  for (int a = 0; a < rc.n; ++a) {
    for (int b = 0; b < rc.n; ++b) {
      for (int c2 = 0; c2 < rc.n; ++c2) {
        Vec lhs(rc.n, Rat(0)), rhs(rc.n, Rat(0));
        for (int d2 = 0; d2 < rc.n; ++d2) {
          const Rat& lv = rc.table[a][b][d2];
          if (lv != 0) {
            for (int k = 0; k < rc.n; ++k) lhs[k] += lv * rc.table[d2][c2][k];
          }
          const Rat& rv = rc.table[b][c2][d2];
          if (rv != 0) {
            for (int k = 0; k < rc.n; ++k) rhs[k] += rv * rc.table[a][d2][k];
          }
        }
        if (lhs != rhs) rc.assoc_ok = false;
      }
    }
  }
  return rc;
}

// Spans of the maximal ideal powers m^r for r = 1..m+1, in dual coordinates.
std::vector<QMatrix> ideal_powers(int n,
                                  const std::vector<std::vector<Vec>>& table,
                                  int m) {
  std::vector<QMatrix> spans;
  spans.push_back(QMatrix::identity(n));
  for (int r = 2; r <= m + 1; ++r) {
    const QMatrix& prev = spans.back();
    std::vector<Vec> cols;
    for (int a = 0; a < n; ++a) {
      for (int j = 0; j < prev.cols; ++j) {
        Vec v = get_col(prev, j);
        Vec w(n, Rat(0));
        for (int b = 0; b < n; ++b) {
          if (v[b] == 0) continue;
          for (int k = 0; k < n; ++k) w[k] += v[b] * table[a][b][k];
        }
        if (!vec_zero(w)) cols.push_back(w);
      }
    }
    spans.push_back(colspan_basis(from_cols(n, cols)));
  }
  return spans;
}

}  // namespace

DeformationRing deformation_ring(const JBComplex& cx) {
  RingCore core = ring_core(cx);
  DeformationRing ring;
  ring.m = cx.m;
  ring.n = core.n;
  ring.h1_dim = cx.atom.h.dim - rank(cx.atom.i_map);
  ring.table = core.table;
  ring.descent_ok = core.descent_ok;
  ring.coassoc_ok = core.coassoc_ok;
  ring.cocomm_ok = core.cocomm_ok;
  ring.assoc_ok = core.assoc_ok;
  ring.comm_ok = core.comm_ok;

  auto powers = ideal_powers(ring.n, ring.table, ring.m);
  ring.nilpotent_ok = (powers[ring.m].cols == 0);

  if (cx.m >= 2) {
    JBComplex prev = build_jb(cx.atom, cx.m - 1);
    RingCore pcore = ring_core(prev);
    ring.prev_n = pcore.n;
    QMatrix incl(cx.dim_at(0), prev.dim_at(0));
    for (int s = 0; s < prev.dim_at(0); ++s) {
      int t = cx.index_of(0, prev.basis_at(0)[s]);
      if (t < 0) throw std::logic_error("order tower: bases not nested");
      incl.set(t, s, Rat(1));
    }
    QMatrix a_map = mul(core.h.proj, mul(incl, pcore.h.section));
    ring.eta = transpose(a_map);
    ring.tower_surjective = (rank(a_map) == pcore.n);

    ring.tower_ring_hom = true;
    for (int a = 0; a < ring.n; ++a) {
      for (int b = 0; b < ring.n; ++b) {
        Vec lhs = matvec(ring.eta, ring.table[a][b]);
        Vec ea = get_col(ring.eta, a), eb = get_col(ring.eta, b);
        Vec rhs(ring.prev_n, Rat(0));
        for (int c2 = 0; c2 < ring.prev_n; ++c2) {
          if (ea[c2] == 0) continue;
          for (int d2 = 0; d2 < ring.prev_n; ++d2) {
            if (eb[d2] == 0) continue;
            for (int k = 0; k < ring.prev_n; ++k) {
              rhs[k] += ea[c2] * eb[d2] * pcore.table[c2][d2][k];
            }
          }
        }
        if (lhs != rhs) ring.tower_ring_hom = false;
      }
    }

    ring.tower_kernel_ok = true;
    const QMatrix& top_power = powers[ring.m - 1];  // m^m
    for (int j = 0; j < top_power.cols; ++j) {
      if (!vec_zero(matvec(ring.eta, get_col(top_power, j)))) {
        ring.tower_kernel_ok = false;
      }
    }
  } else {
    ring.prev_n = 0;
    ring.eta = QMatrix(0, ring.n);
    ring.tower_surjective = true;
    ring.tower_ring_hom = true;
    ring.tower_kernel_ok = true;
  }
  return ring;
}

GradedReport graded_dims(const DeformationRing& ring) {
  GradedReport rep;
  auto powers = ideal_powers(ring.n, ring.table, ring.m);
  rep.bound_ok = true;
  std::vector<int> graded;
  for (int r = 1; r <= ring.m; ++r) {
    int dr = powers[r - 1].cols - powers[r].cols;
    graded.push_back(dr);
    long expect = to_long(binom(ring.h1_dim + r - 1, r));
    rep.sym_expected.push_back(static_cast<int>(expect));
    if (dr != expect) rep.bound_ok = false;
  }
  while (!graded.empty() && graded.back() == 0) graded.pop_back();
  rep.graded = graded;
  return rep;
}

namespace {

// Sym of the h-map on monomials, tensored with the g-map on a wedge factor
// when present. Only used for pair complexes at degrees 0 and -1.
QMatrix induced_map(const JBComplex& cxa, const JBComplex& cxb,
                    const QMatrix& g_map, const QMatrix& h_map, int deg) {
  QMatrix out(cxb.dim_at(deg), cxa.dim_at(deg));
  const auto& src = cxa.basis_at(deg);
  for (int s = 0; s < static_cast<int>(src.size()); ++s) {
    const JBTerm& t = src[s];
    if (t.wedge.size() > 1) throw std::logic_error("induced_map: wedge too long");
    std::map<std::vector<int>, Rat> acc;
    acc[{}] = Rat(1);
    for (int l : t.mono) {
      std::map<std::vector<int>, Rat> nxt;
      for (const auto& [mono0, c0] : acc) {
        for (int tl = 0; tl < h_map.rows; ++tl) {
          const Rat& hv = h_map.at(tl, l);
          if (hv == 0) continue;
          std::vector<int> mono2(mono0);
          mono2.insert(std::upper_bound(mono2.begin(), mono2.end(), tl), tl);
          nxt[mono2] += c0 * hv;
        }
      }
      acc = std::move(nxt);
    }
    for (const auto& [mono2, cc] : acc) {
      if (cc == 0) continue;
      if (t.wedge.empty()) {
        int idx = cxb.index_of(deg, JBTerm{{}, mono2});
        if (idx < 0) throw std::logic_error("induced_map: target missing");
        out.add_entry(idx, s, cc);
      } else {
        for (int b2 = 0; b2 < g_map.rows; ++b2) {
          const Rat& gv = g_map.at(b2, t.wedge[0]);
          if (gv == 0) continue;
          int idx = cxb.index_of(deg, JBTerm{{b2}, mono2});
          if (idx < 0) throw std::logic_error("induced_map: target missing");
          out.add_entry(idx, s, cc * gv);
        }
      }
    }
  }
  return out;
}

}  // namespace

QuasiIsoReport quasi_iso_check(const LieAtom& a, const LieAtom& b,
                               const AtomMorphism& f, int m) {
  if (!a.is_pair || !b.is_pair) {
    throw std::invalid_argument("quasi_iso_check: both atoms must be pairs");
  }
  if (f.g_map.rows != b.g.dim || f.g_map.cols != a.g.dim ||
      f.h_map.rows != b.h.dim || f.h_map.cols != a.h.dim) {
    throw std::invalid_argument("quasi_iso_check: morphism shape mismatch");
  }
  if (!(mul(f.h_map, a.i_map) == mul(b.i_map, f.g_map))) {
    throw std::invalid_argument("quasi_iso_check: morphism does not commute with i");
  }
  for (int p = 0; p < a.g.dim; ++p) {
    for (int q = p + 1; q < a.g.dim; ++q) {
      Vec lhs = matvec(f.g_map, a.g.bracket_basis(p, q));
      Vec rhs = b.g.bracket(get_col(f.g_map, p), get_col(f.g_map, q));
      if (lhs != rhs) {
        throw std::invalid_argument(
            "quasi_iso_check: g-map is not a Lie homomorphism");
      }
    }
  }
  for (int k = 0; k < a.g.dim; ++k) {
    QMatrix lhs = mul(f.h_map, a.h.act[k]);
    QMatrix rhs(b.h.dim, a.h.dim);
    Vec gk = get_col(f.g_map, k);
    for (int u = 0; u < b.g.dim; ++u) {
      if (gk[u] == 0) continue;
      rhs = add(rhs, scale(mul(b.h.act[u], f.h_map), gk[u]));
    }
    if (!(lhs == rhs)) {
      throw std::invalid_argument(
          "quasi_iso_check: morphism does not intertwine the actions");
    }
  }

  QuasiIsoReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };

  QMatrix ka = kernel_basis(a.i_map), kb = kernel_basis(b.i_map);
  if (ka.cols != kb.cols) {
    fail("two-term kernels have different dimensions");
  } else if (rank(mul(f.g_map, ka)) != ka.cols) {
    fail("morphism is not an isomorphism on the two-term kernel");
  }
  Cokernel ca = cokernel_data(a.i_map), cb = cokernel_data(b.i_map);
  if (ca.dim != cb.dim) {
    fail("two-term cokernels have different dimensions");
  } else if (rank(mul(cb.proj, mul(f.h_map, ca.section))) != ca.dim) {
    fail("morphism is not an isomorphism on the two-term cokernel");
  }

  JBComplex cxa = build_jb(a, m), cxb = build_jb(b, m);
  H0Data ha = h0(cxa), hb = h0(cxb);
  rep.h0_a = ha.dim;
  rep.h0_b = hb.dim;
  if (ha.dim != hb.dim) fail("H0 dimensions differ");

  QMatrix phi0 = induced_map(cxa, cxb, f.g_map, f.h_map, 0);
  QMatrix phi1 = induced_map(cxa, cxb, f.g_map, f.h_map, -1);
  if (!(mul(cxb.d.back(), phi1) == mul(phi0, cxa.d.back()))) {
    fail("induced map does not commute with the differential");
  }
  if (ha.dim == hb.dim) {
    QMatrix ind = mul(hb.proj, mul(phi0, ha.section));
    if (rank(ind) != ha.dim) fail("induced map on H0 is not an isomorphism");
  }
  return rep;
}

}  // namespace jb
