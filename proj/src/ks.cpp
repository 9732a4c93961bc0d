#include "jb/ks.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "jb/series.hpp"

namespace jb {

namespace {

Vec zero_vec(int n) { return Vec(n, Rat(0)); }

Vec basis_vec(int n, int i) {
  Vec v(n, Rat(0));
  v[i] = 1;
  return v;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a);
  for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Vec vec_scale(const Vec& a, const Rat& c) {
  Vec out(a);
  for (auto& x : out) x *= c;
  return out;
}

}  // namespace

void DgLie::set_bracket(int i, int j,
                        const std::vector<std::pair<int, Rat>>& terms) {
  if (i > j) throw std::invalid_argument("set_bracket: use indices i <= j");
  brk[{i, j}] = terms;
}

Vec DgLie::bracket_basis(int i, int j) const {
  if (i > j) {
    Rat s = (deg[i] % 2 != 0 && deg[j] % 2 != 0) ? 1 : -1;
    return vec_scale(bracket_basis(j, i), s);
  }
  Vec out = zero_vec(dim);
  auto it = brk.find({i, j});
  if (it == brk.end()) return out;
  for (const auto& [k, c] : it->second) out[k] += c;
  return out;
}

Vec DgLie::bracket(const Vec& x, const Vec& y) const {
  Vec out = zero_vec(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      Vec b = bracket_basis(i, j);
      for (int k = 0; k < dim; ++k) {
        if (b[k] != 0) out[k] += x[i] * y[j] * b[k];
      }
    }
  }
  return out;
}

std::string DgLie::label(int i) const {
  if (i >= 0 && i < static_cast<int>(labels.size())) return labels[i];
  return "e" + std::to_string(i);
}

DgLie dg_ungraded(const LieAlgebra& g) {
  DgLie l;
  l.dim = g.dim;
  l.deg.assign(g.dim, 0);
  l.labels = g.labels;
  for (const auto& [key, terms] : g.brk) l.brk[key] = terms;
  l.del = QMatrix(g.dim, g.dim);
  return l;
}

DgLie dg_end(const std::vector<int>& dims, const std::vector<QMatrix>& delta) {
  if (delta.size() + 1 != dims.size()) {
    throw std::invalid_argument("dg_end: need one map per adjacent pair");
  }
  for (size_t i = 0; i < delta.size(); ++i) {
    if (delta[i].rows != dims[i + 1] || delta[i].cols != dims[i]) {
      throw std::invalid_argument("dg_end: map shape mismatch");
    }
    if (i + 1 < delta.size() && !mul(delta[i + 1], delta[i]).is_zero()) {
      throw std::invalid_argument("dg_end: maps do not square to zero");
    }
  }
  int total = 0;
  std::vector<int> block;
  for (size_t b = 0; b < dims.size(); ++b) {
    for (int r = 0; r < dims[b]; ++r) block.push_back(static_cast<int>(b));
    total += dims[b];
  }
  QMatrix dbig(total, total);
  int off = 0;
  for (size_t i = 0; i < delta.size(); ++i) {
    int off2 = off + dims[i];
    for (int r = 0; r < delta[i].rows; ++r) {
      for (const auto& [c, v] : delta[i].data[r]) {
        dbig.add_entry(off2 + r, off + c, v);
      }
    }
    off = off2;
  }

  DgLie l;
  l.dim = total * total;
  auto idx = [total](int r, int c) { return r * total + c; };
  l.deg.resize(l.dim);
  l.labels.resize(l.dim);
  for (int r = 0; r < total; ++r) {
    for (int c = 0; c < total; ++c) {
      l.deg[idx(r, c)] = block[r] - block[c];
      l.labels[idx(r, c)] = "E" + std::to_string(r + 1) + std::to_string(c + 1);
    }
  }
  for (int p = 0; p < l.dim; ++p) {
    int rp = p / total, cp = p % total;
    for (int q = p; q < l.dim; ++q) {
      int rq = q / total, cq = q % total;
      std::map<int, Rat> acc;
      if (cp == rq) acc[idx(rp, cq)] += 1;
      if (cq == rp) {
        Rat s = (l.deg[p] % 2 != 0 && l.deg[q] % 2 != 0) ? 1 : -1;
        acc[idx(rq, cp)] += s;
      }
      std::vector<std::pair<int, Rat>> terms;
      for (const auto& [k, v] : acc) {
        if (v != 0) terms.push_back({k, v});
      }
      if (!terms.empty()) l.set_bracket(p, q, terms);
    }
  }
  l.del = QMatrix(l.dim, l.dim);
  for (int p = 0; p < l.dim; ++p) {
    int rp = p / total, cp = p % total;
    for (int r = 0; r < total; ++r) {
      const Rat& v = dbig.at(r, rp);
      if (v != 0) l.del.add_entry(idx(r, cp), p, v);
    }
    Rat s = (l.deg[p] % 2 != 0) ? -1 : 1;
    for (int c = 0; c < total; ++c) {
      const Rat& v = dbig.at(cp, c);
      if (v != 0) l.del.add_entry(idx(rp, c), p, -s * v);
    }
  }
  return l;
}

DgLie dg_self_bracket() {
  DgLie l;
  l.dim = 2;
  l.deg = {1, 2};
  l.labels = {"v", "w"};
  l.set_bracket(0, 0, {{1, Rat(1)}});
  l.del = QMatrix(2, 2);
  return l;
}

DgLie dg_direct_sum(const DgLie& a, const DgLie& b) {
  DgLie l;
  l.dim = a.dim + b.dim;
  l.deg = a.deg;
  l.deg.insert(l.deg.end(), b.deg.begin(), b.deg.end());
  for (int i = 0; i < a.dim; ++i) l.labels.push_back(a.label(i));
  for (int i = 0; i < b.dim; ++i) l.labels.push_back(b.label(i));
  l.brk = a.brk;
  for (const auto& [key, terms] : b.brk) {
    std::vector<std::pair<int, Rat>> shifted;
    for (const auto& [k, c] : terms) shifted.push_back({k + a.dim, c});
    l.brk[{key.first + a.dim, key.second + a.dim}] = shifted;
  }
  l.del = QMatrix(l.dim, l.dim);
  for (int r = 0; r < a.dim; ++r) {
    for (const auto& [c, v] : a.del.data[r]) l.del.add_entry(r, c, v);
  }
  for (int r = 0; r < b.dim; ++r) {
    for (const auto& [c, v] : b.del.data[r]) {
      l.del.add_entry(r + a.dim, c + a.dim, v);
    }
  }
  return l;
}

DgLiePair dg_id_pair(const DgLie& g) {
  return DgLiePair{g, g, QMatrix::identity(g.dim)};
}

DgReport check_dg(const DgLie& g) {
  DgReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  if (g.del.rows != g.dim || g.del.cols != g.dim) {
    fail("differential has the wrong shape");
    return rep;
  }
  if (static_cast<int>(g.deg.size()) != g.dim) {
    fail("degree vector has the wrong length");
    return rep;
  }
  if (!mul(g.del, g.del).is_zero()) fail("differential does not square to zero");
  for (int r = 0; r < g.dim; ++r) {
    for (const auto& [c, v] : g.del.data[r]) {
      if (v != 0 && g.deg[r] != g.deg[c] + 1) {
        fail("differential entry " + g.label(c) + " -> " + g.label(r) +
             " does not raise degree by one");
      }
    }
  }
  for (const auto& [key, terms] : g.brk) {
    if (key.first > key.second) {
      fail("bracket stored with decreasing key");
      continue;
    }
    bool diag_even = key.first == key.second && g.deg[key.first] % 2 == 0;
    for (const auto& [k, c] : terms) {
      if (c == 0) continue;
      if (g.deg[k] != g.deg[key.first] + g.deg[key.second]) {
        fail("bracket [" + g.label(key.first) + ", " + g.label(key.second) +
             "] breaks degree additivity");
      }
      if (diag_even) {
        fail("even generator " + g.label(key.first) +
             " has a nonzero self-bracket");
      }
    }
  }
  for (int i = 0; i < g.dim; ++i) {
    for (int j = 0; j < g.dim; ++j) {
      Vec bij = g.bracket_basis(i, j);
      Vec lhs = matvec(g.del, bij);
      Rat s = (g.deg[i] % 2 != 0) ? -1 : 1;
      Vec rhs = vec_add(g.bracket(get_col(g.del, i), basis_vec(g.dim, j)),
                        vec_scale(g.bracket(basis_vec(g.dim, i), get_col(g.del, j)), s));
      if (lhs != rhs) {
        fail("Leibniz fails on [" + g.label(i) + ", " + g.label(j) + "]");
      }
    }
  }
  for (int i = 0; i < g.dim; ++i) {
    for (int j = 0; j < g.dim; ++j) {
      for (int k = 0; k < g.dim; ++k) {
        Vec lhs = g.bracket(basis_vec(g.dim, i), g.bracket_basis(j, k));
        Rat s = (g.deg[i] % 2 != 0 && g.deg[j] % 2 != 0) ? -1 : 1;
        Vec rhs = vec_add(g.bracket(g.bracket_basis(i, j), basis_vec(g.dim, k)),
                          vec_scale(g.bracket(basis_vec(g.dim, j), g.bracket_basis(i, k)), s));
        if (lhs != rhs) {
          fail("graded Jacobi fails on (" + g.label(i) + ", " + g.label(j) +
               ", " + g.label(k) + ")");
        }
      }
    }
  }
  return rep;
}

DgReport check_dg(const DgLiePair& p) {
  DgReport rep;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.failures.push_back(s);
  };
  DgReport rg = check_dg(p.g);
  for (const auto& s : rg.failures) fail("g: " + s);
  DgReport rh = check_dg(p.h);
  for (const auto& s : rh.failures) fail("h: " + s);
  if (p.i_map.rows != p.h.dim || p.i_map.cols != p.g.dim) {
    fail("i has the wrong shape");
    return rep;
  }
  if (!(mul(p.h.del, p.i_map) == mul(p.i_map, p.g.del))) {
    fail("i is not a chain map");
  }
  for (int c = 0; c < p.g.dim; ++c) {
    for (int r = 0; r < p.h.dim; ++r) {
      if (p.i_map.at(r, c) != 0 && p.h.deg[r] != p.g.deg[c]) {
        fail("i does not preserve degree on " + p.g.label(c));
      }
    }
  }
  for (int i = 0; i < p.g.dim; ++i) {
    for (int j = i; j < p.g.dim; ++j) {
      Vec lhs = matvec(p.i_map, p.g.bracket_basis(i, j));
      Vec rhs = p.h.bracket(get_col(p.i_map, i), get_col(p.i_map, j));
      if (lhs != rhs) {
        fail("i fails to carry [" + p.g.label(i) + ", " + p.g.label(j) +
             "] to the bracket of the images");
      }
    }
  }
  return rep;
}

QMatrix melt_bracket(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x,
                     const QMatrix& y) {
  QMatrix out(l.dim, a.dim());
  for (int i = 0; i < x.rows; ++i) {
    for (const auto& [u, cu] : x.data[i]) {
      if (cu == 0) continue;
      for (int j = 0; j < y.rows; ++j) {
        for (const auto& [v, cv] : y.data[j]) {
          if (cv == 0) continue;
          int w = a.mono_mul(u, v);
          if (w < 0) continue;
          Vec b = l.bracket_basis(i, j);
          for (int k = 0; k < l.dim; ++k) {
            if (b[k] != 0) out.add_entry(k, w, cu * cv * b[k]);
          }
        }
      }
    }
  }
  return out;
}

namespace {

void require_degree(const DgLie& l, const QMatrix& x, int d, const char* what) {
  if (x.rows != l.dim) {
    throw std::invalid_argument(std::string(what) + " has the wrong row count");
  }
  for (int r = 0; r < x.rows; ++r) {
    if (l.deg[r] == d) continue;
    for (const auto& [c, v] : x.data[r]) {
      if (v != 0) {
        throw std::invalid_argument(std::string(what) +
                                    " is not concentrated in degree " +
                                    std::to_string(d));
      }
    }
  }
}

}  // namespace

QMatrix mc_defect(const DeformationDatum& d) {
  require_degree(d.pair.g, d.phi, 1, "phi");
  QMatrix br = melt_bracket(d.pair.g, d.base, d.phi, d.phi);
  return add(mul(d.pair.g.del, d.phi), scale(br, Rat(1, 2)));
}

QMatrix compat_defect(const DeformationDatum& d) {
  require_degree(d.pair.g, d.phi, 1, "phi");
  require_degree(d.pair.h, d.psi, 0, "psi");
  const DgLie& h = d.pair.h;
  std::vector<Rat> c = bernoulli_coeffs(d.base.exponent);
  QMatrix neg_psi = scale(d.psi, Rat(-1));
  QMatrix cur = mul(d.pair.i_map, d.phi);
  QMatrix acc(h.dim, d.base.dim());
  for (int n = 0; n <= d.base.exponent; ++n) {
    if (cur.is_zero()) break;
    acc = add(acc, scale(cur, c[n]));
    cur = melt_bracket(h, d.base, neg_psi, cur);
  }
  return sub(mul(h.del, d.psi), acc);
}

namespace {

// Coordinates of the r-th power of x on the multiset basis of Sym^r, in
// lexicographic multiset order.
Vec power_coords(const Vec& x, int r) {
  const int n = static_cast<int>(x.size());
  std::vector<Rat> out;
  std::vector<int> mono;
  std::function<void(int, int, Rat, long)> rec = [&](int start, int remaining,
                                                     Rat coeff, long run) {
    if (remaining == 0) {
      out.push_back(coeff);
      return;
    }
    for (int l = start; l < n; ++l) {
      long r2 = (!mono.empty() && mono.back() == l) ? run + 1 : 1;
      Rat c2 = coeff * x[l] * Rat(static_cast<int>(mono.size()) + 1) / Rat(r2);
      mono.push_back(l);
      rec(l, remaining - 1, c2, r2);
      mono.pop_back();
    }
  };
  rec(0, r, Rat(1), 0);
  return out;
}

}  // namespace

KsVector ks_vector(const DeformationDatum& d, int m_order) {
  KsVector out;
  out.m_order = m_order;
  out.mc = mc_defect(d);
  out.compat = compat_defect(d);
  out.defects_ok = out.mc.is_zero() && out.compat.is_zero();
  const int na = d.base.dim();
  for (int i = 0; i < d.pair.g.dim; ++i) {
    if (d.pair.g.deg[i] != 1) continue;
    for (int u = 0; u < na; ++u) out.vg_basis.push_back({i, u});
  }
  for (int i = 0; i < d.pair.h.dim; ++i) {
    if (d.pair.h.deg[i] != 0) continue;
    for (int u = 0; u < na; ++u) out.vh_basis.push_back({i, u});
  }
  Vec phi_c, psi_c;
  for (const auto& [i, u] : out.vg_basis) phi_c.push_back(d.phi.at(i, u));
  for (const auto& [i, u] : out.vh_basis) psi_c.push_back(-d.psi.at(i, u));
  for (int r = 0; r <= m_order; ++r) {
    for (int n = 0; r + n <= m_order; ++n) {
      if (r + n == 0) continue;
      Vec pg = power_coords(phi_c, r);
      Vec ph = power_coords(psi_c, n);
      Vec comp(pg.size() * ph.size(), Rat(0));
      for (size_t ig = 0; ig < pg.size(); ++ig) {
        for (size_t ih = 0; ih < ph.size(); ++ih) {
          comp[ig * ph.size() + ih] = pg[ig] * ph[ih];
        }
      }
      out.comp[{r, n}] = std::move(comp);
    }
  }
  return out;
}

QMatrix deligne_phi(const DgLie& g, const ArtinAlgebra& base, const QMatrix& s) {
  require_degree(g, s, 0, "s");
  QMatrix neg_s = scale(s, Rat(-1));
  QMatrix cur = mul(g.del, s);
  QMatrix acc(g.dim, base.dim());
  Rat fact(1);
  for (int k = 0; k <= base.exponent; ++k) {
    if (cur.is_zero()) break;
    fact *= Rat(k + 1);
    acc = add(acc, scale(cur, Rat(1) / fact));
    cur = melt_bracket(g, base, neg_s, cur);
  }
  return acc;
}

QMatrix gauge_transform(const DgLie& g, const ArtinAlgebra& base,
                        const QMatrix& phi, const QMatrix& mu) {
  require_degree(g, phi, 1, "phi");
  require_degree(g, mu, 0, "mu");
  QMatrix neg_mu = scale(mu, Rat(-1));
  QMatrix out(g.dim, base.dim());
  QMatrix cur = phi;
  Rat fact(1);
  for (int k = 0; k <= base.exponent; ++k) {
    if (cur.is_zero()) break;
    if (k > 0) fact *= Rat(k);
    out = add(out, scale(cur, Rat(1) / fact));
    cur = melt_bracket(g, base, neg_mu, cur);
  }
  return add(out, deligne_phi(g, base, mu));
}

namespace {

// First position violating the PBW normal form: a strictly decreasing
// adjacent pair, or an equal adjacent pair in odd degree.
int first_violation(const DgLie& l, const std::vector<int>& w) {
  for (size_t p = 0; p + 1 < w.size(); ++p) {
    if (w[p] > w[p + 1]) return static_cast<int>(p);
    if (w[p] == w[p + 1] && l.deg[w[p]] % 2 != 0) return static_cast<int>(p);
  }
  return -1;
}

EnvElement normalized(const DgLie& l, int word_cap, const Rat& constant,
                      std::vector<std::tuple<std::vector<int>, int, Rat>> work) {
  EnvElement out;
  out.word_cap = word_cap;
  out.constant = constant;
  while (!work.empty()) {
    auto [w, u, c] = std::move(work.back());
    work.pop_back();
    if (c == 0) continue;
    if (w.empty()) {
      out.constant += c;
      continue;
    }
    int p = first_violation(l, w);
    if (p < 0) {
      if (static_cast<int>(w.size()) <= word_cap) {
        out.terms[{w, u}] += c;
      }
      continue;
    }
    int y = w[p], x = w[p + 1];
    if (y > x) {
      Rat s = (l.deg[y] % 2 != 0 && l.deg[x] % 2 != 0) ? -1 : 1;
      std::vector<int> w2(w);
      std::swap(w2[p], w2[p + 1]);
      work.push_back({std::move(w2), u, c * s});
      Vec br = l.bracket_basis(y, x);
      for (int k = 0; k < l.dim; ++k) {
        if (br[k] == 0) continue;
        std::vector<int> w3(w);
        w3.erase(w3.begin() + p + 1);
        w3[p] = k;
        work.push_back({std::move(w3), u, c * br[k]});
      }
    } else {
      Vec br = l.bracket_basis(y, y);
      for (int k = 0; k < l.dim; ++k) {
        if (br[k] == 0) continue;
        std::vector<int> w3(w);
        w3.erase(w3.begin() + p + 1);
        w3[p] = k;
        work.push_back({std::move(w3), u, c * br[k] / 2});
      }
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second == 0) {
      it = out.terms.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

}  // namespace

bool env_equal(const EnvElement& u, const EnvElement& v) {
  return u.constant == v.constant && u.terms == v.terms;
}

EnvElement env_from(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x) {
  if (x.rows != l.dim || x.cols != a.dim()) {
    throw std::invalid_argument("env_from: shape mismatch");
  }
  EnvElement out;
  out.word_cap = a.exponent;
  for (int i = 0; i < x.rows; ++i) {
    for (const auto& [u, c] : x.data[i]) {
      if (c != 0) out.terms[{{i}, u}] = c;
    }
  }
  return out;
}

EnvElement env_scale(const EnvElement& u, const Rat& c) {
  EnvElement out;
  out.word_cap = u.word_cap;
  if (c == 0) return out;
  out.constant = u.constant * c;
  for (const auto& [key, v] : u.terms) out.terms[key] = v * c;
  return out;
}

EnvElement env_add(const EnvElement& u, const EnvElement& v) {
  EnvElement out;
  out.word_cap = std::min(u.word_cap, v.word_cap);
  out.constant = u.constant + v.constant;
  out.terms = u.terms;
  for (const auto& [key, c] : v.terms) out.terms[key] += c;
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (it->second == 0) {
      it = out.terms.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

EnvElement env_mul(const DgLie& l, const ArtinAlgebra& a, const EnvElement& u,
                   const EnvElement& v) {
  int cap = std::min(u.word_cap, v.word_cap);
  std::vector<std::tuple<std::vector<int>, int, Rat>> raw;
  if (u.constant != 0) {
    for (const auto& [key, c] : v.terms) {
      raw.push_back({key.first, key.second, u.constant * c});
    }
  }
  if (v.constant != 0) {
    for (const auto& [key, c] : u.terms) {
      raw.push_back({key.first, key.second, v.constant * c});
    }
  }
  for (const auto& [ku, cu] : u.terms) {
    for (const auto& [kv, cv] : v.terms) {
      int w = a.mono_mul(ku.second, kv.second);
      if (w < 0) continue;
      std::vector<int> word(ku.first);
      word.insert(word.end(), kv.first.begin(), kv.first.end());
      raw.push_back({std::move(word), w, cu * cv});
    }
  }
  return normalized(l, cap, u.constant * v.constant, std::move(raw));
}

EnvElement env_del(const DgLie& l, const ArtinAlgebra& a, const EnvElement& u) {
  (void)a;
  std::vector<std::tuple<std::vector<int>, int, Rat>> raw;
  for (const auto& [key, c] : u.terms) {
    const std::vector<int>& w = key.first;
    int degsum = 0;
    for (size_t j = 0; j < w.size(); ++j) {
      Rat s = (degsum % 2 != 0) ? -1 : 1;
      Vec dcol = get_col(l.del, w[j]);
      for (int k = 0; k < l.dim; ++k) {
        if (dcol[k] == 0) continue;
        std::vector<int> w2(w);
        w2[j] = k;
        raw.push_back({std::move(w2), key.second, c * s * dcol[k]});
      }
      degsum += l.deg[w[j]];
    }
  }
  return normalized(l, u.word_cap, Rat(0), std::move(raw));
}

EnvElement env_exp(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x) {
  EnvElement e1 = env_from(l, a, x);
  EnvElement acc;
  acc.word_cap = a.exponent;
  acc.constant = 1;
  acc = env_add(acc, e1);
  EnvElement pw = e1;
  for (int k = 2; k <= a.exponent; ++k) {
    if (pw.is_zero()) break;
    pw = env_scale(env_mul(l, a, pw, e1), Rat(1, k));
    acc = env_add(acc, pw);
  }
  return acc;
}

QMatrix env_log(const DgLie& l, const ArtinAlgebra& a, const EnvElement& u) {
  if (u.constant != 1) {
    throw std::invalid_argument("env_log: constant term must be 1");
  }
  EnvElement nu = u;
  nu.constant = 0;
  EnvElement acc = nu;
  EnvElement pw = nu;
  for (int k = 2; k <= a.exponent; ++k) {
    if (pw.is_zero()) break;
    pw = env_mul(l, a, pw, nu);
    acc = env_add(acc, env_scale(pw, (k % 2 == 0) ? Rat(-1, k) : Rat(1, k)));
  }
  QMatrix out(l.dim, a.dim());
  for (const auto& [key, c] : acc.terms) {
    if (key.first.size() != 1) {
      throw std::domain_error("env_log: logarithm is not in the Lie algebra");
    }
    out.add_entry(key.first[0], key.second, c);
  }
  return out;
}

QMatrix bch(const DgLie& l, const ArtinAlgebra& a, const QMatrix& x,
            const QMatrix& y) {
  return env_log(l, a, env_mul(l, a, env_exp(l, a, x), env_exp(l, a, y)));
}

IntertwineReport verify_exp_intertwine(const DeformationDatum& d) {
  if (!mc_defect(d).is_zero()) {
    throw std::invalid_argument("verify_exp_intertwine: phi is not Maurer-Cartan");
  }
  if (!compat_defect(d).is_zero()) {
    throw std::invalid_argument("verify_exp_intertwine: (phi, psi) is not compatible");
  }
  const DgLie& h = d.pair.h;
  IntertwineReport rep;
  rep.convention =
      "d(exp(psi)) = exp(psi) i(phi); d(exp(-psi)) = -i(phi) exp(-psi)";
  EnvElement f = env_from(h, d.base, mul(d.pair.i_map, d.phi));
  EnvElement e1 = env_exp(h, d.base, d.psi);
  if (!env_equal(env_del(h, d.base, e1), env_mul(h, d.base, e1, f))) {
    rep.ok = false;
    rep.failures.push_back("d(exp(psi)) != exp(psi) i(phi)");
  }
  EnvElement e2 = env_exp(h, d.base, scale(d.psi, Rat(-1)));
  if (!env_equal(env_del(h, d.base, e2),
                 env_scale(env_mul(h, d.base, f, e2), Rat(-1)))) {
    rep.ok = false;
    rep.failures.push_back("d(exp(-psi)) != -i(phi) exp(-psi)");
  }
  return rep;
}

Lemma113Report lemma113_check(const LieAtom& atom, const ArtinAlgebra& a,
                              int samples, std::mt19937_64& rng) {
  if (!atom.hull) {
    throw std::invalid_argument("lemma113_check: atom has no hull");
  }
  Lemma113Report rep;
  rep.samples = samples;
  TensorAtom t = tensor_artin(atom, a);
  const Hull& hull = *atom.hull;
  DgLie l = dg_ungraded(hull.alg);
  const int na = a.dim();
  std::uniform_int_distribution<int> small(-2, 2);
  for (int s = 0; s < samples; ++s) {
    QMatrix x(hull.alg.dim, na);
    for (int gi = 0; gi < atom.g.dim; ++gi) {
      Vec col = get_col(hull.embed_g, gi);
      for (int u = 0; u < na; ++u) {
        int c = small(rng);
        if (c == 0) continue;
        for (int r = 0; r < hull.alg.dim; ++r) {
          if (col[r] != 0) x.add_entry(r, u, col[r] * Rat(c));
        }
      }
    }
    QMatrix v(hull.alg.dim, na);
    for (int j = 0; j < t.closure.cols; ++j) {
      int c = small(rng);
      if (c == 0) continue;
      Vec col = get_col(t.closure, j);
      for (int f = 0; f < static_cast<int>(col.size()); ++f) {
        if (col[f] != 0) v.add_entry(f / na, f % na, col[f] * Rat(c));
      }
    }
    for (int order = 0; order < 2; ++order) {
      QMatrix z = order == 0 ? bch(l, a, x, v) : bch(l, a, v, x);
      Vec flat(hull.alg.dim * na, Rat(0));
      for (int r = 0; r < z.rows; ++r) {
        for (const auto& [u, c] : z.data[r]) flat[r * na + u] = c;
      }
      if (!in_colspace(t.closure, flat)) {
        rep.ok = false;
        rep.failures.push_back(
            "sample " + std::to_string(s) + ": bch" +
            (order == 0 ? "(a, v)" : "(v, a)") + " leaves the closure");
      }
    }
  }
  return rep;
}

}  // namespace jb
