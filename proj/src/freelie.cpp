#include "jb/freelie.hpp"

#include <algorithm>
#include <stdexcept>

#include "jb/series.hpp"

namespace jb {

void AssocElt::add(const std::string& w, const Rat& c) {
  auto it = terms.find(w);
  if (it == terms.end()) {
    if (c != 0) terms.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

AssocElt assoc_add(const AssocElt& x, const AssocElt& y) {
  AssocElt r = x;
  for (const auto& [w, c] : y.terms) r.add(w, c);
  return r;
}

AssocElt assoc_sub(const AssocElt& x, const AssocElt& y) {
  AssocElt r = x;
  for (const auto& [w, c] : y.terms) r.add(w, -c);
  return r;
}

AssocElt assoc_scale(const AssocElt& x, const Rat& c) {
  AssocElt r;
  if (c == 0) return r;
  for (const auto& [w, v] : x.terms) r.terms.emplace(w, v * c);
  return r;
}

AssocElt assoc_mul(const AssocElt& x, const AssocElt& y, int cap) {
  AssocElt r;
  for (const auto& [wx, cx] : x.terms) {
    for (const auto& [wy, cy] : y.terms) {
      if (static_cast<int>(wx.size() + wy.size()) > cap) continue;
      r.add(wx + wy, cx * cy);
    }
  }
  return r;
}

AssocElt assoc_bracket(const AssocElt& x, const AssocElt& y, int cap) {
  return assoc_sub(assoc_mul(x, y, cap), assoc_mul(y, x, cap));
}

AssocElt assoc_ad_pow(const AssocElt& x, const AssocElt& y, int m, int cap) {
  AssocElt r = x;
  for (int t = 0; t < m; ++t) r = assoc_bracket(r, y, cap);
  return r;
}

int FreeNilpotentLie::dim_of_degree(int d) const {
  if (d < 1 || d > cls) return 0;
  return deg_begin[d + 1] - deg_begin[d];
}

AssocElt FreeNilpotentLie::bracket(const AssocElt& x, const AssocElt& y) const {
  return assoc_bracket(x, y, cls);
}

std::optional<std::map<int, Rat>> FreeNilpotentLie::hall_coords(
    const AssocElt& x) const {
  std::map<int, Rat> coords;
  // Split by multidegree; each block is an independent linear solve.
  std::map<std::vector<int>, AssocElt> blocks;
  for (const auto& [w, c] : x.terms) {
    std::vector<int> md(ngens, 0);
    for (char ch : w) md[ch - 'a']++;
    blocks[md].terms.emplace(w, c);
  }
  for (const auto& [md, part] : blocks) {
    std::vector<int> cand;
    for (int k = 0; k < dim(); ++k) {
      if (basis[k].multidegree == md) cand.push_back(k);
    }
    if (cand.empty()) return std::nullopt;
    std::map<std::string, int> word_row;
    for (int k : cand) {
      for (const auto& [w, c] : basis[k].rep.terms) {
        (void)c;
        word_row.emplace(w, static_cast<int>(word_row.size()));
      }
    }
    for (const auto& [w, c] : part.terms) {
      (void)c;
      if (!word_row.count(w)) return std::nullopt;
    }
    QMatrix m(static_cast<int>(word_row.size()), static_cast<int>(cand.size()));
    for (size_t j = 0; j < cand.size(); ++j) {
      for (const auto& [w, c] : basis[cand[j]].rep.terms) {
        m.add_entry(word_row[w], static_cast<int>(j), c);
      }
    }
    Vec b(word_row.size(), Rat(0));
    for (const auto& [w, c] : part.terms) b[word_row[w]] = c;
    auto sol = solve(m, b);
    if (!sol) return std::nullopt;
    for (size_t j = 0; j < cand.size(); ++j) {
      if ((*sol)[j] != 0) coords[cand[j]] = (*sol)[j];
    }
  }
  return coords;
}

LieAlgebra FreeNilpotentLie::to_lie_algebra() const {
  LieAlgebra g;
  g.dim = dim();
  for (const HallElt& e : basis) g.labels.push_back(e.name);
  for (int i = 0; i < g.dim; ++i) {
    for (int j = i + 1; j < g.dim; ++j) {
      if (basis[i].degree + basis[j].degree > cls) continue;
      AssocElt b = bracket(basis[i].rep, basis[j].rep);
      if (b.is_zero()) continue;
      auto coords = hall_coords(b);
      if (!coords) throw std::logic_error("hall basis failed to span a bracket");
      std::vector<std::pair<int, Rat>> terms(coords->begin(), coords->end());
      g.set_bracket(i, j, terms);
    }
  }
  return g;
}

std::vector<Vec> FreeNilpotentLie::eval_hom(
    const LieAlgebra& target, const std::vector<Vec>& gen_images) const {
  if (static_cast<int>(gen_images.size()) != ngens) {
    throw std::invalid_argument("eval_hom: need one image per generator");
  }
  std::vector<Vec> img;
  for (const HallElt& e : basis) {
    if (e.gen >= 0) {
      img.push_back(gen_images[e.gen]);
    } else {
      img.push_back(target.bracket(img[e.left], img[e.right]));
    }
  }
  return img;
}

FreeNilpotentLie free_nilpotent(const std::vector<std::string>& gens, int cls) {
  if (cls < 1) throw std::invalid_argument("free_nilpotent: class must be >= 1");
  if (gens.empty() || gens.size() > 26) {
    throw std::invalid_argument("free_nilpotent: 1..26 generators");
  }
  FreeNilpotentLie f;
  f.ngens = static_cast<int>(gens.size());
  f.cls = cls;
  f.gen_labels = gens;
  f.deg_begin.assign(cls + 2, 0);

  for (int i = 0; i < f.ngens; ++i) {
    HallElt e;
    e.gen = i;
    e.degree = 1;
    e.multidegree.assign(f.ngens, 0);
    e.multidegree[i] = 1;
    e.name = gens[i];
    e.rep.add(std::string(1, static_cast<char>('a' + i)), Rat(1));
    f.basis.push_back(std::move(e));
  }
  f.deg_begin[1] = 0;
  f.deg_begin[2] = f.ngens;

  // Hall family: [u, v] is a basis element iff u > v in creation order and,
  // when u = [x, y], additionally y <= v.
  for (int d = 2; d <= cls; ++d) {
    for (int v = 0; v < f.deg_begin[d]; ++v) {
      int dv = f.basis[v].degree;
      int du = d - dv;
      if (du < 1 || du > cls) continue;
      for (int u = f.deg_begin[du]; u < f.deg_begin[du + 1]; ++u) {
        if (u <= v) continue;
        if (f.basis[u].gen < 0 && f.basis[u].right > v) continue;
        HallElt e;
        e.left = u;
        e.right = v;
        e.degree = d;
        e.multidegree = f.basis[u].multidegree;
        for (int k = 0; k < f.ngens; ++k) {
          e.multidegree[k] += f.basis[v].multidegree[k];
        }
        e.name = "[" + f.basis[u].name + "," + f.basis[v].name + "]";
        e.rep = assoc_bracket(f.basis[u].rep, f.basis[v].rep, cls);
        f.basis.push_back(std::move(e));
      }
    }
    f.deg_begin[d + 1] = static_cast<int>(f.basis.size());
  }
  return f;
}

long witt_dim(int q, int d) {
  // (1/d) sum_{e | d} mu(e) q^(d/e)
  auto mobius = [](int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
      }
    }
    if (n > 1) result = -result;
    return result;
  };
  long total = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    int mu = mobius(e);
    if (mu == 0) continue;
    long pw = 1;
    for (int t = 0; t < d / e; ++t) pw *= q;
    total += mu * pw;
  }
  return total / d;
}

namespace {

AssocElt letter(char c) {
  AssocElt e;
  e.add(std::string(1, c), Rat(1));
  return e;
}

// f(a1, a2) - f(a2, a1) for f already evaluated on both argument orders.
AssocElt alternate(const AssocElt& f12, const AssocElt& f21) {
  return assoc_sub(f12, f21);
}

}  // namespace

FreeIdentityReport verify_lemma01(int m) {
  if (m < 1) throw std::invalid_argument("verify_lemma01: m must be >= 1");
  const int cap = m + 2;
  AssocElt a1 = letter('a'), a2 = letter('b'), b = letter('c');

  FreeIdentityReport rep;
  rep.m = m;

  AssocElt lhs = alternate(
      assoc_bracket(a1, assoc_ad_pow(a2, b, m, cap), cap),
      assoc_bracket(a2, assoc_ad_pow(a1, b, m, cap), cap));

  AssocElt rhs;
  std::string coeffs = "coefficients:";
  for (int i = 0; 2 * i <= m; ++i) {
    Rat c = binom(m - i - 1, i) + 2 * binom(m - i - 1, i - 1);
    if (i % 2 == 1) c = -c;
    coeffs += " c(" + std::to_string(i) + "," + std::to_string(m) +
              ") = " + rat_str(c);
    if (c == 0) continue;
    AssocElt term = assoc_ad_pow(
        assoc_bracket(assoc_ad_pow(a1, b, i, cap), assoc_ad_pow(a2, b, i, cap),
                      cap),
        b, m - 2 * i, cap);
    rhs = assoc_add(rhs, assoc_scale(term, c));
  }
  rep.notes.push_back(coeffs);

  AssocElt defect = assoc_sub(lhs, rhs);
  rep.defect_terms = static_cast<long>(defect.terms.size());
  rep.ok = defect.is_zero();
  return rep;
}

FreeIdentityReport lemma01_m0_report() {
  const int cap = 2;
  AssocElt a1 = letter('a'), a2 = letter('b');
  AssocElt alt = alternate(assoc_bracket(a1, a2, cap), assoc_bracket(a2, a1, cap));
  AssocElt twice = assoc_scale(assoc_bracket(a1, a2, cap), Rat(2));
  AssocElt once = assoc_bracket(a1, a2, cap);

  FreeIdentityReport rep;
  rep.m = 0;
  rep.ok = assoc_sub(alt, twice).is_zero();
  rep.defect_terms =
      static_cast<long>(assoc_sub(alt, once).terms.size());
  rep.notes.push_back(
      "alternation equals 2[a1,a2]; the displayed sum at m = 0 gives "
      "1[a1,a2], so the displayed form needs m >= 1 (c(0,0) = 2)");
  return rep;
}

FreeIdentityReport verify_eq124(int m) {
  if (m < 1) throw std::invalid_argument("verify_eq124: m must be >= 1");
  const int cap = m + 1;
  AssocElt a1 = letter('a'), a2 = letter('b'), b = letter('c');
  std::vector<Rat> c = bernoulli_coeffs(m);

  FreeIdentityReport rep;
  rep.m = m;

  AssocElt total;
  AssocElt witness_base =
      assoc_ad_pow(assoc_bracket(a1, a2, cap), b, m - 1, cap);
  std::string witness = "contributions on [a1,a2]_@b^" + std::to_string(m - 1) +
                        ":";
  bool proportional = true;
  Rat wit_sum(0);
  for (int i = 0; i <= m - 1; ++i) {
    for (int j = 0; i + j <= m - 1; ++j) {
      Rat coeff = c[i] * c[m - i];
      if (coeff == 0) continue;
      AssocElt inner = alternate(
          assoc_bracket(assoc_ad_pow(a1, b, j, cap), assoc_ad_pow(a2, b, i, cap),
                        cap),
          assoc_bracket(assoc_ad_pow(a2, b, j, cap), assoc_ad_pow(a1, b, i, cap),
                        cap));
      AssocElt term =
          assoc_scale(assoc_ad_pow(inner, b, m - 1 - i - j, cap), coeff);
      total = assoc_add(total, term);
      // When the term is a multiple of [a1,a2]_@b^{m-1}, record the ratio.
      if (proportional && !term.is_zero()) {
        const auto& [w0, v0] = *witness_base.terms.begin();
        auto it = term.terms.find(w0);
        if (it == term.terms.end()) {
          proportional = false;
        } else {
          Rat ratio = it->second / v0;
          if (assoc_sub(term, assoc_scale(witness_base, ratio)).is_zero()) {
            witness += " (" + std::to_string(i) + "," + std::to_string(j) +
                       ") -> " + rat_str(ratio);
            wit_sum += ratio;
          } else {
            proportional = false;
          }
        }
      }
    }
  }
  total = assoc_add(total, assoc_scale(witness_base, c[m - 1]));
  if (proportional) {
    witness += "; sum " + rat_str(wit_sum) + " cancels c_" +
               std::to_string(m - 1) + " = " + rat_str(c[m - 1]);
    rep.notes.push_back(witness);
  }

  rep.defect_terms = static_cast<long>(total.terms.size());
  rep.ok = total.is_zero();
  return rep;
}

}  // namespace jb
