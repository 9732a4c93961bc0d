#include "jb/artin.hpp"

#include <algorithm>
#include <stdexcept>

namespace jb {

namespace {

bool divides(const std::vector<int>& a, const std::vector<int>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

void enumerate(std::vector<int>& exp, size_t pos, int remaining,
               std::vector<std::vector<int>>& out) {
  if (pos + 1 == exp.size()) {
    for (int e = 0; e <= remaining; ++e) {
      exp[pos] = e;
      out.push_back(exp);
    }
    exp[pos] = 0;
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    exp[pos] = e;
    enumerate(exp, pos + 1, remaining - e, out);
  }
  exp[pos] = 0;
}

}  // namespace

int ArtinAlgebra::degree(int i) const {
  int d = 0;
  for (int e : basis[i]) d += e;
  return d;
}

std::string ArtinAlgebra::mono_str(int i) const {
  std::string s;
  for (size_t v = 0; v < vars.size(); ++v) {
    int e = basis[i][v];
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[v];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

int ArtinAlgebra::mono_mul(int i, int j) const {
  std::vector<int> prod(vars.size());
  for (size_t v = 0; v < vars.size(); ++v) prod[v] = basis[i][v] + basis[j][v];
  auto it = index.find(prod);
  return it == index.end() ? -1 : it->second;
}

ArtinAlgebra artin(const std::vector<std::string>& vars, int max_total_degree,
                   const std::vector<std::vector<int>>& zero_monomials) {
  if (max_total_degree < 0) throw std::invalid_argument("artin: negative degree cap");
  for (const auto& z : zero_monomials) {
    if (z.size() != vars.size()) {
      throw std::invalid_argument("artin: zero monomial arity mismatch");
    }
  }
  ArtinAlgebra a;
  a.vars = vars;
  a.max_total_degree = max_total_degree;

  std::vector<std::vector<int>> all;
  if (!vars.empty()) {
    std::vector<int> exp(vars.size(), 0);
    enumerate(exp, 0, max_total_degree, all);
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const std::vector<int>& x, const std::vector<int>& y) {
                     int dx = 0, dy = 0;
                     for (int e : x) dx += e;
                     for (int e : y) dy += e;
                     if (dx != dy) return dx < dy;
                     return x < y;
                   });
  for (const auto& e : all) {
    int deg = 0;
    for (int c : e) deg += c;
    if (deg == 0) continue;
    bool dead = false;
    for (const auto& z : zero_monomials) {
      if (divides(z, e)) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    a.index[e] = static_cast<int>(a.basis.size());
    a.basis.push_back(e);
    a.exponent = std::max(a.exponent, deg);
  }
  return a;
}

}  // namespace jb
