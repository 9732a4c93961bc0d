#include <jb/series.hpp>

#include <algorithm>
#include <stdexcept>

namespace jb {

namespace {

Rat factorial(int n) {
  Rat f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// c_n for indices outside [0, size) count as zero.
Rat cz(const std::vector<Rat>& c, long n) {
  if (n < 0 || n >= static_cast<long>(c.size())) return Rat(0);
  return c[n];
}

Rat int_pow(long base, int exp) {
  Rat r(1);
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

bool PowerSeries::is_zero() const { return first_nonzero() < 0; }

int PowerSeries::first_nonzero() const {
  for (int n = 0; n <= order; ++n) {
    if (c[n] != 0) return n;
  }
  return -1;
}

PowerSeries PowerSeries::truncated(int ord) const {
  PowerSeries out(std::min(ord, order));
  for (int n = 0; n <= out.order; ++n) out.c[n] = c[n];
  return out;
}

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out(std::min(a.order, b.order));
  for (int n = 0; n <= out.order; ++n) out.c[n] = a.c[n] + b.c[n];
  return out;
}

PowerSeries ps_sub(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out(std::min(a.order, b.order));
  for (int n = 0; n <= out.order; ++n) out.c[n] = a.c[n] - b.c[n];
  return out;
}

PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b) {
  PowerSeries out(std::min(a.order, b.order));
  for (int n = 0; n <= out.order; ++n) {
    for (int i = 0; i <= n; ++i) out.c[n] += a.c[i] * b.c[n - i];
  }
  return out;
}

PowerSeries ps_scale(const PowerSeries& a, const Rat& s) {
  PowerSeries out(a.order);
  for (int n = 0; n <= a.order; ++n) out.c[n] = a.c[n] * s;
  return out;
}

PowerSeries ps_shift(const PowerSeries& a, int k) {
  PowerSeries out(a.order + k);
  for (int n = 0; n <= a.order; ++n) out.c[n + k] = a.c[n];
  return out;
}

PowerSeries ps_derivative(const PowerSeries& a) {
  if (a.order == 0) return PowerSeries(0);
  PowerSeries out(a.order - 1);
  for (int n = 1; n <= a.order; ++n) out.c[n - 1] = a.c[n] * n;
  return out;
}

std::vector<Rat> bernoulli_coeffs(int n) {
  // (e^x - 1)/x has coefficients 1/(k+1)!; invert by the unit-series
  // recurrence c_0 = 1, c_k = -sum_{j>=1} a_j c_{k-j}.
  std::vector<Rat> a(n + 1);
  for (int k = 0; k <= n; ++k) a[k] = 1 / factorial(k + 1);
  std::vector<Rat> c(n + 1);
  c[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rat s(0);
    for (int j = 1; j <= k; ++j) s += a[j] * c[k - j];
    c[k] = -s;
  }
  return c;
}

std::vector<Rat> bernoulli_coeffs_double_sum(int n) {
  std::vector<Rat> c(n + 1);
  c[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rat s(0);
    Rat nfac = factorial(k);
    for (int m = 1; m <= k; ++m) {
      for (int i = 1; i <= m; ++i) {
        Rat term = binom(m, i) * int_pow(i, k) / (Rat(m + 1) * nfac);
        if (i % 2 != 0) term = -term;
        s += term;
      }
    }
    c[k] = s;
  }
  return c;
}

PowerSeries series(SeriesKind kind, int order) {
  PowerSeries out(order);
  std::vector<Rat> c = bernoulli_coeffs(order);
  for (int n = 0; n <= order; ++n) out.c[n] = c[n];
  if (kind == SeriesKind::B && order >= 1) out.c[1] += Rat(1, 2);
  return out;
}

PowerSeries apply_Dk(const PowerSeries& f, int k, long r) {
  if (k < 0) throw std::invalid_argument("apply_Dk: k must be >= 0");
  if (k == 0) return f;
  PowerSeries out(f.order);
  for (int i = 0; i <= f.order; ++i) {
    Rat m = binom(i - 1 - r, k);
    if (k % 2 != 0) m = -m;
    out.c[i] = m * f.c[i];
  }
  return out;
}

namespace {

void finish(IdentityCheck& chk, const PowerSeries& defect, int order) {
  chk.defect = defect.truncated(order);
  chk.first_bad = chk.defect.first_nonzero();
  chk.ok = chk.first_bad < 0;
  if (!chk.ok) chk.first_bad_value = chk.defect.c[chk.first_bad];
}

std::string describe_first_bad(const PowerSeries& defect) {
  int fb = defect.first_nonzero();
  if (fb < 0) return "exact";
  return "first nonzero defect at index " + std::to_string(fb) + " = " +
         rat_str(defect.c[fb]);
}

IdentityCheck check_eq04(int order) {
  IdentityCheck chk;
  std::vector<Rat> c = bernoulli_coeffs(order);
  std::vector<Rat> d = bernoulli_coeffs_double_sum(order);
  PowerSeries defect(order);
  for (int n = 1; n <= order; ++n) defect.c[n] = c[n] - d[n];
  finish(chk, defect, order);
  return chk;
}

IdentityCheck check_eq05(int order) {
  IdentityCheck chk;
  PowerSeries C = series(SeriesKind::C, order + 2);
  // C^2 + xC' - (1-x)C
  PowerSeries lhs = ps_mul(C, C);
  PowerSeries xdC = ps_shift(ps_derivative(C), 1);
  PowerSeries rhs = ps_sub(C, ps_shift(C, 1));
  finish(chk, ps_sub(ps_add(lhs, xdC), rhs), order);
  return chk;
}

IdentityCheck check_eq06(int order) {
  IdentityCheck chk;
  PowerSeries B = series(SeriesKind::B, order + 2);
  // B^2 + xB' - B - x^2/4
  PowerSeries defect = ps_add(ps_mul(B, B), ps_shift(ps_derivative(B), 1));
  defect = ps_sub(defect, B);
  if (defect.order >= 2) defect.c[2] -= Rat(1, 4);
  finish(chk, defect, order);
  return chk;
}

IdentityCheck check_quad_rec(int order) {
  IdentityCheck chk;
  std::vector<Rat> c = bernoulli_coeffs(order);
  PowerSeries defect(order);
  for (int m = 2; 2 * m <= order; ++m) {
    Rat s = Rat(2 * m + 1) * c[2 * m];
    for (int i = 1; i <= m - 1; ++i) s += c[2 * i] * c[2 * m - 2 * i];
    defect.c[2 * m] = s;
  }
  finish(chk, defect, order);
  return chk;
}

IdentityCheck check_prop02(int k, int order) {
  IdentityCheck chk;
  const int big = order + k + 2;
  std::vector<Rat> c = bernoulli_coeffs(big);
  PowerSeries B = series(SeriesKind::B, big);
  PowerSeries C = series(SeriesKind::C, big);

  // B * D_k B = sum_{2i <= k} c_2i x^2i D_(k+1-2i) B
  PowerSeries rhs(big);
  for (int i = 0; 2 * i <= k; ++i) {
    PowerSeries t = ps_shift(apply_Dk(B, k + 1 - 2 * i), 2 * i).truncated(big);
    rhs = ps_add(rhs, ps_scale(t, c[2 * i]));
  }
  finish(chk, ps_sub(ps_mul(B, apply_Dk(B, k)), rhs), order);

  // Companion expansion: C * D_k C = sum_{i<=k} c_i x^i D_(k+1-i) C.
  PowerSeries rhs2(big);
  for (int i = 0; i <= k; ++i) {
    PowerSeries t = ps_shift(apply_Dk(C, k + 1 - i), i).truncated(big);
    rhs2 = ps_add(rhs2, ps_scale(t, c[i]));
  }
  PowerSeries d2 = ps_sub(ps_mul(C, apply_Dk(C, k)), rhs2).truncated(order);
  chk.notes.push_back("companion expansion over C: " + describe_first_bad(d2));
  if (!d2.is_zero()) chk.ok = false;
  return chk;
}

IdentityCheck check_eq08bis(int k, int order) {
  IdentityCheck chk;
  std::vector<Rat> c = bernoulli_coeffs(order);
  PowerSeries defect(order);
  PowerSeries variant(order);
  for (int m = 0; m <= order; ++m) {
    // Coefficient of x^m in C*D_kC minus the same in sum c_i x^i D_(k+1-i)C.
    Rat lhs(0), rhs(0), vl(0), vr(0);
    for (int i = 0; i <= m; ++i) {
      Rat b = binom(i - 1, k) * c[i] * c[m - i];
      lhs += (k % 2 != 0) ? -b : b;
      vl += b;
    }
    for (int i = 0; i <= k && i <= m; ++i) {
      Rat b = binom(m - i - 1, k + 1 - i) * c[i] * c[m - i];
      rhs += ((k + 1 - i) % 2 != 0) ? -b : b;
      vr -= b;
    }
    defect.c[m] = lhs - rhs;
    variant.c[m] = vl - vr;
  }
  finish(chk, defect, order);
  chk.notes.push_back("sign-free displayed variant: " +
                      describe_first_bad(variant));
  return chk;
}

IdentityCheck check_eq011(int k, long r, int order) {
  IdentityCheck chk;
  // Operator identity D_k[r] = sum_j binom(r+j-1, j) D_(k-j); checked on a
  // dense test series and on C. The variant coefficient binom(r+1-j, j) is
  // evaluated alongside and its first failure reported.
  PowerSeries ones(order);
  for (int n = 0; n <= order; ++n) ones.c[n] = 1;
  PowerSeries C = series(SeriesKind::C, order);

  PowerSeries defect;
  for (int pass = 0; pass < 2; ++pass) {
    const PowerSeries& f = pass == 0 ? ones : C;
    PowerSeries lhs = apply_Dk(f, k, r);
    PowerSeries rhs(order), vrhs(order);
    for (int j = 0; j <= k; ++j) {
      PowerSeries t = apply_Dk(f, k - j);
      rhs = ps_add(rhs, ps_scale(t, binom(r + j - 1, j)));
      vrhs = ps_add(vrhs, ps_scale(t, binom(r + 1 - j, j)));
    }
    PowerSeries d = ps_sub(lhs, rhs);
    if (pass == 0) {
      defect = d;
      chk.notes.push_back("variant coefficient binom(r+1-j,j): " +
                          describe_first_bad(ps_sub(lhs, vrhs)));
    } else if (!d.is_zero()) {
      chk.notes.push_back("defect on C: " + describe_first_bad(d));
    }
  }
  finish(chk, defect, order);
  return chk;
}

// Trailing correction polynomial for the shifted expansion:
// P(x) = binom(r+k, k+1) + binom(r+k-1, k)/2 x
//        + sum_{j=1}^{k-1} binom(r+j-1, j) c_(k+1-j) x^(k+1-j).
PowerSeries trailing_poly(int k, long r, const std::vector<Rat>& c, int order) {
  PowerSeries p(order);
  p.c[0] = binom(r + k, k + 1);
  if (order >= 1) p.c[1] += binom(r + k - 1, k) / 2;
  for (int j = 1; j <= k - 1; ++j) {
    if (k + 1 - j <= order) p.c[k + 1 - j] += binom(r + j - 1, j) * c[k + 1 - j];
  }
  return p;
}

IdentityCheck check_cor03(int k, long r, int order) {
  IdentityCheck chk;
  const int big = order + k + 2;
  std::vector<Rat> c = bernoulli_coeffs(big);
  PowerSeries C = series(SeriesKind::C, big);

  PowerSeries lhs = ps_mul(C, apply_Dk(C, k, r));
  PowerSeries sum(big);
  for (int i = 0; i <= k; ++i) {
    PowerSeries t = ps_shift(apply_Dk(C, k + 1 - i, r), i).truncated(big);
    sum = ps_add(sum, ps_scale(t, c[i]));
  }
  PowerSeries p = trailing_poly(k, r, c, big);
  finish(chk, ps_sub(lhs, ps_sub(sum, ps_mul(p, C))), order);
  chk.notes.push_back(
      "plain -xC trailing variant: " +
      describe_first_bad(ps_sub(lhs, ps_sub(sum, ps_shift(C, 1))).truncated(order)));

  // Coefficientwise form: exact with the signed extraction, while the
  // displayed sign-free variant with trailing -c_(m-1) generally fails.
  PowerSeries bis(order);
  PowerSeries bis_variant(order);
  for (int m = 0; m <= order; ++m) {
    Rat tl(0), tr(0), vl(0), vr(0);
    for (int i = 0; i <= m; ++i) {
      Rat b = binom(i - 1 - r, k) * c[i] * c[m - i];
      tl += (k % 2 != 0) ? -b : b;
      vl += b;
    }
    for (int i = 0; i <= k && i <= m; ++i) {
      Rat b = binom(m - i - 1 - r, k + 1 - i) * c[i] * c[m - i];
      tr += ((k + 1 - i) % 2 != 0) ? -b : b;
      vr -= b;
    }
    // Subtract the trailing polynomial's contribution to x^m of P*C.
    for (int d = 0; d <= m && d <= p.order; ++d) {
      if (p.c[d] != 0) tr -= p.c[d] * cz(c, m - d);
    }
    vr -= cz(c, m - 1);
    bis.c[m] = tl - tr;
    bis_variant.c[m] = vl - vr;
  }
  chk.notes.push_back("coefficientwise form: " + describe_first_bad(bis));
  chk.notes.push_back("sign-free coefficient variant: " +
                      describe_first_bad(bis_variant));
  if (!bis.is_zero()) chk.ok = false;
  return chk;
}

struct Tag {
  std::string name;
  std::vector<long> args;
};

Tag parse_tag(const std::string& tag) {
  Tag t;
  size_t open = tag.find('(');
  if (open == std::string::npos) {
    t.name = tag;
    return t;
  }
  if (tag.back() != ')') throw std::invalid_argument("bad tag: " + tag);
  t.name = tag.substr(0, open);
  std::string args = tag.substr(open + 1, tag.size() - open - 2);
  size_t pos = 0;
  while (pos <= args.size()) {
    size_t comma = args.find(',', pos);
    std::string tok = args.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      t.args.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad tag argument in: " + tag);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return t;
}

}  // namespace

IdentityCheck verify_identity(const std::string& tag, int order) {
  if (order < 0) throw std::invalid_argument("order must be >= 0");
  Tag t = parse_tag(tag);
  auto want_args = [&](size_t n) {
    if (t.args.size() != n) {
      throw std::invalid_argument("tag " + t.name + " expects " +
                                  std::to_string(n) + " argument(s)");
    }
  };
  auto want_k = [&]() {
    if (t.args[0] < 1) throw std::invalid_argument("tag " + t.name + ": k >= 1");
    return static_cast<int>(t.args[0]);
  };

  IdentityCheck chk;
  if (t.name == "eq04") {
    want_args(0);
    chk = check_eq04(order);
  } else if (t.name == "eq05") {
    want_args(0);
    chk = check_eq05(order);
  } else if (t.name == "eq06") {
    want_args(0);
    chk = check_eq06(order);
  } else if (t.name == "quad_rec") {
    want_args(0);
    chk = check_quad_rec(order);
  } else if (t.name == "prop02") {
    want_args(1);
    chk = check_prop02(want_k(), order);
  } else if (t.name == "eq08bis") {
    want_args(1);
    chk = check_eq08bis(want_k(), order);
  } else if (t.name == "eq011") {
    want_args(2);
    chk = check_eq011(want_k(), t.args[1], order);
  } else if (t.name == "cor03") {
    want_args(2);
    chk = check_cor03(want_k(), t.args[1], order);
  } else {
    throw std::invalid_argument("unknown identity tag: " + tag);
  }
  chk.tag = tag;
  chk.order = order;
  return chk;
}

std::vector<std::string> default_identity_tags() {
  std::vector<std::string> tags = {"eq04", "eq05", "eq06", "quad_rec"};
  for (int k = 1; k <= 8; ++k) tags.push_back("prop02(" + std::to_string(k) + ")");
  for (int k = 1; k <= 8; ++k) tags.push_back("eq08bis(" + std::to_string(k) + ")");
  for (int k = 1; k <= 8; ++k) {
    for (int r = -3; r <= 3; ++r) {
      tags.push_back("eq011(" + std::to_string(k) + "," + std::to_string(r) + ")");
    }
  }
  for (int k = 1; k <= 8; ++k) {
    for (int r = -3; r <= 3; ++r) {
      tags.push_back("cor03(" + std::to_string(k) + "," + std::to_string(r) + ")");
    }
  }
  return tags;
}

}  // namespace jb
