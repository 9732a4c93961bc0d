#pragma once

#include <jb/rat.hpp>

#include <string>
#include <vector>

namespace jb {

// Truncated formal power series over Q: coefficients of x^0..x^order are
// exact, nothing is known beyond x^order.
struct PowerSeries {
  int order = 0;
  std::vector<Rat> c;

  PowerSeries() : c(1) {}
  explicit PowerSeries(int ord) : order(ord), c(ord + 1) {}

  Rat coeff(int n) const { return n <= order ? c[n] : Rat(0); }
  bool is_zero() const;
  int first_nonzero() const;  // -1 when identically zero
  PowerSeries truncated(int ord) const;
};

PowerSeries ps_add(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_sub(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_mul(const PowerSeries& a, const PowerSeries& b);
PowerSeries ps_scale(const PowerSeries& a, const Rat& s);

// x^k * f; the result is exact through x^(order+k).
PowerSeries ps_shift(const PowerSeries& a, int k);

// d/dx; the result is exact through x^(order-1).
PowerSeries ps_derivative(const PowerSeries& a);

// c_0..c_n with c_k = B_k/k!, computed by inverting (e^x - 1)/x.
std::vector<Rat> bernoulli_coeffs(int n);

// The same coefficients by the alternating double sum
// c_n = sum_{1<=i<=m<=n} (-1)^i binom(m,i) i^n / ((m+1) n!), n >= 1;
// an independent oracle for bernoulli_coeffs.
std::vector<Rat> bernoulli_coeffs_double_sum(int n);

enum class SeriesKind { C, B };

// C = x/(e^x - 1) = sum c_n x^n, or B = C + x/2.
PowerSeries series(SeriesKind kind, int order);

// The operator D_k[r]: a_i x^i -> (-1)^k binom(i-1-r, k) a_i x^i for k >= 1;
// D_0[r] is the identity. r = 0 gives the unshifted D_k.
PowerSeries apply_Dk(const PowerSeries& f, int k, long r = 0);

// Result of one identity verification. `ok` refers to the primary form of
// the identity; `notes` document companion and variant-coefficient forms,
// including where a variant first fails.
struct IdentityCheck {
  std::string tag;
  int order = 0;
  bool ok = false;
  int first_bad = -1;
  Rat first_bad_value;
  PowerSeries defect;
  std::vector<std::string> notes;
};

// Verifies the identity named by `tag` through x^order. Tags:
//   eq04          coefficient double-sum formula
//   eq05          C^2 = -xC' + (1-x)C
//   eq06          B^2 = -xB' + B + x^2/4
//   quad_rec      (2m+1)c_2m = -sum c_2i c_(2m-2i)
//   prop02(k)     B*D_kB and C*D_kC expansions, k >= 1
//   eq08bis(k)    coefficientwise form of prop02
//   eq011(k,r)    expansion of D_k[r] in D_0..D_k
//   cor03(k,r)    C*D_k[r]C expansion with trailing correction
// Throws std::invalid_argument on an unknown tag or bad arguments.
IdentityCheck verify_identity(const std::string& tag, int order);

// The full verification grid: every scalar tag, prop02/eq08bis for k = 1..8,
// eq011/cor03 for k = 1..8 and r = -3..3.
std::vector<std::string> default_identity_tags();

}  // namespace jb
