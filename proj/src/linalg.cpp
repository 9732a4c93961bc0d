#include <jb/linalg.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace jb {

namespace {

using Row = std::vector<std::pair<int, Rat>>;

const Rat kZero(0);

const Rat* row_find(const Row& row, int col) {
  auto it = std::lower_bound(
      row.begin(), row.end(), col,
      [](const std::pair<int, Rat>& e, int c) { return e.first < c; });
  if (it == row.end() || it->first != col) return nullptr;
  return &it->second;
}

// dst + c * src, both sorted by column.
Row axpy(const Row& dst, const Rat& c, const Row& src) {
  Row out;
  out.reserve(dst.size() + src.size());
  size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() ||
        (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i]);
      ++i;
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      Rat v = c * src[j].second;
      if (v != 0) out.emplace_back(src[j].first, std::move(v));
      ++j;
    } else {
      Rat v = dst[i].second + c * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// a*x + b*y over sorted rows, for the fraction-free elimination step.
Row axpy2(const Rat& a, const Row& x, const Rat& b, const Row& y) {
  Row out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      Rat v = a * x[i].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      Rat v = b * y[j].second;
      if (v != 0) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      Rat v = a * x[i].second + b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Scales a row to a primitive integer vector with positive leading entry.
void make_primitive(Row& row) {
  if (row.empty()) return;
  Int l(1);
  for (const auto& e : row) {
    Int d = e.second.get_den();
    l = l / gcd(l, d) * d;
  }
  Int g(0);
  std::vector<Int> nums;
  nums.reserve(row.size());
  for (const auto& e : row) {
    Int n = e.second.get_num() * (l / e.second.get_den());
    g = gcd(g, n);
    nums.push_back(std::move(n));
  }
  if (row.front().second < 0) g = -g;
  for (size_t k = 0; k < row.size(); ++k) {
    row[k].second = Rat(nums[k] / g);
  }
}

bool use_parallel(Exec ex, long work) {
#ifdef _OPENMP
  switch (ex) {
    case Exec::Serial:
      return false;
    case Exec::Parallel:
      return true;
    case Exec::Auto:
      return work >= 96;
  }
#else
  (void)ex;
  (void)work;
#endif
  return false;
}

}  // namespace

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.data[i].emplace_back(i, Rat(1));
  return m;
}

const Rat& QMatrix::at(int i, int j) const {
  const Rat* p = row_find(data[i], j);
  return p ? *p : kZero;
}

void QMatrix::set(int i, int j, const Rat& v) {
  Row& row = data[i];
  auto it = std::lower_bound(
      row.begin(), row.end(), j,
      [](const std::pair<int, Rat>& e, int c) { return e.first < c; });
  if (it != row.end() && it->first == j) {
    if (v == 0) {
      row.erase(it);
    } else {
      it->second = v;
    }
  } else if (v != 0) {
    row.insert(it, {j, v});
  }
}

void QMatrix::add_entry(int i, int j, const Rat& v) {
  if (v == 0) return;
  Row& row = data[i];
  auto it = std::lower_bound(
      row.begin(), row.end(), j,
      [](const std::pair<int, Rat>& e, int c) { return e.first < c; });
  if (it != row.end() && it->first == j) {
    it->second += v;
    if (it->second == 0) row.erase(it);
  } else {
    row.insert(it, {j, v});
  }
}

long QMatrix::nnz() const {
  long n = 0;
  for (const Row& r : data) n += static_cast<long>(r.size());
  return n;
}

bool QMatrix::is_zero() const { return nnz() == 0; }

bool QMatrix::operator==(const QMatrix& o) const {
  if (rows != o.rows || cols != o.cols) return false;
  for (int i = 0; i < rows; ++i) {
    if (data[i].size() != o.data[i].size()) return false;
    for (size_t k = 0; k < data[i].size(); ++k) {
      if (data[i][k].first != o.data[i][k].first) return false;
      if (data[i][k].second != o.data[i][k].second) return false;
    }
  }
  return true;
}

QMatrix transpose(const QMatrix& m) {
  QMatrix t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (const auto& [j, v] : m.data[i]) t.data[j].emplace_back(i, v);
  }
  return t;
}

QMatrix mul(const QMatrix& a, const QMatrix& b, Exec ex) {
  if (a.cols != b.rows) throw std::invalid_argument("mul: shape mismatch");
  QMatrix c(a.rows, b.cols);
  const bool par = use_parallel(ex, a.rows);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (par)
#else
  (void)par;
#endif
  for (int i = 0; i < a.rows; ++i) {
    std::map<int, Rat> acc;
    for (const auto& [k, va] : a.data[i]) {
      for (const auto& [j, vb] : b.data[k]) {
        auto [it, fresh] = acc.try_emplace(j, va * vb);
        if (!fresh) it->second += va * vb;
      }
    }
    Row out;
    out.reserve(acc.size());
    for (auto& [j, v] : acc) {
      if (v != 0) out.emplace_back(j, std::move(v));
    }
    c.data[i] = std::move(out);
  }
  return c;
}

QMatrix add(const QMatrix& a, const QMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw std::invalid_argument("add: shape mismatch");
  }
  QMatrix c(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i) c.data[i] = axpy(a.data[i], Rat(1), b.data[i]);
  return c;
}

QMatrix sub(const QMatrix& a, const QMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw std::invalid_argument("sub: shape mismatch");
  }
  QMatrix c(a.rows, a.cols);
  for (int i = 0; i < a.rows; ++i) c.data[i] = axpy(a.data[i], Rat(-1), b.data[i]);
  return c;
}

QMatrix scale(const QMatrix& a, const Rat& c) {
  QMatrix out(a.rows, a.cols);
  if (c == 0) return out;
  out.data = a.data;
  for (auto& row : out.data) {
    for (auto& e : row) e.second *= c;
  }
  return out;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows != b.rows) throw std::invalid_argument("hstack: row mismatch");
  QMatrix c(a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    c.data[i] = a.data[i];
    for (const auto& [j, v] : b.data[i]) c.data[i].emplace_back(a.cols + j, v);
  }
  return c;
}

Vec matvec(const QMatrix& m, const Vec& x) {
  if (static_cast<int>(x.size()) != m.cols) {
    throw std::invalid_argument("matvec: length mismatch");
  }
  Vec y(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i) {
    for (const auto& [j, v] : m.data[i]) y[i] += v * x[j];
  }
  return y;
}

Echelon echelon(const QMatrix& m, Exec ex) {
  Echelon e;
  e.mat = m;
  auto& rows = e.mat.data;
  for (Row& r : rows) make_primitive(r);
  const bool par = use_parallel(ex, m.rows);

  // Forward phase: fraction-free row combinations keep entries integral;
  // content stripping keeps them small.
  int next = 0;
  while (next < e.mat.rows) {
    // Pivot: smallest leading column, then fewest entries, then lowest index.
    int best = -1;
    for (int i = next; i < e.mat.rows; ++i) {
      if (rows[i].empty()) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      int ci = rows[i].front().first;
      int cb = rows[best].front().first;
      if (ci < cb || (ci == cb && rows[i].size() < rows[best].size())) best = i;
    }
    if (best < 0) break;
    std::swap(rows[next], rows[best]);
    const Row& piv = rows[next];
    const int pc = piv.front().first;
    const Rat lead = piv.front().second;
    const int nrows = e.mat.rows;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (par)
#else
    (void)par;
#endif
    for (int i = next + 1; i < nrows; ++i) {
      const Rat* v = row_find(rows[i], pc);
      if (!v) continue;
      rows[i] = axpy2(lead, rows[i], -*v, piv);
      make_primitive(rows[i]);
    }
    e.pivots.push_back(pc);
    ++next;
  }

  // Back phase: clear entries above each pivot, then make pivots monic.
  const int npiv = static_cast<int>(e.pivots.size());
  for (int r = npiv - 1; r > 0; --r) {
    const Row& piv = rows[r];
    const int pc = e.pivots[r];
    const Rat lead = piv.front().second;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (par)
#else
    (void)par;
#endif
    for (int i = 0; i < r; ++i) {
      const Rat* v = row_find(rows[i], pc);
      if (!v) continue;
      rows[i] = axpy2(lead, rows[i], -*v, piv);
      make_primitive(rows[i]);
    }
  }
  for (int r = 0; r < npiv; ++r) {
    Rat inv = 1 / rows[r].front().second;
    for (auto& entry : rows[r]) entry.second *= inv;
  }
  return e;
}

int rank(const QMatrix& m, Exec ex) {
  return static_cast<int>(echelon(m, ex).pivots.size());
}

QMatrix kernel_basis(const QMatrix& m, Exec ex) {
  Echelon e = echelon(m, ex);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  QMatrix k(m.cols, static_cast<int>(free_cols.size()));
  for (size_t idx = 0; idx < free_cols.size(); ++idx) {
    int f = free_cols[idx];
    k.add_entry(f, static_cast<int>(idx), Rat(1));
    for (size_t r = 0; r < e.pivots.size(); ++r) {
      const Rat* v = row_find(e.mat.data[r], f);
      if (v) k.add_entry(e.pivots[r], static_cast<int>(idx), -*v);
    }
  }
  return k;
}

Cokernel cokernel_data(const QMatrix& m, Exec ex) {
  // Row-reduce the transpose: its row space is the column space of m.
  Echelon e = echelon(transpose(m), ex);
  std::vector<bool> is_pivot(m.rows, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> rest;
  for (int j = 0; j < m.rows; ++j) {
    if (!is_pivot[j]) rest.push_back(j);
  }
  Cokernel ck;
  ck.dim = static_cast<int>(rest.size());
  ck.proj = QMatrix(ck.dim, m.rows);
  ck.section = QMatrix(m.rows, ck.dim);
  for (int j = 0; j < ck.dim; ++j) {
    ck.proj.add_entry(j, rest[j], Rat(1));
    ck.section.add_entry(rest[j], j, Rat(1));
    // Quotient coordinates: kill each pivot coordinate with its basis row.
    for (size_t r = 0; r < e.pivots.size(); ++r) {
      const Rat* v = row_find(e.mat.data[r], rest[j]);
      if (v) ck.proj.add_entry(j, e.pivots[r], -*v);
    }
  }
  return ck;
}

std::optional<Vec> solve(const QMatrix& m, const Vec& b, Exec ex) {
  if (static_cast<int>(b.size()) != m.rows) {
    throw std::invalid_argument("solve: length mismatch");
  }
  QMatrix aug(m.rows, m.cols + 1);
  aug.data = m.data;
  for (int i = 0; i < m.rows; ++i) {
    if (b[i] != 0) aug.data[i].emplace_back(m.cols, b[i]);
  }
  Echelon e = echelon(aug, ex);
  for (int p : e.pivots) {
    if (p == m.cols) return std::nullopt;
  }
  Vec x(m.cols, Rat(0));
  for (size_t r = 0; r < e.pivots.size(); ++r) {
    const Rat* v = row_find(e.mat.data[r], m.cols);
    if (v) x[e.pivots[r]] = *v;
  }
  return x;
}

bool in_colspace(const QMatrix& m, const Vec& v) {
  return solve(m, v).has_value();
}

QMatrix colspan_basis(const QMatrix& m, Exec ex) {
  Echelon e = echelon(transpose(m), ex);
  int n = static_cast<int>(e.pivots.size());
  QMatrix b(m.rows, n);
  for (int r = 0; r < n; ++r) {
    for (const auto& [j, v] : e.mat.data[r]) b.add_entry(j, r, v);
  }
  return b;
}

QMatrix span_union(const QMatrix& a, const QMatrix& b) {
  return colspan_basis(hstack(a, b));
}

bool span_contains(const QMatrix& big, const QMatrix& sub) {
  if (big.rows != sub.rows) {
    throw std::invalid_argument("span_contains: row mismatch");
  }
  for (int j = 0; j < sub.cols; ++j) {
    if (!in_colspace(big, get_col(sub, j))) return false;
  }
  return true;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: not square");
  Echelon e = echelon(hstack(m, QMatrix::identity(m.rows)));
  for (int r = 0; r < m.rows; ++r) {
    if (static_cast<int>(e.pivots.size()) <= r || e.pivots[r] != r) {
      throw std::invalid_argument("inverse: singular matrix");
    }
  }
  QMatrix inv(m.rows, m.cols);
  for (int r = 0; r < m.rows; ++r) {
    for (const auto& [j, v] : e.mat.data[r]) {
      if (j >= m.cols) inv.add_entry(r, j - m.cols, v);
    }
  }
  return inv;
}

Vec get_col(const QMatrix& m, int j) {
  Vec v(m.rows, Rat(0));
  for (int i = 0; i < m.rows; ++i) {
    const Rat* p = row_find(m.data[i], j);
    if (p) v[i] = *p;
  }
  return v;
}

void set_col(QMatrix& m, int j, const Vec& v) {
  for (int i = 0; i < m.rows; ++i) {
    if (v[i] != 0) m.set(i, j, v[i]);
  }
}

QMatrix from_cols(int rows, const std::vector<Vec>& cols) {
  QMatrix m(rows, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    set_col(m, static_cast<int>(j), cols[j]);
  }
  return m;
}

}  // namespace jb
