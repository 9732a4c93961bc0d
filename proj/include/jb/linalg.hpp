#pragma once

#include <jb/rat.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace jb {

using Vec = std::vector<Rat>;

// Execution mode for the elimination and multiplication kernels. Serial and
// Parallel perform identical arithmetic in the same order per row, so results
// agree entrywise; Auto picks Parallel for large inputs when OpenMP is
// available.
enum class Exec { Auto, Serial, Parallel };

// Sparse matrix over Q acting on column vectors: a rows x cols matrix maps
// Q^cols to Q^rows. Each row stores (column, value) pairs sorted by column,
// with no explicit zeros.
struct QMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, Rat>>> data;

  QMatrix() = default;
  QMatrix(int r, int c) : rows(r), cols(c), data(r) {}

  static QMatrix identity(int n);

  const Rat& at(int i, int j) const;
  void set(int i, int j, const Rat& v);
  void add_entry(int i, int j, const Rat& v);

  long nnz() const;
  bool is_zero() const;

  bool operator==(const QMatrix& o) const;
};

QMatrix transpose(const QMatrix& m);
QMatrix mul(const QMatrix& a, const QMatrix& b, Exec ex = Exec::Auto);
QMatrix add(const QMatrix& a, const QMatrix& b);
QMatrix sub(const QMatrix& a, const QMatrix& b);
QMatrix scale(const QMatrix& a, const Rat& c);

// [a | b] side by side; rows must agree.
QMatrix hstack(const QMatrix& a, const QMatrix& b);

Vec matvec(const QMatrix& m, const Vec& x);

// Reduced row echelon form. pivots[k] is the pivot column of row k; pivot
// columns are strictly increasing and pivot entries are 1.
struct Echelon {
  QMatrix mat;
  std::vector<int> pivots;
};
Echelon echelon(const QMatrix& m, Exec ex = Exec::Auto);

int rank(const QMatrix& m, Exec ex = Exec::Auto);

// Columns form a basis of {x : Mx = 0}; column count = cols(m) - rank(m).
QMatrix kernel_basis(const QMatrix& m, Exec ex = Exec::Auto);

// Data for the quotient Q^rows / colspace(m): proj (dim x rows) is surjective
// with proj*m = 0, and section (rows x dim) satisfies proj*section = id, so
// section picks coset representatives.
struct Cokernel {
  int dim = 0;
  QMatrix proj;
  QMatrix section;
};
Cokernel cokernel_data(const QMatrix& m, Exec ex = Exec::Auto);

// Some x with m*x = b, or nullopt when the system is inconsistent. Throws
// std::invalid_argument on a length mismatch.
std::optional<Vec> solve(const QMatrix& m, const Vec& b, Exec ex = Exec::Auto);

// True when v lies in the column space of m.
bool in_colspace(const QMatrix& m, const Vec& v);

// Canonical basis of the column space: the nonzero rows of the reduced
// echelon form of the transpose, returned as columns. Two matrices have the
// same column space iff their canonical bases are equal.
QMatrix colspan_basis(const QMatrix& m, Exec ex = Exec::Auto);

// Canonical basis of colspace(a) + colspace(b).
QMatrix span_union(const QMatrix& a, const QMatrix& b);

// True when every column of sub lies in the column space of big.
bool span_contains(const QMatrix& big, const QMatrix& sub);

// Inverse of a square invertible matrix; throws std::invalid_argument if the
// matrix is singular or not square.
QMatrix inverse(const QMatrix& m);

// Column j as a dense vector; dense column assembly helpers.
Vec get_col(const QMatrix& m, int j);
void set_col(QMatrix& m, int j, const Vec& v);
QMatrix from_cols(int rows, const std::vector<Vec>& cols);

}  // namespace jb
