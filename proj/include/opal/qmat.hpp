#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "opal/rational.hpp"

namespace opal {

using QVec = std::vector<Q>;

// Dense matrix over the rationals.  Rows index the target, columns the source.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Q(0)) {}

  static QMat identity(int n);
  static QMat zero(int rows, int cols) { return QMat(rows, cols); }
  // Permutation matrix sending basis vector j to basis vector p[j].
  static QMat basis_permutation(const std::vector<int>& p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Q& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Q& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  bool operator==(const QMat& o) const = default;

  QMat operator*(const QMat& o) const;
  QMat operator+(const QMat& o) const;
  QMat operator-(const QMat& o) const;
  QVec apply(const QVec& v) const;

  bool is_zero() const;
  bool is_identity() const;

  // Kronecker product: acts on lexicographic (left-major) tensor bases.
  QMat kron(const QMat& o) const;

  int rank() const;
  // Reduced row echelon form together with the pivot columns.
  QMat rref(std::vector<int>* pivots = nullptr) const;
  // Basis of the kernel, one column per basis vector.
  QMat kernel() const;
  std::optional<QMat> inverse() const;
  // One solution x of this * x = b, if any.
  std::optional<QVec> solve(const QVec& b) const;

  QMat transpose() const;
  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Q> a_;
};

// Solves A x = b for a stacked linear system; returns (particular solution, nullity).
struct LinSolve {
  bool consistent = false;
  QVec particular;      // valid when consistent
  int nullity = 0;      // dimension of the solution space
  int witness_row = -1; // an inconsistent row when !consistent
};
LinSolve solve_full(const QMat& a, const QVec& b);

}  // namespace opal
