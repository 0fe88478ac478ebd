#include "opal/qmat.hpp"

#include <sstream>
#include <stdexcept>

namespace opal {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::basis_permutation(const std::vector<int>& p) {
  QMat m(int(p.size()), int(p.size()));
  for (int j = 0; j < int(p.size()); ++j) m.at(p[j], j) = 1;
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMat: shape mismatch in product");
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Q& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Q& y = o.at(k, j);
        if (y == 0) continue;
        r.at(i, j) += x * y;
      }
    }
  return r;
}

QMat QMat::operator+(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat: shape mismatch in sum");
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

QMat QMat::operator-(const QMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("QMat: shape mismatch in difference");
  QMat r(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

QVec QMat::apply(const QVec& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("QMat: shape mismatch in apply");
  QVec r(rows_, Q(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
  return r;
}

bool QMat::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

bool QMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

QMat QMat::kron(const QMat& o) const {
  QMat r(rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Q& x = at(i, j);
      if (x == 0) continue;
      for (int k = 0; k < o.rows_; ++k)
        for (int l = 0; l < o.cols_; ++l)
          if (o.at(k, l) != 0) r.at(i * o.rows_ + k, j * o.cols_ + l) = x * o.at(k, l);
    }
  return r;
}

QMat QMat::rref(std::vector<int>* pivots) const {
  QMat m = *this;
  if (pivots) pivots->clear();
  int r = 0;
  for (int c = 0; c < cols_ && r < rows_; ++c) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (m.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(r, j));
    Q inv = 1 / m.at(r, c);
    for (int j = c; j < cols_; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Q f = m.at(i, c);
      for (int j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

int QMat::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return int(piv.size());
}

QMat QMat::kernel() const {
  std::vector<int> piv;
  QMat r = rref(&piv);
  std::vector<bool> ispiv(cols_, false);
  for (int c : piv) ispiv[c] = true;
  std::vector<int> freecols;
  for (int c = 0; c < cols_; ++c)
    if (!ispiv[c]) freecols.push_back(c);
  QMat k(cols_, int(freecols.size()));
  for (int j = 0; j < int(freecols.size()); ++j) {
    int fc = freecols[j];
    k.at(fc, j) = 1;
    for (int i = 0; i < int(piv.size()); ++i) k.at(piv[i], j) = -r.at(i, fc);
  }
  return k;
}

std::optional<QMat> QMat::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  QMat aug(rows_, 2 * cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = 1;
  }
  std::vector<int> piv;
  QMat r = aug.rref(&piv);
  if (int(piv.size()) != rows_) return std::nullopt;
  for (int i = 0; i < rows_; ++i)
    if (piv[i] != i) return std::nullopt;
  QMat inv(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) inv.at(i, j) = r.at(i, cols_ + j);
  return inv;
}

std::optional<QVec> QMat::solve(const QVec& b) const {
  LinSolve s = solve_full(*this, b);
  if (!s.consistent) return std::nullopt;
  return s.particular;
}

LinSolve solve_full(const QMat& a, const QVec& b) {
  if (int(b.size()) != a.rows()) throw std::invalid_argument("solve_full: shape mismatch");
  QMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<int> piv;
  QMat r = aug.rref(&piv);
  LinSolve out;
  for (size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == a.cols()) {
      out.consistent = false;
      out.witness_row = int(k);
      return out;
    }
  }
  out.consistent = true;
  out.particular.assign(a.cols(), Q(0));
  for (size_t k = 0; k < piv.size(); ++k) out.particular[piv[k]] = r.at(int(k), a.cols());
  out.nullity = a.cols() - int(piv.size());
  return out;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::string QMat::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < cols_; ++j) os << at(i, j).get_str() << (j + 1 < cols_ ? " " : "");
    os << (i + 1 < rows_ ? ";\n" : "]");
  }
  return os.str();
}

}  // namespace opal
