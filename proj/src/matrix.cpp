#include "hk/matrix.hpp"

#include <sstream>

namespace hk {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols, const std::vector<Scalar>& entries)
    : Matrix(std::move(ring), rows, cols) {
  if (entries.size() != rows * cols) throw Error("matrix entry count does not match shape");
  for (std::size_t k = 0; k < entries.size(); ++k) data_[k] = ring_.normalize(entries[k]);
}

Matrix Matrix::identity(Ring ring, std::size_t n) { return scalar(std::move(ring), n, 1); }

Matrix Matrix::scalar(Ring ring, std::size_t n, const Scalar& s) {
  Matrix m(ring, n, n);
  Scalar v = ring.normalize(s);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = v;
  return m;
}

Matrix Matrix::from_rows(Ring ring, const std::vector<std::vector<long>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows.front().size();
  Matrix m(ring, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw Error("ragged matrix literal");
    for (std::size_t j = 0; j < nc; ++j) m.set(i, j, Scalar(rows[i][j]));
  }
  return m;
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  data_[i * cols_ + j] = ring_.normalize(v);
}

void require_same_ring(const Matrix& a, const Matrix& b) {
  if (!(a.ring() == b.ring()))
    throw Error("mixed-ring operands: " + a.ring().name() + " and " + b.ring().name());
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_same_ring(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("dimension mismatch in matrix sum");
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.add(data_[k], o.data_[k]);
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_same_ring(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("dimension mismatch in matrix difference");
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.sub(data_[k], o.data_[k]);
  return r;
}

Matrix Matrix::operator-() const {
  Matrix r(ring_, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.neg(data_[k]);
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_ring(*this, o);
  if (cols_ != o.rows_)
    throw Error("dimension mismatch in matrix product: " + std::to_string(rows_) + "x" +
                std::to_string(cols_) + " * " + std::to_string(o.rows_) + "x" +
                std::to_string(o.cols_));
  Matrix r(ring_, rows_, o.cols_);
  Scalar acc;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = data_[i * cols_ + k];
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.data_[k * o.cols_ + j];
        if (sgn(b) == 0) continue;
        r.data_[i * o.cols_ + j] += a * b;
      }
    }
  }
  if (ring_.kind() == Ring::Kind::Modular)
    for (auto& v : r.data_) v = ring_.normalize(v);
  return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r(ring_, rows_, cols_);
  Scalar c = ring_.normalize(s);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = ring_.mul(data_[k], c);
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = data_[i * cols_ + j];
  return r;
}

bool Matrix::is_zero() const {
  for (const auto& v : data_)
    if (sgn(v) != 0) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error("block out of range");
  Matrix r(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r.data_[i * nc + j] = data_[(r0 + i) * cols_ + c0 + j];
  return r;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  require_same_ring(*this, b);
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) data_[(r0 + i) * cols_ + c0 + j] = b(i, j);
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j).get_str();
  }
  out << "] (" << rows_ << "x" << cols_ << " over " << ring_.name() << ")";
  return out.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows()) throw Error("hstack row mismatch");
  Matrix r(a.ring(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.cols() != b.cols()) throw Error("vstack column mismatch");
  Matrix r(a.ring(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  Matrix r(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Matrix block2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  return vstack(hstack(a, b), hstack(c, d));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  const Ring& ring = a.ring();
  Matrix r(ring, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (sgn(a(i, j)) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.set(i * b.rows() + k, j * b.cols() + l, ring.mul(a(i, j), b(k, l)));
    }
  return r;
}

Matrix commutation(Ring ring, std::size_t a, std::size_t b) {
  Matrix p(ring, a * b, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) p.set(j * a + i, i * b + j, 1);
  return p;
}

}  // namespace hk
