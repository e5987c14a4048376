#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hk/ring.hpp"

namespace hk {

/// Dense row-major matrix over a single Ring. Columns are coordinate vectors,
/// so a map R^cols -> R^rows acts by left multiplication.
class Matrix {
 public:
  Matrix() : ring_(Ring::integers()) {}
  Matrix(Ring ring, std::size_t rows, std::size_t cols);
  /// Entries are normalized into the ring.
  Matrix(Ring ring, std::size_t rows, std::size_t cols, const std::vector<Scalar>& entries);

  static Matrix zero(Ring ring, std::size_t rows, std::size_t cols) { return {ring, rows, cols}; }
  static Matrix identity(Ring ring, std::size_t n);
  static Matrix scalar(Ring ring, std::size_t n, const Scalar& s);
  /// Convenience for tests and fixtures: integer literal rows.
  static Matrix from_rows(Ring ring, const std::vector<std::vector<long>>& rows);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Stores the normalized value.
  void set(std::size_t i, std::size_t j, const Scalar& v);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  bool operator==(const Matrix& o) const;

  /// Submatrix of rows [r0, r0+nr) and cols [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

void require_same_ring(const Matrix& a, const Matrix& b);

/// [a | b]
Matrix hstack(const Matrix& a, const Matrix& b);
/// [a ; b]
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);
/// 2x2 block matrix [[a, b], [c, d]] with conforming shapes.
Matrix block2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
/// Kronecker product; basis of the result is (i of a) major, (j of b) minor.
Matrix kron(const Matrix& a, const Matrix& b);
/// Permutation taking index i*b + j (a-major) to j*a + i (b-major).
Matrix commutation(Ring ring, std::size_t a, std::size_t b);

}  // namespace hk
