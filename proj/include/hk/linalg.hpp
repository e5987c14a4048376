#pragma once

#include <optional>
#include <vector>

#include "hk/matrix.hpp"

namespace hk {

/// Column echelon (Hermite) form A·V = H over Z or Q, V unimodular.
/// Column k < rank has its leading nonzero at pivot_rows[k] (strictly
/// increasing); columns >= rank are zero. Over Z pivots are positive and the
/// entries left of a pivot are reduced into [0, pivot).
struct ColumnEchelon {
  Matrix h;
  Matrix v;
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

ColumnEchelon column_echelon(const Matrix& a);

/// Factors A once so several right-hand sides can be solved against it.
/// Over Z/m the system is lifted to Z as [A | m·I]·[X; Z] = B.
class RightSolver {
 public:
  explicit RightSolver(const Matrix& a);

  /// Some X with A·X = B, or nothing if no solution exists over the ring.
  std::optional<Matrix> solve(const Matrix& b) const;
  /// Columns generating {x : A·x = 0} (a basis over Z and fields).
  Matrix kernel() const;

 private:
  Ring ring_;
  std::size_t rows_, cols_;
  ColumnEchelon ech_;
};

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b);
Matrix kernel_basis(const Matrix& a);

struct SmithForm {
  Matrix u, d, v;  // u·a·v = d
};

/// Integer matrices only. D is diagonal, nonnegative, d_i | d_{i+1}.
SmithForm smith_normal_form(const Matrix& a);

/// Rank over Z (equals rank over Q), Q, or Z/p with p prime.
std::size_t rank(const Matrix& a);

/// Determinant of a square integer/rational matrix (used for unimodularity checks).
Scalar determinant(const Matrix& a);

}  // namespace hk
