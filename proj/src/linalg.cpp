#include "hk/linalg.hpp"

#include <algorithm>
#include <utility>

namespace hk {
namespace {

// Working copy used by the integer algorithms; avoids rational overhead.
struct IntGrid {
  std::size_t m = 0, n = 0;
  std::vector<mpz_class> a;
  IntGrid(std::size_t rows, std::size_t cols) : m(rows), n(cols), a(rows * cols) {}
  mpz_class& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  void col_axpy(std::size_t dst, std::size_t src, const mpz_class& q) {  // col dst -= q col src
    for (std::size_t i = 0; i < m; ++i)
      if (sgn(at(i, src)) != 0) at(i, dst) -= q * at(i, src);
  }
  void row_axpy(std::size_t dst, std::size_t src, const mpz_class& q) {  // row dst -= q row src
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(at(src, j)) != 0) at(dst, j) -= q * at(src, j);
  }
  void swap_cols(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(at(i, x), at(i, y));
  }
  void swap_rows(std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(at(x, j), at(y, j));
  }
  void negate_col(std::size_t x) {
    for (std::size_t i = 0; i < m; ++i) at(i, x) = -at(i, x);
  }
  void negate_row(std::size_t x) {
    for (std::size_t j = 0; j < n; ++j) at(x, j) = -at(x, j);
  }

  static IntGrid identity(std::size_t k) {
    IntGrid g(k, k);
    for (std::size_t i = 0; i < k; ++i) g.at(i, i) = 1;
    return g;
  }
  static IntGrid from(const Matrix& x) {
    IntGrid g(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) g.at(i, j) = x(i, j).get_num();
    return g;
  }
  Matrix to_matrix(const Ring& ring) const {
    Matrix x(ring, m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(at(i, j)) != 0) x.set(i, j, Scalar(at(i, j)));
    return x;
  }
};

ColumnEchelon echelon_integer(const Matrix& input) {
  IntGrid h = IntGrid::from(input);
  IntGrid v = IntGrid::identity(h.n);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  auto col_op = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    h.col_axpy(dst, src, q);
    v.col_axpy(dst, src, q);
  };
  for (std::size_t i = 0; i < h.m && r < h.n; ++i) {
    // Euclid across the columns r.. of row i until a single nonzero remains.
    for (;;) {
      std::size_t best = h.n;
      for (std::size_t j = r; j < h.n; ++j) {
        if (sgn(h.at(i, j)) == 0) continue;
        if (best == h.n || abs(h.at(i, j)) < abs(h.at(i, best))) best = j;
      }
      if (best == h.n) break;
      h.swap_cols(r, best);
      v.swap_cols(r, best);
      bool clean = true;
      for (std::size_t j = r + 1; j < h.n; ++j) {
        if (sgn(h.at(i, j)) == 0) continue;
        mpz_class q = floor_div(h.at(i, j), h.at(i, r));
        col_op(j, r, q);
        if (sgn(h.at(i, j)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(h.at(i, r)) == 0) continue;
    if (sgn(h.at(i, r)) < 0) {
      h.negate_col(r);
      v.negate_col(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      mpz_class q = floor_div(h.at(i, k), h.at(i, r));
      if (sgn(q) != 0) col_op(k, r, q);
    }
    pivots.push_back(i);
    ++r;
  }
  Ring z = Ring::integers();
  return {h.to_matrix(z), v.to_matrix(z), std::move(pivots)};
}

ColumnEchelon echelon_rational(const Matrix& input) {
  const Ring& q = input.ring();
  std::size_t m = input.rows(), n = input.cols();
  std::vector<Scalar> h(m * n), v(n * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i * n + j] = input(i, j);
  for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1;
  auto H = [&](std::size_t i, std::size_t j) -> Scalar& { return h[i * n + j]; };
  auto V = [&](std::size_t i, std::size_t j) -> Scalar& { return v[i * n + j]; };
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t i = 0; i < m && r < n; ++i) {
    std::size_t p = n;
    for (std::size_t j = r; j < n; ++j)
      if (sgn(H(i, j)) != 0) {
        p = j;
        break;
      }
    if (p == n) continue;
    if (p != r) {
      for (std::size_t t = 0; t < m; ++t) std::swap(H(t, p), H(t, r));
      for (std::size_t t = 0; t < n; ++t) std::swap(V(t, p), V(t, r));
    }
    Scalar inv = 1 / H(i, r);
    for (std::size_t t = 0; t < m; ++t) H(t, r) *= inv;
    for (std::size_t t = 0; t < n; ++t) V(t, r) *= inv;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == r || sgn(H(i, j)) == 0) continue;
      Scalar c = H(i, j);
      for (std::size_t t = 0; t < m; ++t) H(t, j) -= c * H(t, r);
      for (std::size_t t = 0; t < n; ++t) V(t, j) -= c * V(t, r);
    }
    pivots.push_back(i);
    ++r;
  }
  return {Matrix(q, m, n, h), Matrix(q, n, n, v), std::move(pivots)};
}

Matrix lift_to_integers(const Matrix& a) {
  Matrix z(Ring::integers(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) z.set(i, j, a(i, j));
  return z;
}

Matrix reduce_into(const Ring& ring, const Matrix& z) {
  Matrix r(ring, z.rows(), z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) r.set(i, j, z(i, j));
  return r;
}

// Solves H·Y = B for an echelon H; Y has zero rows beyond the rank.
std::optional<Matrix> solve_echelon(const ColumnEchelon& e, const Matrix& b) {
  const Ring& ring = e.h.ring();
  std::size_t n = e.h.cols();
  Matrix y(ring, n, b.cols());
  for (std::size_t col = 0; col < b.cols(); ++col) {
    for (std::size_t j = 0; j < e.rank(); ++j) {
      std::size_t p = e.pivot_rows[j];
      Scalar rhs = b(p, col);
      for (std::size_t t = 0; t < j; ++t) rhs -= e.h(p, t) * y(t, col);
      Scalar quot = rhs / e.h(p, j);
      if (!ring.contains(quot)) return std::nullopt;
      y.set(j, col, quot);
    }
  }
  if (!(e.h * y == b)) return std::nullopt;
  return y;
}

ColumnEchelon echelon_for(const Matrix& a) {
  switch (a.ring().kind()) {
    case Ring::Kind::Integer:
      return echelon_integer(a);
    case Ring::Kind::Rational:
      return echelon_rational(a);
    case Ring::Kind::Modular: {
      Matrix lifted = hstack(lift_to_integers(a),
                             Matrix::scalar(Ring::integers(), a.rows(), Scalar(a.ring().modulus())));
      return echelon_integer(lifted);
    }
  }
  throw Error("unsupported ring");
}

}  // namespace

ColumnEchelon column_echelon(const Matrix& a) {
  if (a.ring().kind() == Ring::Kind::Modular)
    throw Error("column echelon form is defined over Z or Q only");
  return echelon_for(a);
}

RightSolver::RightSolver(const Matrix& a)
    : ring_(a.ring()), rows_(a.rows()), cols_(a.cols()), ech_(echelon_for(a)) {}

std::optional<Matrix> RightSolver::solve(const Matrix& b) const {
  if (!(b.ring() == ring_)) throw Error("mixed-ring operands: " + ring_.name() + " and " + b.ring().name());
  if (b.rows() != rows_) throw Error("dimension mismatch in solve_right");
  if (ring_.kind() != Ring::Kind::Modular) {
    auto y = solve_echelon(ech_, b);
    if (!y) return std::nullopt;
    return ech_.v * *y;
  }
  auto y = solve_echelon(ech_, lift_to_integers(b));
  if (!y) return std::nullopt;
  Matrix full = ech_.v * *y;
  return reduce_into(ring_, full.block(0, 0, cols_, b.cols()));
}

Matrix RightSolver::kernel() const {
  std::size_t n = ech_.v.cols();
  Matrix basis = ech_.v.block(0, ech_.rank(), ech_.v.rows(), n - ech_.rank());
  if (ring_.kind() != Ring::Kind::Modular) return basis;
  Matrix top = reduce_into(ring_, basis.block(0, 0, cols_, basis.cols()));
  // Drop generators that vanish mod m.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < top.cols(); ++j)
    if (!top.block(0, j, cols_, 1).is_zero()) keep.push_back(j);
  Matrix out(ring_, cols_, keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) out.set_block(0, k, top.block(0, keep[k], cols_, 1));
  return out;
}

std::optional<Matrix> solve_right(const Matrix& a, const Matrix& b) {
  require_same_ring(a, b);
  if (a.rows() != b.rows()) throw Error("dimension mismatch in solve_right");
  return RightSolver(a).solve(b);
}

Matrix kernel_basis(const Matrix& a) { return RightSolver(a).kernel(); }

SmithForm smith_normal_form(const Matrix& a) {
  if (!a.ring().is_integer()) throw Error("Smith normal form requires the integer ring");
  IntGrid d = IntGrid::from(a);
  IntGrid u = IntGrid::identity(d.m);
  IntGrid v = IntGrid::identity(d.n);
  std::size_t m = d.m, n = d.n;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    auto move_min_to_pivot = [&]() {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (sgn(d.at(i, j)) != 0 && (bi == m || abs(d.at(i, j)) < abs(d.at(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m) return false;
      d.swap_rows(t, bi);
      u.swap_rows(t, bi);
      d.swap_cols(t, bj);
      v.swap_cols(t, bj);
      return true;
    };
    if (!move_min_to_pivot()) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(d.at(i, t)) == 0) continue;
        mpz_class q = floor_div(d.at(i, t), d.at(t, t));
        d.row_axpy(i, t, q);
        u.row_axpy(i, t, q);
        if (sgn(d.at(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(d.at(t, j)) == 0) continue;
        mpz_class q = floor_div(d.at(t, j), d.at(t, t));
        d.col_axpy(j, t, q);
        v.col_axpy(j, t, q);
        if (sgn(d.at(t, j)) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot();
        continue;
      }
      // Enforce divisibility of the remaining block by the pivot.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d.at(i, j).get_mpz_t(), d.at(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      d.row_axpy(t, bad, -1);
      u.row_axpy(t, bad, -1);
    }
    if (sgn(d.at(t, t)) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  Ring z = Ring::integers();
  return {u.to_matrix(z), d.to_matrix(z), v.to_matrix(z)};
}

std::size_t rank(const Matrix& a) {
  switch (a.ring().kind()) {
    case Ring::Kind::Integer:
    case Ring::Kind::Rational:
      return column_echelon(a).rank();
    case Ring::Kind::Modular: {
      if (!a.ring().is_field()) throw Error("rank over Z/m requires m prime");
      const mpz_class& p = a.ring().modulus();
      IntGrid g = IntGrid::from(a);
      std::size_t r = 0;
      for (std::size_t j = 0; j < g.n && r < g.m; ++j) {
        std::size_t piv = g.m;
        for (std::size_t i = r; i < g.m; ++i)
          if (sgn(g.at(i, j)) != 0) {
            piv = i;
            break;
          }
        if (piv == g.m) continue;
        g.swap_rows(r, piv);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), g.at(r, j).get_mpz_t(), p.get_mpz_t());
        for (std::size_t i = r + 1; i < g.m; ++i) {
          if (sgn(g.at(i, j)) == 0) continue;
          mpz_class c = g.at(i, j) * inv;
          g.row_axpy(i, r, c);
          for (std::size_t k = 0; k < g.n; ++k) {
            mpz_class x;
            mpz_fdiv_r(x.get_mpz_t(), g.at(i, k).get_mpz_t(), p.get_mpz_t());
            g.at(i, k) = x;
          }
        }
        ++r;
      }
      return r;
    }
  }
  return 0;
}

Scalar determinant(const Matrix& a) {
  if (!a.is_square()) throw Error("determinant of a non-square matrix");
  if (a.ring().kind() == Ring::Kind::Modular) throw Error("determinant over Z/m is not supported");
  std::size_t n = a.rows();
  std::vector<Scalar> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j);
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t r = c; r < n; ++r)
      if (sgn(m[r * n + c]) != 0) {
        p = r;
        break;
      }
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[c * n + j]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Scalar f = m[r * n + c] / m[c * n + c];
      if (sgn(f) == 0) continue;
      for (std::size_t j = c; j < n; ++j) m[r * n + j] -= f * m[c * n + j];
    }
  }
  return det;
}

}  // namespace hk
