#include "hk/random.hpp"

#include <algorithm>

#include "hk/construct.hpp"
#include "hk/koszul.hpp"

namespace hk {

long uniform(std::mt19937_64& gen, long a, long b) {
  return a + static_cast<long>(gen() % static_cast<std::uint64_t>(b - a + 1));
}

Matrix random_matrix(std::mt19937_64& gen, const Ring& ring, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar(uniform(gen, -bound, bound)));
  return m;
}

std::pair<Matrix, Matrix> random_unimodular(std::mt19937_64& gen, const Ring& ring, std::size_t n,
                                            std::size_t steps) {
  Matrix p = Matrix::identity(ring, n), inv = Matrix::identity(ring, n);
  if (n == 0) return {p, inv};
  for (std::size_t step = 0; step < steps; ++step) {
    std::size_t i = static_cast<std::size_t>(uniform(gen, 0, static_cast<long>(n) - 1));
    if (n == 1 || uniform(gen, 0, 3) == 0) {
      // negate row i of p and column i of inv
      for (std::size_t c = 0; c < n; ++c) p.set(i, c, -p(i, c));
      for (std::size_t r = 0; r < n; ++r) inv.set(r, i, -inv(r, i));
      continue;
    }
    std::size_t j = static_cast<std::size_t>(uniform(gen, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    Scalar c(uniform(gen, 0, 1) == 0 ? -1 : 1);
    for (std::size_t col = 0; col < n; ++col) p.set(i, col, ring.add(p(i, col), ring.mul(c, p(j, col))));
    for (std::size_t r = 0; r < n; ++r) inv.set(r, j, ring.sub(inv(r, j), ring.mul(c, inv(r, i))));
  }
  return {p, inv};
}

HomotopyStructure change_basis(const HomotopyStructure& m, const std::vector<std::pair<Matrix, Matrix>>& p) {
  const auto& x = m.base();
  const Ring& ring = x.ring();
  auto fwd = [&](int k) {
    if (k < x.lo() || k > x.hi()) return Matrix::identity(ring, 0);
    return p.at(static_cast<std::size_t>(k - x.lo())).first;
  };
  auto back = [&](int k) {
    if (k < x.lo() || k > x.hi()) return Matrix::identity(ring, 0);
    return p.at(static_cast<std::size_t>(k - x.lo())).second;
  };
  std::vector<Matrix> ds;
  for (int k = x.lo(); k <= x.hi(); ++k) ds.push_back(fwd(k - 1) * x.d(k) * back(k));
  ChainComplex y(ring, x.lo(), x.ranks(), ds);
  std::vector<ChainMap> ops;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    ChainMap e(y, y, 1);
    for (int k = x.lo(); k <= x.hi(); ++k) e.set(k, fwd(k + 1) * m.op(i, k) * back(k));
    ops.push_back(e);
  }
  return HomotopyStructure(y, m.scalars(), ops);
}

HomotopyStructure random_twist(std::mt19937_64& gen, const HomotopyStructure& m) {
  const auto& x = m.base();
  const Ring& ring = x.ring();
  std::vector<ChainMap> ops;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    ChainMap theta(x, x, 2);
    for (int k = x.lo(); k <= x.hi(); ++k) {
      Matrix t = random_matrix(gen, ring, x.rank(k + 2), x.rank(k), 1);
      if (uniform(gen, 0, 1) == 0) t = Matrix::zero(ring, t.rows(), t.cols());
      theta.set(k, t);
    }
    ChainMap e(x, x, 1);
    for (int k = x.lo(); k <= x.hi(); ++k)
      e.set(k, m.op(i, k) + x.d(k + 2) * theta.at(k) - theta.at(k - 1) * x.d(k));
    ops.push_back(e);
  }
  return HomotopyStructure(x, m.scalars(), ops);
}

ChainMap random_chain_map(std::mt19937_64& gen, const ChainComplex& x, const ChainComplex& y) {
  const Ring& ring = x.ring();
  ChainMap h(x, y, 1);
  for (int k = x.lo(); k <= x.hi(); ++k) h.set(k, random_matrix(gen, ring, y.rank(k + 1), x.rank(k), 2));
  ChainMap f(x, y, 0);
  for (int k = x.lo(); k <= x.hi(); ++k) f.set(k, y.d(k + 1) * h.at(k) + h.at(k - 1) * x.d(k));
  if (x == y) f = f + ChainMap::identity(x).scaled(Scalar(uniform(gen, -2, 2)));
  return f;
}

namespace {

bool bounded(const HomotopyStructure& m, long bound) {
  if (m.ring().is_field() && m.ring().kind() == Ring::Kind::Rational) return true;
  auto ok = [&](const Matrix& a) {
    if (!m.ring().is_integer()) return true;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (abs(a(i, j)) > bound) return false;
    return true;
  };
  const auto& x = m.base();
  for (int k = x.lo(); k <= x.hi(); ++k) {
    if (!ok(x.d(k))) return false;
    for (std::size_t i = 0; i < m.arity(); ++i)
      if (!ok(m.op(i, k))) return false;
  }
  return true;
}

// A divisor a of every scalar, so that e = s/a stays in the ring.
Scalar common_divisor(std::mt19937_64& gen, const Ring& ring, const std::vector<Scalar>& s) {
  if (ring.kind() == Ring::Kind::Rational) return Scalar(uniform(gen, 1, 3));
  mpz_class g = 0;
  for (const auto& x : s) g = gcd(g, mpz_class(x.get_num()));
  if (g == 0) return Scalar(uniform(gen, 1, 3));
  std::vector<long> divs;
  for (long a = 1; a <= 64 && a <= g; ++a)
    if (g % a == 0) divs.push_back(a);
  long a = divs[static_cast<std::size_t>(uniform(gen, 0, static_cast<long>(divs.size()) - 1))];
  return Scalar(uniform(gen, 0, 1) == 0 ? a : -a);
}

HomotopyStructure two_term(const Ring& ring, const std::vector<Scalar>& s, const Scalar& a, int k) {
  ChainComplex x(ring, k - 1, {1, 1}, {Matrix(ring, 0, 1), Matrix(ring, 1, 1, {a})});
  std::vector<ChainMap> ops;
  for (const auto& si : s) {
    ChainMap e(x, x, 1);
    e.set(k - 1, Matrix(ring, 1, 1, {Scalar(si / a)}));
    ops.push_back(e);
  }
  return HomotopyStructure(x, s, ops);
}

bool fits(const HomotopyStructure& sum, const HomotopyStructure& piece, const RandomOptions& opt) {
  for (int k = opt.lo; k <= opt.hi; ++k)
    if (sum.base().rank(k) + piece.base().rank(k) > opt.max_rank) return false;
  return piece.base().within(opt.lo, opt.hi);
}

}  // namespace

HomotopyStructure random_structure(std::mt19937_64& gen, const Ring& ring, const std::vector<Scalar>& s_in,
                                   const RandomOptions& opt) {
  if (opt.hi <= opt.lo) throw Error("random_structure needs a window of length >= 1");
  std::vector<Scalar> s;
  for (const auto& x : s_in) s.push_back(ring.normalize(x));
  int dim = static_cast<int>(s.size());
  HomotopyStructure sum = rewindowed(zero_structure(ring, s), opt.lo, opt.hi);
  for (std::size_t p = 0; p < opt.pieces; ++p) {
    long kind = opt.contractible ? 0 : uniform(gen, 0, 2);
    if (kind == 2 && opt.hi - opt.lo < dim) kind = 1;
    std::optional<HomotopyStructure> piece;
    if (kind == 0) {
      piece = disk(ring, 1, static_cast<int>(uniform(gen, opt.lo + 1, opt.hi)), s);
    } else if (kind == 1) {
      Scalar a = common_divisor(gen, ring, s);
      piece = two_term(ring, s, a, static_cast<int>(uniform(gen, opt.lo + 1, opt.hi)));
    } else {
      piece = suspend(koszul(ring, s), static_cast<int>(uniform(gen, opt.lo, opt.hi - dim)));
    }
    if (fits(sum, *piece, opt)) sum = rewindowed(direct_sum(sum, *piece), opt.lo, opt.hi);
  }
  if (!opt.mix) return sum;
  for (int attempt = 0; attempt < 20; ++attempt) {
    HomotopyStructure t = random_twist(gen, sum);
    std::vector<std::pair<Matrix, Matrix>> bases;
    for (int k = opt.lo; k <= opt.hi; ++k)
      bases.push_back(random_unimodular(gen, ring, sum.base().rank(k), static_cast<std::size_t>(uniform(gen, 0, 4))));
    HomotopyStructure out = change_basis(t, bases);
    if (bounded(out, opt.entry_bound)) return out;
  }
  return sum;
}

}  // namespace hk
