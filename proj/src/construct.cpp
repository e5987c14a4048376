#include "hk/construct.hpp"

#include <algorithm>
#include <functional>

#include "hk/linalg.hpp"

namespace hk {
namespace {

ChainMap map_from(const ChainComplex& src, const ChainComplex& tgt, int shift,
                  const std::function<Matrix(int)>& component) {
  ChainMap f(src, tgt, shift);
  for (int k = src.lo(); k <= src.hi(); ++k) f.set(k, component(k));
  return f;
}

std::vector<ChainMap> ops_from(const ChainComplex& x, std::size_t count,
                               const std::function<Matrix(std::size_t, int)>& component) {
  std::vector<ChainMap> ops;
  for (std::size_t i = 0; i < count; ++i)
    ops.push_back(map_from(x, x, 1, [&](int k) { return component(i, k); }));
  return ops;
}

Matrix zeros(const Ring& r, std::size_t rows, std::size_t cols) { return Matrix::zero(r, rows, cols); }

}  // namespace

ChainMap suspend_map(const ChainMap& f, int k) {
  ChainComplex src = f.source().shifted(k), tgt = f.target().shifted(k);
  return map_from(src, tgt, f.shift(), [&](int deg) { return f.at(deg - k); });
}

HomotopyStructure suspend(const HomotopyStructure& m, int k) {
  ChainComplex x = m.base().shifted(k);
  Scalar sign = (k % 2 != 0) ? -1 : 1;
  auto ops = ops_from(x, m.arity(), [&](std::size_t i, int deg) { return m.op(i, deg - k).scaled(sign); });
  return HomotopyStructure(x, m.scalars(), std::move(ops));
}

HomotopyStructure dual(const HomotopyStructure& m, int n) {
  const auto& x = m.base();
  if (!x.within(0, n)) throw Error("dual needs the base inside the window [0, n]");
  const Ring& ring = x.ring();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int i = 0; i <= n; ++i) {
    ranks.push_back(x.rank(n - i));
    // (X*)_i -> (X*)_{i-1} is φ ↦ φ∘d_{n-i+1}.
    ds.push_back(i == 0 ? zeros(ring, 0, x.rank(n)) : x.d(n - i + 1).transpose());
  }
  ChainComplex dx(ring, 0, std::move(ranks), std::move(ds));
  auto ops = ops_from(dx, m.arity(), [&](std::size_t j, int i) { return m.op(j, n - i - 1).transpose(); });
  return HomotopyStructure(dx, m.scalars(), std::move(ops));
}

HomotopyStructure disk(const Ring& ring, std::size_t rank, int n, const std::vector<Scalar>& scalars) {
  ChainComplex x(ring, n - 1, {rank, rank}, {zeros(ring, 0, rank), Matrix::identity(ring, rank)});
  auto ops = ops_from(x, scalars.size(), [&](std::size_t i, int k) {
    return k == n - 1 ? Matrix::scalar(ring, rank, scalars[i]) : zeros(ring, x.rank(k + 1), x.rank(k));
  });
  return HomotopyStructure(x, scalars, std::move(ops));
}

HomotopyStructure direct_sum(const HomotopyStructure& a, const HomotopyStructure& b) {
  if (a.scalars() != b.scalars()) throw Error("direct sum needs equal scalars");
  const auto &x = a.base(), &y = b.base();
  int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int k = lo; k <= hi; ++k) {
    ranks.push_back(x.rank(k) + y.rank(k));
    ds.push_back(block_diag(x.d(k), y.d(k)));
  }
  ChainComplex s(x.ring(), lo, std::move(ranks), std::move(ds));
  auto ops = ops_from(s, a.arity(), [&](std::size_t i, int k) { return block_diag(a.op(i, k), b.op(i, k)); });
  return HomotopyStructure(s, a.scalars(), std::move(ops));
}

ChainComplex cone_complex(const ChainMap& f) {
  if (f.shift() != 0) throw Error("cone of a map of nonzero degree");
  const auto &x = f.source(), &y = f.target();
  const Ring& ring = x.ring();
  int lo = std::min(y.lo(), x.lo() + 1), hi = std::max(y.hi(), x.hi() + 1);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int k = lo; k <= hi; ++k) {
    ranks.push_back(y.rank(k) + x.rank(k - 1));
    ds.push_back(block2(y.d(k), f.at(k - 1), zeros(ring, x.rank(k - 2), y.rank(k)), -x.d(k - 1)));
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(ds));
}

namespace {

ConeResult cone_with(const ChainMap& f, const HomotopyStructure& mx, const HomotopyStructure& my,
                     const std::vector<Scalar>& cone_scalars,
                     const std::function<Matrix(std::size_t, int)>& action, HomotopyStructure left,
                     HomotopyStructure right) {
  ChainComplex c = cone_complex(f);
  const auto &x = mx.base(), &y = my.base();
  const Ring& ring = c.ring();
  auto ops = ops_from(c, mx.arity(), action);
  HomotopyStructure cone(c, cone_scalars, std::move(ops));
  ChainMap inc = map_from(y, c, 0, [&](int k) {
    return vstack(Matrix::identity(ring, y.rank(k)), zeros(ring, x.rank(k - 1), y.rank(k)));
  });
  ChainComplex sx = x.shifted(1);
  ChainMap proj = map_from(c, sx, 0, [&](int k) {
    return hstack(zeros(ring, x.rank(k - 1), y.rank(k)), Matrix::identity(ring, x.rank(k - 1)));
  });
  return {std::move(cone), std::move(inc), std::move(proj), std::move(left), std::move(right)};
}

void check_cone_inputs(const ChainMap& f, const HomotopyStructure& mx, const HomotopyStructure& my) {
  if (!(f.source() == mx.base()) || !(f.target() == my.base()))
    throw Error("structure/complex mismatch: the map's ends are not the structures' bases");
  if (mx.arity() != my.arity()) throw Error("structure arity mismatch");
  if (auto bad = validate_chain_map(f); !bad.empty()) throw Error("not a chain map: " + bad.front());
}

}  // namespace

ConeResult cone_mixed(const ChainMap& f, const HomotopyStructure& mx, const HomotopyStructure& my) {
  check_cone_inputs(f, mx, my);
  const Ring& ring = f.source().ring();
  const auto &x = mx.base(), &y = my.base();
  const auto& s = mx.scalars();
  const auto& t = my.scalars();
  auto action = [&](std::size_t i, int k) {
    // (Y_k ⊕ σX_{k-1}) -> (Y_{k+1} ⊕ σX_k)
    Matrix ey = my.op(i, k);
    Matrix ex = mx.op(i, k - 1);
    return block2(ey.scaled(s[i]), ey * f.at(k) * ex, zeros(ring, x.rank(k), y.rank(k)), ex.scaled(-t[i]));
  };
  return cone_with(f, mx, my, multiply(ring, s, t), action, restrict(my, s), restrict(suspend(mx), t));
}

ConeResult cone_same(const ChainMap& f, const HomotopyStructure& mx, const HomotopyStructure& my) {
  check_cone_inputs(f, mx, my);
  if (mx.scalars() != my.scalars()) throw Error("cone_same needs equal scalars");
  if (!is_equivariant(f, mx, my)) throw Error("f is not e-equivariant");
  const Ring& ring = f.source().ring();
  const auto &x = mx.base(), &y = my.base();
  auto action = [&](std::size_t i, int k) {
    return block2(my.op(i, k), zeros(ring, y.rank(k + 1), x.rank(k - 1)), zeros(ring, x.rank(k), y.rank(k)),
                  -mx.op(i, k - 1));
  };
  return cone_with(f, mx, my, mx.scalars(), action, my, suspend(mx));
}

PeelStep peel_top(const HomotopyStructure& m, int n) {
  const auto& x = m.base();
  const Ring& ring = x.ring();
  if (auto t = x.top(); t && *t > n) throw Error("peel_top: base has degrees above n");
  auto h = find_contraction(x);
  if (!h) throw Error("peel_top: module is not contractible");
  std::size_t rn = x.rank(n), rn1 = x.rank(n - 1);
  Matrix dn = x.d(n);
  Matrix hn1 = h->at(n - 1);
  Matrix pi = Matrix::identity(ring, rn1) - dn * hn1;  // projection killing d(X_n)
  Matrix basis = rn1 == 0 ? zeros(ring, 0, 0) : kernel_basis(hn1);
  if (basis.cols() != rn1 - rn) throw Error("peel_top: quotient basis extraction failed");
  Matrix left_inv = zeros(ring, basis.cols(), rn1);
  if (basis.cols() > 0) {
    auto li = solve_right(basis.transpose(), Matrix::identity(ring, basis.cols()));
    if (!li) throw Error("peel_top: quotient basis extraction failed");
    left_inv = li->transpose();
  }
  Matrix qn1 = left_inv * pi;

  HomotopyStructure dsk = disk(ring, rn, n, m.scalars());
  ChainMap inc = map_from(dsk.base(), x, 0, [&](int k) {
    if (k == n) return Matrix::identity(ring, rn);
    if (k == n - 1) return dn;
    return zeros(ring, x.rank(k), 0);
  });

  int lo = std::min(x.lo(), n - 1);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int k = lo; k <= n - 1; ++k) {
    ranks.push_back(k == n - 1 ? basis.cols() : x.rank(k));
    ds.push_back(k == n - 1 ? x.d(k) * basis : x.d(k));
  }
  ChainComplex q(ring, lo, std::move(ranks), std::move(ds));
  auto ops = ops_from(q, m.arity(), [&](std::size_t i, int k) {
    if (k == n - 2) return qn1 * m.op(i, k);
    if (k >= n - 1) return zeros(ring, q.rank(k + 1), q.rank(k));
    return m.op(i, k);
  });
  HomotopyStructure quotient(q, m.scalars(), std::move(ops));
  ChainMap qmap = map_from(x, q, 0, [&](int k) {
    if (k == n - 1) return qn1;
    if (k >= n) return zeros(ring, 0, x.rank(k));
    return Matrix::identity(ring, x.rank(k));
  });
  return {std::move(dsk), std::move(inc), std::move(qmap), std::move(quotient)};
}

std::vector<PeelStep> peel_all(const HomotopyStructure& m, int n, int bottom) {
  std::vector<PeelStep> steps;
  HomotopyStructure cur = m;
  for (int top = n; top > bottom; --top) {
    steps.push_back(peel_top(cur, top));
    cur = steps.back().quotient;
  }
  if (!cur.base().is_zero()) throw Error("peeling did not exhaust the module");
  return steps;
}

HomotopyStructure glue_extension(const ChainMap& f, const ChainMap& g, const HomotopyStructure& ma,
                                 const HomotopyStructure& mc) {
  if (!(f.source() == ma.base()) || !(g.target() == mc.base()))
    throw Error("glue_extension: structures do not sit on the sequence's ends");
  if (ma.arity() != mc.arity()) throw Error("glue_extension: arity mismatch");
  const auto& b = f.target();
  const Ring& ring = b.ring();
  int lo = b.lo(), hi = b.hi();
  // Degreewise splittings: g∘sec = id, ret∘f = id, f∘ret + sec∘g = id.
  ChainMap sec(mc.base(), b, 0), ret(b, ma.base(), 0);
  for (int k = std::min(lo, mc.base().lo()); k <= std::max(hi, mc.base().hi()); ++k) {
    Matrix gk = g.at(k), fk = f.at(k);
    auto s = solve_right(gk, Matrix::identity(ring, gk.rows()));
    if (!s) throw Error("glue_extension: no splitting of g at degree " + std::to_string(k));
    sec.set(k, *s);
    auto r = solve_right(fk, Matrix::identity(ring, b.rank(k)) - *s * gk);
    if (!r) throw Error("glue_extension: no retraction of f at degree " + std::to_string(k));
    ret.set(k, *r);
  }
  std::vector<Scalar> scalars = multiply(ring, ma.scalars(), mc.scalars());
  auto ops = ops_from(b, ma.arity(), [&](std::size_t i, int k) {
    const Scalar& s = ma.scalars()[i];
    const Scalar& t = mc.scalars()[i];
    auto lifted = [&](int j) { return sec.at(j + 1) * mc.op(i, j) * g.at(j); };  // e'' : B_j -> B_{j+1}
    Matrix a = b.d(k + 1) * lifted(k) + lifted(k - 1) * b.d(k);
    Matrix cyc = ret.at(k) * (a - Matrix::scalar(ring, b.rank(k), t));
    return lifted(k).scaled(s) - f.at(k + 1) * ma.op(i, k) * cyc;
  });
  return HomotopyStructure(b, std::move(scalars), std::move(ops));
}

ChainComplex tensor_free(const ChainComplex& x, const ChainComplex& y) {
  if (!(x.ring() == y.ring())) throw Error("tensor of complexes over different rings");
  const Ring& ring = x.ring();
  int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  if (x.ranks().empty() || y.ranks().empty()) return ChainComplex(ring);
  // Offsets of the (i, k-i) block inside degree k.
  auto offset = [&](int k, int i) {
    std::size_t off = 0;
    for (int a = x.lo(); a < i; ++a) off += x.rank(a) * y.rank(k - a);
    return off;
  };
  auto total = [&](int k) { return offset(k, x.hi() + 1); };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int k = lo; k <= hi; ++k) {
    ranks.push_back(total(k));
    Matrix dk(ring, total(k - 1), total(k));
    for (int i = x.lo(); i <= x.hi(); ++i) {
      int j = k - i;
      std::size_t ri = x.rank(i), rj = y.rank(j);
      if (ri * rj == 0) continue;
      std::size_t col = offset(k, i);
      if (x.rank(i - 1) > 0) dk.set_block(offset(k - 1, i - 1), col, kron(x.d(i), Matrix::identity(ring, rj)));
      if (y.rank(j - 1) > 0) {
        Matrix part = kron(Matrix::identity(ring, ri), y.d(j));
        dk.set_block(offset(k - 1, i), col, (i % 2 != 0) ? -part : part);
      }
    }
    ds.push_back(dk);
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(ds));
}

HomotopyStructure tensor_module(const HomotopyStructure& m, std::size_t rank) {
  const Ring& ring = m.ring();
  Matrix id = Matrix::identity(ring, rank);
  const auto& x = m.base();
  std::vector<Matrix> ds;
  std::vector<std::size_t> ranks;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    ranks.push_back(x.rank(k) * rank);
    ds.push_back(kron(x.d(k), id));
  }
  ChainComplex t(ring, x.lo(), std::move(ranks), std::move(ds));
  auto ops = ops_from(t, m.arity(), [&](std::size_t i, int k) { return kron(m.op(i, k), id); });
  return HomotopyStructure(t, m.scalars(), std::move(ops));
}

HomotopyStructure module_tensor(std::size_t rank, const HomotopyStructure& m) {
  const Ring& ring = m.ring();
  Matrix id = Matrix::identity(ring, rank);
  const auto& x = m.base();
  std::vector<Matrix> ds;
  std::vector<std::size_t> ranks;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    ranks.push_back(x.rank(k) * rank);
    ds.push_back(kron(id, x.d(k)));
  }
  ChainComplex t(ring, x.lo(), std::move(ranks), std::move(ds));
  auto ops = ops_from(t, m.arity(), [&](std::size_t i, int k) { return kron(id, m.op(i, k)); });
  return HomotopyStructure(t, m.scalars(), std::move(ops));
}

HomotopyStructure rewindowed(const HomotopyStructure& m, int a, int b) {
  ChainComplex x = m.base().rewindowed(a, b);
  auto ops = ops_from(x, m.arity(), [&](std::size_t i, int k) { return m.op(i, k); });
  return HomotopyStructure(x, m.scalars(), std::move(ops));
}

ChainMap rewindowed(const ChainMap& f, const ChainComplex& source, const ChainComplex& target) {
  if (!(source == f.source()) || !(target == f.target())) throw Error("rewindowed map: complexes differ");
  return map_from(source, target, f.shift(), [&](int k) { return f.at(k); });
}

}  // namespace hk
