#include "hk/gamma.hpp"

#include "hk/koszul.hpp"

namespace hk {

namespace {

Matrix zeros(const Ring& r, std::size_t rows, std::size_t cols) { return Matrix::zero(r, rows, cols); }

void require_window(const HomotopyStructure& m, int n) {
  if (!m.base().within(0, n)) throw Error("module must lie in the window [0, " + std::to_string(n) + "]");
}

}  // namespace

HomotopyStructure gamma1(const HomotopyStructure& m, int n) {
  if (m.arity() != 1) throw Error("gamma1 needs exactly one generator");
  if (n < 2) throw Error("gamma1 needs n >= 2");
  require_window(m, n);
  const auto& x = m.base();
  const Ring& ring = x.ring();
  const Scalar& s = m.scalars()[0];
  auto r = [&](int k) { return x.rank(k); };
  auto e = [&](int k) { return m.op(0, k); };

  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int k = 0; k <= n - 1; ++k) {
    ranks.push_back(k == n - 2 ? r(n - 2) + r(n) : r(k));
    if (k == n - 1)
      ds.push_back(vstack(x.d(n - 1), e(n - 1)));
    else if (k == n - 2)
      ds.push_back(hstack(x.d(n - 2), zeros(ring, r(n - 3), r(n))));
    else
      ds.push_back(x.d(k));
  }
  ChainComplex g(ring, 0, ranks, ds);
  ChainMap op(g, g, 1);
  for (int k = 0; k <= n - 1; ++k) {
    if (k == n - 1) continue;
    if (k == n - 2)
      op.set(k, hstack(e(n - 2).scaled(s) - e(n - 2) * e(n - 3) * x.d(n - 2), x.d(n).scaled(s)));
    else if (k == n - 3)
      op.set(k, vstack(e(k).scaled(s), zeros(ring, r(n), r(k))));
    else
      op.set(k, e(k).scaled(s));
  }
  return HomotopyStructure(g, ring.mul(s, s), op);
}

ChainMap gamma1_map(const ChainMap& f, const HomotopyStructure& a, const HomotopyStructure& b, int n) {
  auto ga = gamma1(a, n), gb = gamma1(b, n);
  ChainMap out(ga.base(), gb.base(), 0);
  for (int k = 0; k <= n - 1; ++k) out.set(k, k == n - 2 ? block_diag(f.at(n - 2), f.at(n)) : f.at(k));
  return out;
}

GammaResult gamma_general(const HomotopyStructure& m, int n) {
  int dim = static_cast<int>(m.arity());
  if (dim < 1) throw Error("gamma needs at least one generator");
  if (n < dim + 1) throw Error("gamma needs n >= d+1");
  require_window(m, n);
  const auto& x = m.base();
  const Ring& ring = x.ring();
  auto s2 = multiply(ring, m.scalars(), m.scalars());
  std::size_t rn = x.rank(n), rn1 = x.rank(n - 1);

  ChainMap f = counit_map(m, n);
  HomotopyStructure my = counit_target(m, n);
  ConeResult cone = cone_mixed(f, m, my);
  const ChainComplex& cf = cone.cone.base();

  HomotopyStructure dsk = disk(ring, rn, n + 1, s2);
  ChainMap iota(dsk.base(), cf, 0);
  iota.set(n + 1, vstack(zeros(ring, cf.rank(n + 1) - rn, rn), Matrix::identity(ring, rn)));
  iota.set(n, vstack(Matrix::identity(ring, rn), -x.d(n)));

  // Q_k = Cf_k below n, Q_n = σX_{n-1} via (y, σz) ↦ σ(z + d y).
  int lo = cf.lo();
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  Matrix section = vstack(zeros(ring, rn, rn1), Matrix::identity(ring, rn1));
  for (int k = lo; k <= n; ++k) {
    ranks.push_back(k < n ? cf.rank(k) : rn1);
    ds.push_back(k < n ? cf.d(k) : cf.d(n) * section);
  }
  ChainComplex qc(ring, lo, ranks, ds);
  Matrix qn = hstack(x.d(n), Matrix::identity(ring, rn1));
  ChainMap q(cf, qc, 0);
  for (int k = cf.lo(); k <= cf.hi(); ++k) {
    if (k < n) q.set(k, Matrix::identity(ring, cf.rank(k)));
    else if (k == n) q.set(k, qn);
  }
  std::vector<ChainMap> ops;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    ChainMap e(qc, qc, 1);
    for (int k = lo; k < n; ++k) e.set(k, k < n - 1 ? cone.cone.op(i, k) : qn * cone.cone.op(i, k));
    ops.push_back(e);
  }
  HomotopyStructure quotient(qc, s2, ops);
  HomotopyStructure gam = suspend(quotient, -1);
  HomotopyStructure kos = suspend(cone.left, -1);
  HomotopyStructure dcf = suspend(cone.cone, -1);

  ModuleSes first{kos, dcf, restrict(m, m.scalars()), suspend_map(cone.inclusion, -1),
                  suspend_map(cone.projection, -1)};
  ModuleSes second{suspend(dsk, -1), dcf, gam, suspend_map(iota, -1), suspend_map(q, -1)};
  return GammaResult{std::move(f),   std::move(cone),     std::move(dsk), std::move(iota),
                     std::move(q),   std::move(quotient), std::move(gam), std::move(kos),
                     std::move(first), std::move(second)};
}

ChainMap gamma_map(const ChainMap& f, const HomotopyStructure& a, const HomotopyStructure& b, int n) {
  auto ga = gamma_general(a, n).gamma, gb = gamma_general(b, n).gamma;
  int dim = static_cast<int>(a.arity());
  const Ring& ring = a.ring();
  ChainMap out(ga.base(), gb.base(), 0);
  for (int k = ga.base().lo(); k <= ga.base().hi(); ++k) {
    if (k == n - 1) {
      out.set(k, f.at(n - 1));
    } else {
      std::size_t c = binomial(dim, n - k - 1);
      out.set(k, block_diag(kron(f.at(n), Matrix::identity(ring, c)), f.at(k)));
    }
  }
  return out;
}

ChainMap gamma_comparison(const HomotopyStructure& m, int n) {
  auto g1 = gamma1(m, n);
  auto gg = gamma_general(m, n).gamma;
  const auto& x = m.base();
  const Ring& ring = x.ring();
  ChainMap out(g1.base(), gg.base(), 0);
  for (int k = 0; k <= n - 1; ++k) {
    if (k == n - 2) {
      Matrix sign = Matrix::scalar(ring, x.rank(n), n % 2 == 0 ? 1 : -1);
      out.set(k, block2(zeros(ring, x.rank(n), x.rank(n - 2)), sign, Matrix::identity(ring, x.rank(n - 2)),
                        zeros(ring, x.rank(n - 2), x.rank(n))));
    } else {
      out.set(k, Matrix::identity(ring, x.rank(k)));
    }
  }
  return out;
}

HomotopyStructure disk_gamma_model(const Ring& ring, std::size_t rank, int n, const std::vector<Scalar>& s) {
  int dim = static_cast<int>(s.size());
  return suspend(restrict(tensor_module(koszul(ring, s), rank), s), n - dim - 1);
}

ChainMap disk_gamma_iso(const Ring& ring, std::size_t rank, int n, const std::vector<Scalar>& s) {
  int dim = static_cast<int>(s.size());
  auto model = disk_gamma_model(ring, rank, n, s);
  auto target = gamma_general(disk(ring, rank, n, s), n).gamma;
  ChainMap phi = suspend_map(koszul_tensor_iso(ring, s, rank), n - dim - 1);
  ChainMap out(model.base(), target.base(), 0);
  for (int k = model.base().lo(); k <= model.base().hi(); ++k) out.set(k, phi.at(k));
  return out;
}

}  // namespace hk
