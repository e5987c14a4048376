#include "hk/tmodule.hpp"

#include <random>

#include "hk/linalg.hpp"

namespace hk {

HomotopyStructure::HomotopyStructure(ChainComplex base, std::vector<Scalar> scalars,
                                     std::vector<ChainMap> ops)
    : base_(std::move(base)), scalars_(std::move(scalars)), ops_(std::move(ops)) {
  if (scalars_.size() != ops_.size()) throw Error("one operator per scalar is required");
  for (auto& s : scalars_) s = base_.ring().normalize(s);
  for (const auto& e : ops_) {
    if (e.shift() != 1) throw Error("module operators must raise degree by one");
    if (!(e.source() == base_) || !(e.target() == base_))
      throw Error("module operator is not an endomorphism of the base complex");
  }
}

bool HomotopyStructure::operator==(const HomotopyStructure& o) const {
  return base_ == o.base_ && scalars_ == o.scalars_ && ops_ == o.ops_;
}

std::vector<std::string> check_structure(const HomotopyStructure& m, bool allow_negative) {
  std::vector<std::string> report = validate(m.base(), allow_negative);
  const auto& x = m.base();
  for (std::size_t i = 0; i < m.arity(); ++i) {
    for (int k = x.lo(); k <= x.hi(); ++k) {
      Matrix lhs = x.d(k + 1) * m.op(i, k) + m.op(i, k - 1) * x.d(k);
      Matrix want = Matrix::scalar(x.ring(), x.rank(k), m.scalars()[i]);
      if (!(lhs == want))
        report.push_back("axiom d·e" + std::to_string(i + 1) + " + e" + std::to_string(i + 1) +
                         "·d = s·id fails at degree " + std::to_string(k) + ": deficit " +
                         (want - lhs).to_string());
    }
  }
  return report;
}

HomotopyStructure zero_structure(const Ring& ring, const std::vector<Scalar>& scalars) {
  ChainComplex z(ring);
  std::vector<ChainMap> ops(scalars.size(), ChainMap(z, z, 1));
  return HomotopyStructure(z, scalars, ops);
}

namespace {

// Unknowns are vec(e_k) (column-major) for k = lo..hi-1; equations are
// vec(d_{k+1} e_k + e_{k-1} d_k) for k = lo..hi.
struct HomotopySystem {
  Matrix a;
  std::vector<std::size_t> unknown_offset;  // per degree lo..hi
  std::vector<std::size_t> equation_offset;
};

HomotopySystem build_system(const ChainComplex& x) {
  const Ring& ring = x.ring();
  HomotopySystem sys;
  std::size_t nu = 0, ne = 0;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    sys.unknown_offset.push_back(nu);
    sys.equation_offset.push_back(ne);
    nu += x.rank(k + 1) * x.rank(k);
    ne += x.rank(k) * x.rank(k);
  }
  sys.a = Matrix(ring, ne, nu);
  auto idx = [&](int k) { return static_cast<std::size_t>(k - x.lo()); };
  for (int k = x.lo(); k <= x.hi(); ++k) {
    std::size_t r = x.rank(k);
    if (r == 0) continue;
    if (x.rank(k + 1) > 0 && k + 1 <= x.hi())
      sys.a.set_block(sys.equation_offset[idx(k)], sys.unknown_offset[idx(k)],
                      kron(Matrix::identity(ring, r), x.d(k + 1)));
    if (k - 1 >= x.lo() && x.rank(k - 1) > 0)
      sys.a.set_block(sys.equation_offset[idx(k)], sys.unknown_offset[idx(k - 1)],
                      kron(x.d(k).transpose(), Matrix::identity(ring, r)));
  }
  return sys;
}

Matrix scalar_rhs(const ChainComplex& x, const Scalar& s) {
  std::size_t ne = 0;
  for (int k = x.lo(); k <= x.hi(); ++k) ne += x.rank(k) * x.rank(k);
  Matrix b(x.ring(), ne, 1);
  std::size_t off = 0;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    std::size_t r = x.rank(k);
    for (std::size_t i = 0; i < r; ++i) b.set(off + i * r + i, 0, s);
    off += r * r;
  }
  return b;
}

ChainMap unpack(const ChainComplex& x, const HomotopySystem& sys, const Matrix& sol) {
  ChainMap e(x, x, 1);
  for (int k = x.lo(); k <= x.hi(); ++k) {
    std::size_t rows = x.rank(k + 1), cols = x.rank(k);
    Matrix m(x.ring(), rows, cols);
    std::size_t off = sys.unknown_offset[static_cast<std::size_t>(k - x.lo())];
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t i = 0; i < rows; ++i) m.set(i, j, sol(off + j * rows + i, 0));
    e.set(k, m);
  }
  return e;
}

Matrix perturb(const Matrix& sol, const Matrix& kernel, std::uint64_t seed) {
  if (kernel.cols() == 0) return sol;
  std::mt19937_64 gen(seed);
  Matrix coeffs(sol.ring(), kernel.cols(), 1);
  for (std::size_t j = 0; j < kernel.cols(); ++j)
    coeffs.set(j, 0, Scalar(static_cast<long>(gen() % 5) - 2));
  return sol + kernel * coeffs;
}

std::optional<ChainMap> solve_with(const ChainComplex& x, const HomotopySystem& sys,
                                   const RightSolver& solver, const Scalar& s,
                                   std::optional<std::uint64_t> seed) {
  auto sol = solver.solve(scalar_rhs(x, s));
  if (!sol) return std::nullopt;
  if (seed) sol = perturb(*sol, solver.kernel(), *seed);
  return unpack(x, sys, *sol);
}

}  // namespace

std::optional<ChainMap> solve_null_homotopy(const ChainComplex& x, const Scalar& s,
                                            std::optional<std::uint64_t> seed) {
  HomotopySystem sys = build_system(x);
  RightSolver solver(sys.a);
  return solve_with(x, sys, solver, x.ring().normalize(s), seed);
}

std::optional<FoundStructure> find_structure(const ChainComplex& x, const MultiplicativeSystem& sys,
                                             unsigned k_max, std::optional<std::uint64_t> seed) {
  const Ring& ring = x.ring();
  HomotopySystem hs = build_system(x);
  RightSolver solver(hs.a);
  std::vector<unsigned> exps;
  std::vector<Scalar> scalars;
  std::vector<ChainMap> ops;
  for (std::size_t i = 0; i < sys.generators.size(); ++i) {
    Scalar t = ring.normalize(sys.generators[i]);
    Scalar power = ring.normalize(1);
    std::optional<ChainMap> e;
    std::optional<std::uint64_t> sub_seed;
    if (seed) sub_seed = seed.value() * 1000003ULL + i;
    unsigned k = 0;
    for (; k <= k_max; ++k) {
      e = solve_with(x, hs, solver, power, sub_seed);
      if (e) break;
      power = ring.mul(power, t);
    }
    if (!e) return std::nullopt;
    exps.push_back(k);
    scalars.push_back(power);
    ops.push_back(std::move(*e));
  }
  return FoundStructure{std::move(exps), HomotopyStructure(x, std::move(scalars), std::move(ops))};
}

std::vector<Scalar> multiply(const Ring& ring, const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) throw Error("scalar tuple length mismatch");
  std::vector<Scalar> r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(ring.mul(a[i], b[i]));
  return r;
}

HomotopyStructure restrict(const HomotopyStructure& m, const std::vector<Scalar>& factors) {
  if (factors.size() != m.arity())
    throw Error("restriction needs " + std::to_string(m.arity()) + " factors, got " +
                std::to_string(factors.size()));
  std::vector<ChainMap> ops;
  for (std::size_t i = 0; i < m.arity(); ++i) ops.push_back(m.op(i).scaled(factors[i]));
  return HomotopyStructure(m.base(), multiply(m.ring(), m.scalars(), factors), std::move(ops));
}

bool is_equivariant(const ChainMap& f, const HomotopyStructure& a, const HomotopyStructure& b) {
  if (a.arity() != b.arity() || f.shift() != 0) return false;
  if (!(f.source() == a.base()) || !(f.target() == b.base())) return false;
  int lo = std::min(a.base().lo(), b.base().lo()), hi = std::max(a.base().hi(), b.base().hi());
  for (std::size_t i = 0; i < a.arity(); ++i)
    for (int k = lo; k <= hi; ++k)
      if (!(b.op(i, k) * f.at(k) == f.at(k + 1) * a.op(i, k))) return false;
  return true;
}

}  // namespace hk
