#include "hk/complex.hpp"

#include <algorithm>

#include "hk/linalg.hpp"

namespace hk {

ChainComplex::ChainComplex(Ring ring, int lo, std::vector<std::size_t> ranks,
                           std::vector<Matrix> diffs)
    : ring_(std::move(ring)), lo_(lo), ranks_(std::move(ranks)), diffs_(std::move(diffs)) {
  if (diffs_.size() != ranks_.size()) throw Error("complex needs one differential per stored degree");
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    int deg = lo_ + static_cast<int>(i);
    const Matrix& m = diffs_[i];
    if (!(m.ring() == ring_)) throw Error("differential in degree " + std::to_string(deg) + " over wrong ring");
    if (m.rows() != rank(deg - 1) || m.cols() != ranks_[i])
      throw Error("differential in degree " + std::to_string(deg) + " has shape " +
                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                  std::to_string(rank(deg - 1)) + "x" + std::to_string(ranks_[i]));
  }
}

ChainComplex ChainComplex::from_differentials(Ring ring, int lo, const std::vector<Matrix>& diffs) {
  if (diffs.empty()) return ChainComplex(ring);
  std::vector<std::size_t> ranks{diffs.front().rows()};
  std::vector<Matrix> ds{Matrix::zero(ring, 0, diffs.front().rows())};
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].rows() != ranks.back())
      throw Error("consecutive differentials have incompatible shapes");
    ranks.push_back(diffs[i].cols());
    ds.push_back(diffs[i]);
  }
  return ChainComplex(std::move(ring), lo, std::move(ranks), std::move(ds));
}

std::size_t ChainComplex::rank(int degree) const {
  if (degree < lo_ || degree > hi()) return 0;
  return ranks_[static_cast<std::size_t>(degree - lo_)];
}

Matrix ChainComplex::d(int degree) const {
  if (degree < lo_ || degree > hi()) return Matrix::zero(ring_, rank(degree - 1), rank(degree));
  return diffs_[static_cast<std::size_t>(degree - lo_)];
}

std::optional<int> ChainComplex::bottom() const {
  for (std::size_t i = 0; i < ranks_.size(); ++i)
    if (ranks_[i] != 0) return lo_ + static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> ChainComplex::top() const {
  for (std::size_t i = ranks_.size(); i-- > 0;)
    if (ranks_[i] != 0) return lo_ + static_cast<int>(i);
  return std::nullopt;
}

bool ChainComplex::within(int a, int b) const {
  auto lo = bottom();
  if (!lo) return true;
  return *lo >= a && *top() <= b;
}

std::size_t ChainComplex::total_rank() const {
  std::size_t t = 0;
  for (auto r : ranks_) t += r;
  return t;
}

long ChainComplex::euler_characteristic() const {
  long chi = 0;
  for (int k = lo_; k <= hi(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(rank(k));
  return chi;
}

ChainComplex ChainComplex::rewindowed(int a, int b) const {
  if (!within(a, b)) throw Error("rewindow would drop nonzero degrees");
  std::vector<std::size_t> ranks;
  std::vector<Matrix> ds;
  for (int k = a; k <= b; ++k) {
    ranks.push_back(rank(k));
    ds.push_back(d(k));
  }
  return ChainComplex(ring_, a, std::move(ranks), std::move(ds));
}

ChainComplex ChainComplex::shifted(int k) const {
  std::vector<Matrix> ds;
  bool odd = (k % 2) != 0;
  for (const auto& m : diffs_) ds.push_back(odd ? -m : m);
  return ChainComplex(ring_, lo_ + k, ranks_, std::move(ds));
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  if (!(ring_ == o.ring_)) return false;
  int a = std::min(lo_, o.lo_), b = std::max(hi(), o.hi());
  for (int k = a; k <= b; ++k)
    if (rank(k) != o.rank(k)) return false;
  for (int k = a; k <= b; ++k)
    if (!(d(k) == o.d(k))) return false;
  return true;
}

// ---------------------------------------------------------------------------

ChainMap::ChainMap(ChainComplex source, ChainComplex target, int shift)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift) {
  if (!(source_.ring() == target_.ring())) throw Error("chain map between complexes over different rings");
  for (int k = source_.lo(); k <= source_.hi(); ++k)
    mats_.push_back(Matrix::zero(source_.ring(), target_.rank(k + shift_), source_.rank(k)));
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, int shift, std::vector<Matrix> mats)
    : ChainMap(std::move(source), std::move(target), shift) {
  if (mats.size() != mats_.size())
    throw Error("chain map needs " + std::to_string(mats_.size()) + " components, got " +
                std::to_string(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i) set(source_.lo() + static_cast<int>(i), mats[i]);
}

ChainMap ChainMap::identity(const ChainComplex& x) { return scalar(x, 1); }

ChainMap ChainMap::scalar(const ChainComplex& x, const Scalar& s) {
  ChainMap f(x, x, 0);
  for (int k = x.lo(); k <= x.hi(); ++k) f.set(k, Matrix::scalar(x.ring(), x.rank(k), s));
  return f;
}

Matrix ChainMap::at(int degree) const {
  if (degree < source_.lo() || degree > source_.hi())
    return Matrix::zero(source_.ring(), target_.rank(degree + shift_), source_.rank(degree));
  return mats_[static_cast<std::size_t>(degree - source_.lo())];
}

void ChainMap::set(int degree, const Matrix& m) {
  if (m.rows() != target_.rank(degree + shift_) || m.cols() != source_.rank(degree))
    throw Error("map component at degree " + std::to_string(degree) + " has shape " +
                std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                std::to_string(target_.rank(degree + shift_)) + "x" +
                std::to_string(source_.rank(degree)));
  if (!(m.ring() == source_.ring())) throw Error("map component over wrong ring");
  if (degree < source_.lo() || degree > source_.hi()) {
    if (!m.empty()) throw Error("map component outside the source window");
    return;
  }
  mats_[static_cast<std::size_t>(degree - source_.lo())] = m;
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
  ChainMap r(source_, target_, shift_);
  for (int k = source_.lo(); k <= source_.hi(); ++k) r.set(k, at(k) + o.at(k));
  return r;
}

ChainMap ChainMap::operator-(const ChainMap& o) const {
  ChainMap r(source_, target_, shift_);
  for (int k = source_.lo(); k <= source_.hi(); ++k) r.set(k, at(k) - o.at(k));
  return r;
}

ChainMap ChainMap::scaled(const Scalar& s) const {
  ChainMap r(source_, target_, shift_);
  for (int k = source_.lo(); k <= source_.hi(); ++k) r.set(k, at(k).scaled(s));
  return r;
}

bool ChainMap::operator==(const ChainMap& o) const {
  if (shift_ != o.shift_ || !(source_ == o.source_) || !(target_ == o.target_)) return false;
  int a = std::min(source_.lo(), o.source_.lo()), b = std::max(source_.hi(), o.source_.hi());
  for (int k = a; k <= b; ++k)
    if (!(at(k) == o.at(k))) return false;
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(f.target() == g.source())) throw Error("composition of maps with mismatched complexes");
  ChainMap r(f.source(), g.target(), f.shift() + g.shift());
  for (int k = f.source().lo(); k <= f.source().hi(); ++k) r.set(k, g.at(k + f.shift()) * f.at(k));
  return r;
}

namespace {

ChainMap differential(const ChainComplex& x) {
  ChainMap d(x, x, -1);
  for (int k = x.lo(); k <= x.hi(); ++k) d.set(k, x.d(k));
  return d;
}

}  // namespace

std::vector<std::string> validate(const ChainComplex& x, bool allow_negative) {
  std::vector<std::string> report;
  if (!allow_negative) {
    auto b = x.bottom();
    if (b && *b < 0) report.push_back("nonzero module in negative degree " + std::to_string(*b));
  }
  for (int k = x.lo() + 1; k <= x.hi(); ++k) {
    if (!(x.d(k - 1) * x.d(k)).is_zero())
      report.push_back("d∘d != 0 at degree " + std::to_string(k));
  }
  return report;
}

std::vector<std::string> validate_chain_map(const ChainMap& f) {
  std::vector<std::string> report;
  if (f.shift() != 0) {
    report.push_back("not a degree-0 map");
    return report;
  }
  const auto& s = f.source();
  const auto& t = f.target();
  int a = std::min(s.lo(), t.lo()) - 1, b = std::max(s.hi(), t.hi()) + 1;
  for (int k = a; k <= b; ++k)
    if (!(t.d(k) * f.at(k) == f.at(k - 1) * s.d(k)))
      report.push_back("map does not commute with d at degree " + std::to_string(k));
  return report;
}

bool HomologyReport::exact() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const auto& h) { return h.trivial(); });
}

HomologyReport homology_invariants(const ChainComplex& x) {
  const Ring& ring = x.ring();
  if (ring.kind() == Ring::Kind::Modular && !ring.is_field())
    throw Error("homology over " + ring.name() + " is unsupported (composite modulus)");
  HomologyReport report;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    DegreeHomology h;
    h.degree = k;
    Matrix in = x.d(k + 1), out = x.d(k);
    std::size_t r_out = rank(out), r_in = rank(in);
    h.free_rank = x.rank(k) - r_out - r_in;
    if (ring.is_integer() && !in.empty()) {
      SmithForm snf = smith_normal_form(in);
      for (std::size_t i = 0; i < std::min(snf.d.rows(), snf.d.cols()); ++i) {
        mpz_class v = snf.d(i, i).get_num();
        if (v > 1) h.torsion.push_back(v);
      }
    }
    report.degrees.push_back(std::move(h));
  }
  return report;
}

std::optional<ChainMap> find_contraction(const ChainComplex& x) {
  // Degree by degree from the bottom: d_{k+1} h_k = id - h_{k-1} d_k. For a
  // contractible complex every such lift exists whatever earlier lifts were
  // chosen, so failure at any degree means no contraction exists.
  const Ring& ring = x.ring();
  ChainMap h(x, x, 1);
  for (int k = x.lo(); k <= x.hi(); ++k) {
    Matrix rhs = Matrix::identity(ring, x.rank(k)) - h.at(k - 1) * x.d(k);
    auto lift = solve_right(x.d(k + 1), rhs);
    if (!lift) return std::nullopt;
    h.set(k, *lift);
  }
  // h d h d h still contracts and additionally squares to zero.
  ChainMap d = differential(x);
  ChainMap g = compose(h, compose(d, compose(h, compose(d, h))));
  return g;
}

bool is_null_homotopy(const ChainComplex& x, const ChainMap& h, const Scalar& s) {
  if (h.shift() != 1 || !(h.source() == x) || !(h.target() == x)) return false;
  for (int k = x.lo(); k <= x.hi(); ++k) {
    Matrix lhs = x.d(k + 1) * h.at(k) + h.at(k - 1) * x.d(k);
    if (!(lhs == Matrix::scalar(x.ring(), x.rank(k), s))) return false;
  }
  return true;
}

SesReport check_ses(const ChainMap& f, const ChainMap& g) {
  SesReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.problems.push_back(std::move(msg));
  };
  if (f.shift() != 0 || g.shift() != 0) {
    fail("SES arrows must have degree 0");
    return rep;
  }
  if (!(f.target() == g.source())) {
    fail("dimension mismatch: f's target is not g's source");
    return rep;
  }
  for (const auto& m : validate_chain_map(f)) fail("f: " + m);
  for (const auto& m : validate_chain_map(g)) fail("g: " + m);
  const auto& b = f.target();
  int lo = std::min({f.source().lo(), b.lo(), g.target().lo()});
  int hi = std::max({f.source().hi(), b.hi(), g.target().hi()});
  const Ring& ring = b.ring();
  for (int k = lo; k <= hi; ++k) {
    Matrix fk = f.at(k), gk = g.at(k);
    std::string at = " at degree " + std::to_string(k);
    if (!(gk * fk).is_zero()) fail("g∘f != 0" + at);
    if (fk.cols() > 0 && kernel_basis(fk).cols() > 0) fail("f not injective" + at);
    if (gk.rows() > 0 && !solve_right(gk, Matrix::identity(ring, gk.rows()))) fail("g not surjective" + at);
    if (gk.cols() > 0) {
      Matrix ker = kernel_basis(gk);
      if (ker.cols() > 0 && !solve_right(fk, ker)) fail("ker g is not contained in im f" + at);
    }
  }
  return rep;
}

std::optional<ChainMap> inverse(const ChainMap& f) {
  ChainMap inv(f.target(), f.source(), -f.shift());
  const auto& t = f.target();
  for (int k = std::min(f.source().lo(), t.lo() - f.shift());
       k <= std::max(f.source().hi(), t.hi() - f.shift()); ++k) {
    Matrix m = f.at(k);
    if (!m.is_square()) return std::nullopt;
    if (m.rows() == 0) continue;
    auto x = solve_right(m, Matrix::identity(m.ring(), m.rows()));
    if (!x || !(*x * m == Matrix::identity(m.ring(), m.rows()))) return std::nullopt;
    inv.set(k + f.shift(), *x);
  }
  return inv;
}

}  // namespace hk
