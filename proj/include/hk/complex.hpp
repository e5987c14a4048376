#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hk/matrix.hpp"

namespace hk {

/// Bounded chain complex of finitely generated free modules.
///
/// Degrees lo()..hi() are stored; everything outside has rank zero. The
/// differential d(k) maps degree k to degree k-1 and is a
/// rank(k-1) x rank(k) matrix.
class ChainComplex {
 public:
  explicit ChainComplex(Ring ring) : ring_(std::move(ring)) {}
  /// diffs[i] is d(lo + i). Shapes are checked; d∘d = 0 is not (see validate).
  ChainComplex(Ring ring, int lo, std::vector<std::size_t> ranks, std::vector<Matrix> diffs);

  /// Builds a complex from its differentials alone, ranks inferred from shapes.
  /// diffs[i] is d(lo + 1 + i), i.e. the first matrix maps degree lo+1 to lo.
  static ChainComplex from_differentials(Ring ring, int lo, const std::vector<Matrix>& diffs);

  const Ring& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int degree) const;
  Matrix d(int degree) const;
  const std::vector<std::size_t>& ranks() const { return ranks_; }

  /// Lowest / highest degree of nonzero rank; nullopt for the zero complex.
  std::optional<int> bottom() const;
  std::optional<int> top() const;
  bool is_zero() const { return !top().has_value(); }
  /// All nonzero ranks lie in [a, b].
  bool within(int a, int b) const;
  std::size_t total_rank() const;
  long euler_characteristic() const;

  /// Same complex restored over the window [a, b] (must cover all nonzero ranks).
  ChainComplex rewindowed(int a, int b) const;
  /// Σ^k: degree shift by k, differential multiplied by (-1)^k.
  ChainComplex shifted(int k) const;

  bool operator==(const ChainComplex& o) const;

 private:
  Ring ring_;
  int lo_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<Matrix> diffs_;
};

/// Degree-homogeneous family of matrices source_k -> target_{k+shift}.
/// shift 0 for chain maps, +1 for homotopies and module operators.
class ChainMap {
 public:
  ChainMap(ChainComplex source, ChainComplex target, int shift);
  /// mats[i] is the component at source degree source.lo() + i.
  ChainMap(ChainComplex source, ChainComplex target, int shift, std::vector<Matrix> mats);

  static ChainMap identity(const ChainComplex& x);
  static ChainMap scalar(const ChainComplex& x, const Scalar& s);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  int shift() const { return shift_; }

  /// Component at a source degree (zero matrix of the right shape outside the window).
  Matrix at(int degree) const;
  void set(int degree, const Matrix& m);
  const std::vector<Matrix>& components() const { return mats_; }

  ChainMap operator+(const ChainMap& o) const;
  ChainMap operator-(const ChainMap& o) const;
  ChainMap scaled(const Scalar& s) const;
  bool operator==(const ChainMap& o) const;

 private:
  ChainComplex source_, target_;
  int shift_;
  std::vector<Matrix> mats_;
};

/// g ∘ f (shifts add).
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// Every violated invariant, one message each; empty means valid.
/// Negative degrees are reported unless allow_negative is set.
std::vector<std::string> validate(const ChainComplex& x, bool allow_negative = false);
/// Shapes plus d∘f = f∘d in every degree (shift 0 only).
std::vector<std::string> validate_chain_map(const ChainMap& f);

struct DegreeHomology {
  int degree = 0;
  std::size_t free_rank = 0;            // dimension over a field
  std::vector<mpz_class> torsion;       // invariant factors > 1 (integers only)
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

struct HomologyReport {
  std::vector<DegreeHomology> degrees;
  bool exact() const;
};

/// Over Z: free rank and torsion divisors from Smith forms; over Q or Z/p:
/// dimensions. Z/m with m composite is rejected.
HomologyReport homology_invariants(const ChainComplex& x);

/// A contracting homotopy h (shift +1) with d·h + h·d = id and h·h = 0, or
/// nothing when the complex is not contractible over its ring.
std::optional<ChainMap> find_contraction(const ChainComplex& x);

/// d·h + h·d == s·id in every degree.
bool is_null_homotopy(const ChainComplex& x, const ChainMap& h, const Scalar& s);

struct SesReport {
  bool ok = true;
  std::vector<std::string> problems;
  explicit operator bool() const { return ok; }
};

/// 0 -> A -f-> B -g-> C -> 0 exact in every degree, with f, g chain maps.
SesReport check_ses(const ChainMap& f, const ChainMap& g);

/// Injective in every degree and each component admits a two-sided inverse.
std::optional<ChainMap> inverse(const ChainMap& f);

}  // namespace hk
