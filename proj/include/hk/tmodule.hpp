#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hk/complex.hpp"

namespace hk {

/// A complex with null-homotopies e_1..e_d of multiplication by s_1..s_d:
/// d·e_i + e_i·d = s_i·id in every degree. With no relations among the e_i
/// this is exactly a dg-module over the free algebra on e_1..e_d with
/// d(e_i) = s_i; d = 1 is a module over R[e] with de = s.
class HomotopyStructure {
 public:
  HomotopyStructure(ChainComplex base, std::vector<Scalar> scalars, std::vector<ChainMap> ops);

  /// Single-generator convenience constructor.
  HomotopyStructure(ChainComplex base, const Scalar& s, ChainMap e)
      : HomotopyStructure(std::move(base), std::vector<Scalar>{s}, std::vector<ChainMap>{std::move(e)}) {}

  const ChainComplex& base() const { return base_; }
  const Ring& ring() const { return base_.ring(); }
  const std::vector<Scalar>& scalars() const { return scalars_; }
  std::size_t arity() const { return scalars_.size(); }
  const ChainMap& op(std::size_t i) const { return ops_.at(i); }
  /// e_i at a source degree.
  Matrix op(std::size_t i, int degree) const { return ops_.at(i).at(degree); }
  const std::vector<ChainMap>& ops() const { return ops_; }

  bool operator==(const HomotopyStructure& o) const;

 private:
  ChainComplex base_;
  std::vector<Scalar> scalars_;
  std::vector<ChainMap> ops_;
};

/// Generators t_1..t_d of singly generated multiplicative systems {t_i^k}.
struct MultiplicativeSystem {
  std::vector<Scalar> generators;
};

/// Empty iff the base is a valid complex and every module axiom holds.
std::vector<std::string> check_structure(const HomotopyStructure& m, bool allow_negative = false);

/// The zero module with the given scalars.
HomotopyStructure zero_structure(const Ring& ring, const std::vector<Scalar>& scalars);

/// A null-homotopy of s·id on x, solving the full linear system
/// d·e + e·d = s·id over the ring. With a seed, a pseudo-random element of
/// the homogeneous solutions is added so different seeds give different lifts.
std::optional<ChainMap> solve_null_homotopy(const ChainComplex& x, const Scalar& s,
                                            std::optional<std::uint64_t> seed = std::nullopt);

struct FoundStructure {
  std::vector<unsigned> exponents;
  HomotopyStructure structure;
};

/// For each generator independently, the least k <= k_max such that t_i^k·id
/// is null-homotopic. nullopt means inconclusive at k_max.
std::optional<FoundStructure> find_structure(const ChainComplex& x, const MultiplicativeSystem& sys,
                                             unsigned k_max = 16,
                                             std::optional<std::uint64_t> seed = std::nullopt);

/// Restriction of scalars along e_i -> t_i·e_i: scalars s_i·t_i, ops t_i·e_i.
HomotopyStructure restrict(const HomotopyStructure& m, const std::vector<Scalar>& factors);

/// f·e_i^A == e_i^B·f in every degree and for every generator.
bool is_equivariant(const ChainMap& f, const HomotopyStructure& a, const HomotopyStructure& b);

/// Componentwise product of scalar tuples.
std::vector<Scalar> multiply(const Ring& ring, const std::vector<Scalar>& a, const std::vector<Scalar>& b);

}  // namespace hk
