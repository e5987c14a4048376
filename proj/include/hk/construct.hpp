#pragma once

#include <vector>

#include "hk/tmodule.hpp"

namespace hk {

/// Σ^k for any integer k: degrees shift by k, d and every e_i pick up (-1)^k.
HomotopyStructure suspend(const HomotopyStructure& m, int k = 1);

/// Hom(-, R) in the window [0, n]: degree i becomes n - i, every matrix is
/// transposed. Requires the base to lie in [0, n].
HomotopyStructure dual(const HomotopyStructure& m, int n);

/// D^n(R^rank): identity differential from degree n to n-1, e_i = s_i·id.
HomotopyStructure disk(const Ring& ring, std::size_t rank, int n, const std::vector<Scalar>& scalars);

/// Block sum; scalars must agree.
HomotopyStructure direct_sum(const HomotopyStructure& a, const HomotopyStructure& b);

/// Mapping cone complex: (Cf)_k = Y_k ⊕ X_{k-1}, d(σx) = f(x) - σ(dx).
ChainComplex cone_complex(const ChainMap& f);

/// A module structure on a cone together with its canonical sequence
/// Y -> Cf -> ΣX. left / right are the end terms carrying the structures
/// that make both arrows equivariant.
struct ConeResult {
  HomotopyStructure cone;
  ChainMap inclusion;
  ChainMap projection;
  HomotopyStructure left;
  HomotopyStructure right;
};

/// X a T_ŝ-module, Y a T_t̂-module, f any chain map: T_{ŝt̂}-structure on Cf
/// with E.y = s·e(y) and E.(σx) = e(f(e x)) - t·σ(e x).
ConeResult cone_mixed(const ChainMap& f, const HomotopyStructure& mx, const HomotopyStructure& my);

/// f equivariant between modules with the same scalars: same-scalar
/// structure E.y = e y, E.(σx) = -σ(e x). Throws if f is not equivariant.
ConeResult cone_same(const ChainMap& f, const HomotopyStructure& mx, const HomotopyStructure& my);

/// One step of peeling a contractible module from its top degree n:
/// 0 -> D^n(X_n) -> X -> τ_{<=n-1} X -> 0.
struct PeelStep {
  HomotopyStructure disk;
  ChainMap inclusion;
  ChainMap quotient_map;
  HomotopyStructure quotient;
};

/// Requires the base of m to be contractible and to lie in degrees <= n.
PeelStep peel_top(const HomotopyStructure& m, int n);

/// Peels degrees n, n-1, ..., bottom+1 and returns one step per degree.
std::vector<PeelStep> peel_all(const HomotopyStructure& m, int n, int bottom = 0);

/// Given a short exact sequence A -f-> B -g-> C of complexes with A a T_ŝ-module
/// and C a T_t̂-module, a T_{ŝt̂}-structure on B making both arrows equivariant
/// (A restricted by t̂, C restricted by ŝ).
HomotopyStructure glue_extension(const ChainMap& f, const ChainMap& g, const HomotopyStructure& ma,
                                 const HomotopyStructure& mc);

/// Standard tensor product of complexes, basis ordered by degree of the first
/// factor, then Kronecker order; d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy.
ChainComplex tensor_free(const ChainComplex& x, const ChainComplex& y);

/// M ⊗ R^rank with R^rank in degree 0 (structure e ⊗ id).
HomotopyStructure tensor_module(const HomotopyStructure& m, std::size_t rank);
/// R^rank ⊗ M with R^rank in degree 0 (structure id ⊗ e).
HomotopyStructure module_tensor(std::size_t rank, const HomotopyStructure& m);

/// Same module viewed in the window [a, b].
HomotopyStructure rewindowed(const HomotopyStructure& m, int a, int b);

/// Degree-k block of an iso/inclusion: the stored matrices of a chain map
/// rewritten between rewindowed complexes.
ChainMap rewindowed(const ChainMap& f, const ChainComplex& source, const ChainComplex& target);

/// Σ^k applied to a map (matrices unchanged, degrees shifted).
ChainMap suspend_map(const ChainMap& f, int k);

}  // namespace hk
