#pragma once

#include "hk/construct.hpp"

namespace hk {

/// Γ for a single generator, in closed form. M a T_s-module in [0, n], n >= 2;
/// the result is a T_{s²}-module in [0, n-1] with
/// (ΓX)_{n-2} = X_{n-2} ⊕ X_n and (ΓX)_i = X_i otherwise.
HomotopyStructure gamma1(const HomotopyStructure& m, int n);

/// Γf for an equivariant f: A -> B, matching gamma1's block layout.
ChainMap gamma1_map(const ChainMap& f, const HomotopyStructure& a, const HomotopyStructure& b, int n);

/// A short exact sequence of modules with both arrows equivariant.
struct ModuleSes {
  HomotopyStructure a, b, c;
  ChainMap f, g;
};

/// Γ for any number of generators, through the cone of the counit
/// f: X -> Σ^{n-d}(X_n ⊗ Ω(ŝ)) =: Y.
///
/// cone:      Y -> Cf -> ΣX with the mixed structure (scalars ŝ²)
/// disk:      D^{n+1}_{ŝ²}(X_n) inside Cf
/// quotient:  Q = Cf / D, living in degrees <= n
/// gamma:     ΓX = Σ^{-1} Q in [0, n-1]
/// koszul:    Σ^{n-d-1}(X_n ⊗ Ω(ŝ)) restricted by ŝ, the second term of W
/// The two sequences are desuspended so that both live in degrees [0, n]:
///   koszul -> Σ^{-1}Cf -> restrict(X, ŝ)
///   Σ^{-1}D -> Σ^{-1}Cf -> ΓX
struct GammaResult {
  ChainMap counit;
  ConeResult cone;
  HomotopyStructure disk;
  ChainMap disk_inclusion;
  ChainMap quotient_map;
  HomotopyStructure quotient;
  HomotopyStructure gamma;
  HomotopyStructure koszul;
  ModuleSes counit_sequence;
  ModuleSes disk_sequence;
};

/// Requires n >= d+1 and the base of m inside [0, n].
GammaResult gamma_general(const HomotopyStructure& m, int n);

/// Γf for an equivariant f: A -> B between the outputs of gamma_general.
ChainMap gamma_map(const ChainMap& f, const HomotopyStructure& a, const HomotopyStructure& b, int n);

/// gamma1(M) -> gamma_general(M).gamma for a single generator: identity except
/// in degree n-2, where the two blocks swap and X_n picks up (-1)^n.
ChainMap gamma_comparison(const HomotopyStructure& m, int n);

/// Σ^{n-d-1}(K(ŝ) ⊗ P) restricted by ŝ: the predicted value of Γ(D^n_ŝ P).
HomotopyStructure disk_gamma_model(const Ring& ring, std::size_t rank, int n, const std::vector<Scalar>& s);

/// The explicit isomorphism disk_gamma_model -> gamma_general(D^n_ŝ P).gamma.
ChainMap disk_gamma_iso(const Ring& ring, std::size_t rank, int n, const std::vector<Scalar>& s);

}  // namespace hk
