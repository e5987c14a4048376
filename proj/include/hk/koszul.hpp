#pragma once

#include <vector>

#include "hk/tmodule.hpp"

namespace hk {

/// Sorted index subset {i_1 < ... < i_k} of {0, ..., dim-1}, naming the wedge
/// e_{i_1} ∧ ... ∧ e_{i_k}. Indices are 0-based throughout the code.
using ExteriorIndex = std::vector<int>;

/// All k-subsets of {0..dim-1} in lexicographic order; this order is the
/// basis order of ∧^k R^dim everywhere in the library.
std::vector<ExteriorIndex> exterior_basis(int dim, int k);
std::size_t exterior_position(int dim, const ExteriorIndex& subset);
std::size_t binomial(int n, int k);

/// K(ŝ): ∧^k R^d in degree k, d(e_I) = Σ_a (-1)^a s_{i_a} e_{I∖i_a},
/// e_i acting by left exterior multiplication.
HomotopyStructure koszul(const Ring& ring, const std::vector<Scalar>& s);

/// Ω(ŝ): ∧^{d-i} R^d in degree i, d(ω) = ω ∧ ŝ; e_r removes e_r from a
/// t-fold wedge where it sits in position a (1-based) with sign (-1)^{a+t}.
HomotopyStructure omega(const Ring& ring, const std::vector<Scalar>& s);

/// The Hodge star on wedges: ∧^k -> ∧^{dim-k}, determined by
/// ω ∧ *ω = (-1)^{k(dim-k)} e_1 ∧ ... ∧ e_dim.
Matrix hodge_matrix(const Ring& ring, int dim, int k);

/// The Hodge star as a chain map K(ŝ) -> Ω(ŝ).
ChainMap hodge_star(const Ring& ring, const std::vector<Scalar>& s);

/// K(ŝ) ⊗ R^rank -> R^rank ⊗ Ω(ŝ): the Hodge star followed by swapping the
/// tensor factors. Equivariant for the structures tensor_module(koszul) and
/// module_tensor(omega).
ChainMap koszul_tensor_iso(const Ring& ring, const std::vector<Scalar>& s, std::size_t rank);

/// e_{w[0]} e_{w[1]} ... e_{w.back()} acting on degree `degree` (rightmost
/// letter applied first); maps X_degree -> X_{degree + |w|}.
Matrix e_word(const HomotopyStructure& m, const std::vector<int>& word, int degree);

/// Both sides of the Leibniz expansion of d(e_{j_1}...e_{j_{k+1}}.u) for u in
/// the given degree, as an operator difference. Zero when the identity holds.
Matrix leibniz_defect(const HomotopyStructure& m, const std::vector<int>& word, int degree);

/// K(ŝ) ⊗ X_0 -> X, e_I ⊗ u ↦ e_{i_1}...e_{i_k}.u. A chain map that is the
/// identity in degree 0; not equivariant. Source basis: wedge major, X_0 minor.
ChainMap unit_map(const HomotopyStructure& m);

/// X -> Σ^{n-d}(X_n ⊗ Ω(ŝ)), u ↦ ε_k Σ_I (e_I.u) ⊗ e_I on X_{n-k} with
/// ε_k = (-1)^{k(n-d)}. The identity in degree n; not equivariant.
/// Target basis: X_n major, wedge minor. Requires n >= d and X_i = 0 for i > n.
ChainMap counit_map(const HomotopyStructure& m, int n);

/// The T_ŝ-module Σ^{n-d}(X_n ⊗ Ω(ŝ)) that counit_map lands in.
HomotopyStructure counit_target(const HomotopyStructure& m, int n);

}  // namespace hk
