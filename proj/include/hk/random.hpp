#pragma once

#include <random>

#include "hk/tmodule.hpp"

namespace hk {

/// Pseudo-random valid structures for tests and demos. Everything is driven by
/// a caller-owned mt19937_64 and uses only integer arithmetic on its output,
/// so a seed fixes the result on every platform.
struct RandomOptions {
  int lo = 0;
  int hi = 3;
  std::size_t max_rank = 4;   // per degree
  std::size_t pieces = 3;     // summands tried before mixing
  long entry_bound = 9;       // |entry| limit for integral data
  bool contractible = false;  // disks only
  bool mix = true;            // twist the operators and change bases
};

/// A direct sum of disks, two-term pieces R -a-> R with e = (s/a)·id and
/// shifted Koszul complexes, then (if mix) e_i -> e_i + dθ - θd and a random
/// unimodular change of basis in every degree.
HomotopyStructure random_structure(std::mt19937_64& gen, const Ring& ring, const std::vector<Scalar>& s,
                                   const RandomOptions& opt = {});

/// Another structure with the same base and scalars: e_i + dθ_i - θ_i d.
HomotopyStructure random_twist(std::mt19937_64& gen, const HomotopyStructure& m);

/// A chain map X -> Y of the form d h + h d + c·(common identity part).
ChainMap random_chain_map(std::mt19937_64& gen, const ChainComplex& x, const ChainComplex& y);

/// Entries uniform in [-bound, bound].
Matrix random_matrix(std::mt19937_64& gen, const Ring& ring, std::size_t rows, std::size_t cols, long bound);

/// A unimodular matrix and its inverse.
std::pair<Matrix, Matrix> random_unimodular(std::mt19937_64& gen, const Ring& ring, std::size_t n,
                                            std::size_t steps);

/// Conjugate every matrix of m by a per-degree change of basis.
HomotopyStructure change_basis(const HomotopyStructure& m, const std::vector<std::pair<Matrix, Matrix>>& p);

long uniform(std::mt19937_64& gen, long a, long b);

}  // namespace hk
