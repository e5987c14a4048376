#include "hk/koszul.hpp"

#include <algorithm>

#include "hk/construct.hpp"

namespace hk {

namespace {

int sign(long parity) { return parity % 2 == 0 ? 1 : -1; }

std::vector<Scalar> normalized(const Ring& ring, const std::vector<Scalar>& s) {
  std::vector<Scalar> r;
  for (const auto& x : s) r.push_back(ring.normalize(x));
  return r;
}

ExteriorIndex without(const ExteriorIndex& I, std::size_t a) {
  ExteriorIndex r = I;
  r.erase(r.begin() + static_cast<long>(a));
  return r;
}

ExteriorIndex with(const ExteriorIndex& I, int i) {
  ExteriorIndex r = I;
  r.insert(std::lower_bound(r.begin(), r.end(), i), i);
  return r;
}

ExteriorIndex complement(int dim, const ExteriorIndex& I) {
  ExteriorIndex r;
  for (int j = 0; j < dim; ++j)
    if (!std::binary_search(I.begin(), I.end(), j)) r.push_back(j);
  return r;
}

bool contains(const ExteriorIndex& I, int i) { return std::binary_search(I.begin(), I.end(), i); }

ChainMap ops_map(const ChainComplex& x, const std::vector<Matrix>& mats) {
  return ChainMap(x, x, 1, mats);
}

}  // namespace

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::vector<ExteriorIndex> exterior_basis(int dim, int k) {
  std::vector<ExteriorIndex> out;
  if (k < 0 || k > dim) return out;
  ExteriorIndex cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == dim - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::size_t exterior_position(int dim, const ExteriorIndex& subset) {
  // rank of a k-subset in lex order
  std::size_t pos = 0;
  int k = static_cast<int>(subset.size());
  int prev = -1;
  for (int a = 0; a < k; ++a) {
    for (int v = prev + 1; v < subset[static_cast<std::size_t>(a)]; ++v) pos += binomial(dim - v - 1, k - a - 1);
    prev = subset[static_cast<std::size_t>(a)];
  }
  return pos;
}

HomotopyStructure koszul(const Ring& ring, const std::vector<Scalar>& s_in) {
  auto s = normalized(ring, s_in);
  int dim = static_cast<int>(s.size());
  std::vector<std::size_t> ranks;
  for (int k = 0; k <= dim; ++k) ranks.push_back(binomial(dim, k));
  std::vector<Matrix> diffs;
  for (int k = 0; k <= dim; ++k) {
    Matrix m(ring, k > 0 ? ranks[static_cast<std::size_t>(k - 1)] : 0, ranks[static_cast<std::size_t>(k)]);
    if (k > 0) {
      auto basis = exterior_basis(dim, k);
      for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t a = 0; a < basis[c].size(); ++a) {
          std::size_t r = exterior_position(dim, without(basis[c], a));
          m.set(r, c, ring.add(m(r, c), ring.mul(Scalar(sign(static_cast<long>(a))), s[static_cast<std::size_t>(basis[c][a])])));
        }
    }
    diffs.push_back(m);
  }
  ChainComplex x(ring, 0, ranks, diffs);
  std::vector<ChainMap> ops;
  for (int i = 0; i < dim; ++i) {
    std::vector<Matrix> mats;
    for (int k = 0; k <= dim; ++k) {
      Matrix m(ring, binomial(dim, k + 1), binomial(dim, k));
      auto basis = exterior_basis(dim, k);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        if (contains(basis[c], i)) continue;
        long below = std::count_if(basis[c].begin(), basis[c].end(), [&](int j) { return j < i; });
        m.set(exterior_position(dim, with(basis[c], i)), c, Scalar(sign(below)));
      }
      mats.push_back(m);
    }
    ops.push_back(ops_map(x, mats));
  }
  return HomotopyStructure(x, s, ops);
}

HomotopyStructure omega(const Ring& ring, const std::vector<Scalar>& s_in) {
  auto s = normalized(ring, s_in);
  int dim = static_cast<int>(s.size());
  std::vector<std::size_t> ranks;
  for (int i = 0; i <= dim; ++i) ranks.push_back(binomial(dim, dim - i));
  std::vector<Matrix> diffs;
  for (int i = 0; i <= dim; ++i) {
    int t = dim - i;
    Matrix m(ring, i > 0 ? binomial(dim, t + 1) : 0, binomial(dim, t));
    if (i > 0) {
      auto basis = exterior_basis(dim, t);
      for (std::size_t c = 0; c < basis.size(); ++c)
        for (int j = 0; j < dim; ++j) {
          if (contains(basis[c], j)) continue;
          long above = std::count_if(basis[c].begin(), basis[c].end(), [&](int x) { return x > j; });
          std::size_t r = exterior_position(dim, with(basis[c], j));
          m.set(r, c, ring.add(m(r, c), ring.mul(Scalar(sign(above)), s[static_cast<std::size_t>(j)])));
        }
    }
    diffs.push_back(m);
  }
  ChainComplex x(ring, 0, ranks, diffs);
  std::vector<ChainMap> ops;
  for (int r = 0; r < dim; ++r) {
    std::vector<Matrix> mats;
    for (int i = 0; i <= dim; ++i) {
      int t = dim - i;
      Matrix m(ring, binomial(dim, t - 1), binomial(dim, t));
      auto basis = exterior_basis(dim, t);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        auto it = std::lower_bound(basis[c].begin(), basis[c].end(), r);
        if (it == basis[c].end() || *it != r) continue;
        std::size_t a = static_cast<std::size_t>(it - basis[c].begin());
        m.set(exterior_position(dim, without(basis[c], a)), c, Scalar(sign(static_cast<long>(a + 1) + t)));
      }
      mats.push_back(m);
    }
    ops.push_back(ops_map(x, mats));
  }
  return HomotopyStructure(x, s, ops);
}

Matrix hodge_matrix(const Ring& ring, int dim, int k) {
  Matrix m(ring, binomial(dim, dim - k), binomial(dim, k));
  auto basis = exterior_basis(dim, k);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto comp = complement(dim, basis[c]);
    long inversions = 0;
    for (int i : basis[c])
      inversions += std::count_if(comp.begin(), comp.end(), [&](int j) { return j < i; });
    m.set(exterior_position(dim, comp), c, Scalar(sign(inversions + static_cast<long>(k) * (dim - k))));
  }
  return m;
}

ChainMap hodge_star(const Ring& ring, const std::vector<Scalar>& s) {
  auto k = koszul(ring, s);
  auto w = omega(ring, s);
  int dim = static_cast<int>(s.size());
  std::vector<Matrix> mats;
  for (int i = 0; i <= dim; ++i) mats.push_back(hodge_matrix(ring, dim, i));
  return ChainMap(k.base(), w.base(), 0, mats);
}

ChainMap koszul_tensor_iso(const Ring& ring, const std::vector<Scalar>& s, std::size_t rank) {
  auto src = tensor_module(koszul(ring, s), rank);
  auto tgt = module_tensor(rank, omega(ring, s));
  int dim = static_cast<int>(s.size());
  std::vector<Matrix> mats;
  for (int k = 0; k <= dim; ++k)
    mats.push_back(commutation(ring, binomial(dim, dim - k), rank) *
                   kron(hodge_matrix(ring, dim, k), Matrix::identity(ring, rank)));
  return ChainMap(src.base(), tgt.base(), 0, mats);
}

Matrix e_word(const HomotopyStructure& m, const std::vector<int>& word, int degree) {
  Matrix r = Matrix::identity(m.ring(), m.base().rank(degree));
  int deg = degree;
  for (auto it = word.rbegin(); it != word.rend(); ++it, ++deg) {
    if (*it < 0 || static_cast<std::size_t>(*it) >= m.arity()) throw Error("e_word: generator index out of range");
    r = m.op(static_cast<std::size_t>(*it), deg) * r;
  }
  return r;
}

Matrix leibniz_defect(const HomotopyStructure& m, const std::vector<int>& word, int degree) {
  if (word.empty()) throw Error("leibniz_defect: empty word");
  const auto& x = m.base();
  const Ring& ring = m.ring();
  int len = static_cast<int>(word.size());
  Matrix lhs = x.d(degree + len) * e_word(m, word, degree);
  Matrix rhs = e_word(m, word, degree - 1) * x.d(degree);
  if (len % 2 == 1) rhs = -rhs;  // (-1)^{k+1} with k+1 = len
  for (std::size_t a = 0; a < word.size(); ++a) {
    std::vector<int> rest = word;
    rest.erase(rest.begin() + static_cast<long>(a));
    Scalar c = ring.mul(Scalar(sign(static_cast<long>(a))), m.scalars()[static_cast<std::size_t>(word[a])]);
    rhs = rhs + e_word(m, rest, degree).scaled(c);
  }
  return lhs - rhs;
}

ChainMap unit_map(const HomotopyStructure& m) {
  const Ring& ring = m.ring();
  int dim = static_cast<int>(m.arity());
  std::size_t r0 = m.base().rank(0);
  auto src = tensor_module(koszul(ring, m.scalars()), r0);
  ChainMap f(src.base(), m.base(), 0);
  for (int k = 0; k <= dim; ++k) {
    auto basis = exterior_basis(dim, k);
    Matrix block(ring, m.base().rank(k), basis.size() * r0);
    for (std::size_t c = 0; c < basis.size(); ++c) block.set_block(0, c * r0, e_word(m, basis[c], 0));
    f.set(k, block);
  }
  return f;
}

HomotopyStructure counit_target(const HomotopyStructure& m, int n) {
  int dim = static_cast<int>(m.arity());
  if (n < dim) throw Error("counit needs n >= d");
  return suspend(module_tensor(m.base().rank(n), omega(m.ring(), m.scalars())), n - dim);
}

ChainMap counit_map(const HomotopyStructure& m, int n) {
  const Ring& ring = m.ring();
  int dim = static_cast<int>(m.arity());
  if (auto t = m.base().top(); t && *t > n) throw Error("counit needs X_i = 0 for i > n");
  auto target = counit_target(m, n);
  std::size_t rn = m.base().rank(n);
  ChainMap f(m.base(), target.base(), 0);
  for (int k = 0; k <= dim; ++k) {
    int deg = n - k;
    if (deg < m.base().lo() || deg > m.base().hi()) continue;
    auto basis = exterior_basis(dim, k);
    std::size_t c_k = basis.size();
    Scalar eps(sign(static_cast<long>(k) * (n - dim)));
    Matrix block(ring, rn * c_k, m.base().rank(deg));
    for (std::size_t j = 0; j < c_k; ++j) {
      Matrix w = e_word(m, basis[j], deg).scaled(eps);
      for (std::size_t u = 0; u < rn; ++u)
        for (std::size_t v = 0; v < w.cols(); ++v) block.set(u * c_k + j, v, w(u, v));
    }
    f.set(deg, block);
  }
  return f;
}

}  // namespace hk
