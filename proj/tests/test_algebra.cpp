#include <doctest.h>

#include "hk/linalg.hpp"
#include "support.hpp"

using namespace hk;
using namespace hk::test;

namespace {

std::vector<Ring> rings() { return {Z(), Q(), Ring::modular(12), Ring::modular(7)}; }

Scalar random_element(std::mt19937_64& gen, const Ring& r) {
  if (r.kind() == Ring::Kind::Rational) return r.normalize(Scalar(uniform(gen, -20, 20), uniform(gen, 1, 9)));
  return r.normalize(Scalar(uniform(gen, -50, 50)));
}

bool is_diagonal(const Matrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && !d.ring().is_zero(d(i, j))) return false;
  return true;
}

}  // namespace

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 gen(11);
  for (const auto& r : rings()) {
    Scalar zero(0), one = r.normalize(1);
    for (int t = 0; t < 1000; ++t) {
      Scalar a = random_element(gen, r), b = random_element(gen, r), c = random_element(gen, r);
      CHECK(r.add(r.add(a, b), c) == r.add(a, r.add(b, c)));
      CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
      CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
      CHECK(r.add(a, b) == r.add(b, a));
      CHECK(r.mul(a, b) == r.mul(b, a));
      CHECK(r.add(a, zero) == a);
      CHECK(r.mul(a, one) == a);
      CHECK(r.is_zero(r.add(a, r.neg(a))));
    }
  }
}

TEST_CASE("ring membership, units and text") {
  auto z12 = Ring::modular(12);
  CHECK(z12.normalize(-1) == 11);
  CHECK(z12.normalize(25) == 1);
  CHECK(z12.is_unit(5));
  CHECK_FALSE(z12.is_unit(4));
  CHECK_FALSE(z12.is_field());
  CHECK(Ring::modular(7).is_field());
  CHECK_THROWS_AS(Z().normalize(Scalar(1, 2)), Error);
  CHECK_THROWS_AS(z12.normalize(Scalar(1, 2)), Error);
  CHECK(Q().parse("-6/4") == Scalar(-3, 2));
  CHECK(Q().format(Scalar(-3, 2)) == "-3/2");
  CHECK(z12.parse("-1") == 11);
  CHECK(Z().name() == "Z");
  CHECK(z12.name() == "Z/12");
  CHECK(Z().is_unit(-1));
  CHECK_FALSE(Z().is_unit(2));
  CHECK_THROWS_AS(Ring::modular(1), Error);
  CHECK_THROWS_AS(Z().parse("x"), Error);
}

TEST_CASE("matrix products and blocks") {
  Matrix a = M({{1, 2}, {3, 4}});
  Matrix b = M({{0, 1}, {1, 0}});
  CHECK(a * b == M({{2, 1}, {4, 3}}));
  CHECK(a.transpose() == M({{1, 3}, {2, 4}}));
  CHECK(hstack(a, b).cols() == 4);
  CHECK(vstack(a, b).block(2, 0, 2, 2) == b);
  CHECK(block_diag(a, b).block(0, 2, 2, 2).is_zero());
  CHECK(kron(Matrix::identity(Z(), 2), a) == block_diag(a, a));
  CHECK_THROWS_AS(a * M({{1, 2, 3}}), Error);
  CHECK_THROWS_AS(a + Matrix::identity(Q(), 2), Error);
  // K_{a,b} · (x ⊗ y) = y ⊗ x
  Matrix x = M({{1}, {2}}), y = M({{3}, {5}, {7}});
  CHECK(commutation(Z(), 2, 3) * kron(x, y) == kron(y, x));
  Matrix z7 = Matrix::from_rows(Ring::modular(7), {{8, -1}});
  CHECK(z7 == Matrix::from_rows(Ring::modular(7), {{1, 6}}));
}

TEST_CASE("solve_right examples") {
  Matrix b = M({{3, -1}, {0, 7}});
  CHECK(solve_right(Matrix::identity(Z(), 2), b).value() == b);
  CHECK(solve_right(M({{2}}), M({{4}})).value() == M({{2}}));
  CHECK_FALSE(solve_right(M({{2}}), M({{3}})).has_value());
  // over Q the same system is solvable
  CHECK(solve_right(M({{2}}, Q()), M({{3}}, Q())).value()(0, 0) == Scalar(3, 2));
  // over Z/6: 2x = 4 solvable, 2x = 3 not
  auto z6 = Ring::modular(6);
  auto x = solve_right(M({{2}}, z6), M({{4}}, z6));
  REQUIRE(x.has_value());
  CHECK(M({{2}}, z6) * *x == M({{4}}, z6));
  CHECK_FALSE(solve_right(M({{2}}, z6), M({{3}}, z6)).has_value());
  CHECK_THROWS_AS(solve_right(M({{1, 2}}), M({{1}, {2}})), Error);
  CHECK_THROWS_AS(solve_right(M({{1}}), M({{1}}, Q())), Error);
}

TEST_CASE("solve_right recovers consistent systems") {
  std::mt19937_64 gen(5);
  for (const auto& r : rings()) {
    for (int t = 0; t < 150; ++t) {
      auto m = static_cast<std::size_t>(uniform(gen, 1, 5));
      auto n = static_cast<std::size_t>(uniform(gen, 1, 5));
      auto k = static_cast<std::size_t>(uniform(gen, 1, 3));
      Matrix a = random_matrix(gen, r, m, n, 6);
      if (uniform(gen, 0, 2) == 0) a = a * random_matrix(gen, r, n, n, 1);  // often singular
      Matrix b = a * random_matrix(gen, r, n, k, 6);
      auto x = solve_right(a, b);
      REQUIRE(x.has_value());
      CHECK(a * *x == b);
    }
  }
}

TEST_CASE("solve_right agrees with brute force over Z/m") {
  auto z4 = Ring::modular(4);
  std::mt19937_64 gen(8);
  for (int t = 0; t < 200; ++t) {
    Matrix a = random_matrix(gen, z4, 2, 2, 3);
    Matrix b = random_matrix(gen, z4, 2, 1, 3);
    bool exists = false;
    for (long u = 0; u < 4 && !exists; ++u)
      for (long v = 0; v < 4 && !exists; ++v)
        exists = a * Matrix::from_rows(z4, {{u}, {v}}) == b;
    auto x = solve_right(a, b);
    CHECK(x.has_value() == exists);
    if (x) CHECK(a * *x == b);
  }
}

TEST_CASE("kernel basis") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 100; ++t) {
    Matrix a = random_matrix(gen, Z(), 3, 3, 4) * random_matrix(gen, Z(), 3, 5, 4);
    Matrix k = kernel_basis(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() + rank(a) == 5);
  }
}

TEST_CASE("smith normal form examples") {
  auto zero = smith_normal_form(Matrix::zero(Z(), 2, 3));
  CHECK(zero.d.is_zero());
  CHECK(zero.u == Matrix::identity(Z(), 2));
  CHECK(zero.v == Matrix::identity(Z(), 3));
  auto diag = smith_normal_form(M({{2, 0}, {0, 3}}));
  CHECK(diag.d == M({{1, 0}, {0, 6}}));
  CHECK(smith_normal_form(M({{1}})).d == M({{1}}));
  CHECK_THROWS_AS(smith_normal_form(M({{1}}, Q())), Error);
}

TEST_CASE("smith normal form on random integer matrices") {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 300; ++t) {
    auto m = static_cast<std::size_t>(uniform(gen, 1, 5));
    auto n = static_cast<std::size_t>(uniform(gen, 1, 5));
    Matrix a = random_matrix(gen, Z(), m, n, 9);
    auto f = smith_normal_form(a);
    CHECK(f.u * a * f.v == f.d);
    CHECK(is_diagonal(f.d));
    CHECK(abs(determinant(f.u)) == 1);
    CHECK(abs(determinant(f.v)) == 1);
    std::size_t k = std::min(m, n);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(sgn(f.d(i, i)) >= 0);
      if (i + 1 < k && !Z().is_zero(f.d(i, i))) {
        mpz_class q = f.d(i + 1, i + 1).get_num() % f.d(i, i).get_num();
        CHECK(q == 0);
      }
      if (i + 1 < k && Z().is_zero(f.d(i, i))) CHECK(Z().is_zero(f.d(i + 1, i + 1)));
    }
  }
}

TEST_CASE("rank and determinant") {
  CHECK(rank(M({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(M({{2, 0}, {0, 2}}, Ring::modular(2))) == 0);
  CHECK(determinant(M({{1, 2}, {3, 4}})) == -2);
  CHECK(determinant(Matrix::identity(Q(), 3).scaled(Scalar(1, 2))) == Scalar(1, 8));
}
