#include <doctest.h>

#include "hk/koszul.hpp"
#include "support.hpp"

using namespace hk;
using namespace hk::test;

namespace {

// 0 -> Z -a-> Z -> 0 in degrees 1, 0
ChainComplex two_term(long a, const Ring& r = Ring::integers()) {
  return ChainComplex::from_differentials(r, 0, {Matrix::from_rows(r, {{a}})});
}

HomotopyStructure k2() { return koszul(Z(), S({2})); }

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(ChainComplex(Z())).empty());
  CHECK(validate(two_term(2)).empty());
  auto bad = ChainComplex::from_differentials(Z(), 0, {M({{1}}), M({{1}})});
  auto report = validate(bad);
  REQUIRE(report.size() == 1);
  CHECK(report.front().find("2") != std::string::npos);
  CHECK_FALSE(validate(two_term(1).shifted(-1)).empty());
  CHECK(validate(two_term(1).shifted(-1), true).empty());
  CHECK_THROWS_AS(ChainComplex(Z(), 0, {1, 1}, {Matrix::zero(Z(), 0, 1), M({{1, 2}})}), Error);
}

TEST_CASE("homology examples") {
  CHECK(homology_invariants(two_term(1)).exact());
  auto h2 = homology_invariants(two_term(2));
  CHECK_FALSE(h2.exact());
  for (const auto& g : h2.degrees) {
    if (g.degree == 0) {
      CHECK(g.free_rank == 0);
      CHECK(g.torsion == std::vector<mpz_class>{2});
    } else {
      CHECK(g.trivial());
    }
  }
  for (const auto& g : homology_invariants(two_term(0)).degrees) {
    CHECK(g.free_rank == 1);
    CHECK(g.torsion.empty());
  }
  // Z/2 ⊕ Z/6 from a diagonal differential
  auto x = ChainComplex::from_differentials(Z(), 0, {M({{2, 0}, {0, 6}})});
  for (const auto& g : homology_invariants(x).degrees)
    if (g.degree == 0) CHECK(g.torsion == std::vector<mpz_class>{2, 6});
  // over a field torsion disappears
  CHECK(homology_invariants(two_term(2, Q())).exact());
  CHECK_FALSE(homology_invariants(two_term(2, Ring::modular(2))).exact());
  CHECK_THROWS_AS(homology_invariants(two_term(2, Ring::modular(6))), Error);
}

TEST_CASE("find_contraction examples") {
  auto h = find_contraction(two_term(1));
  REQUIRE(h.has_value());
  CHECK(h->at(0) == M({{1}}));
  CHECK_FALSE(find_contraction(two_term(2)).has_value());
  CHECK(find_contraction(two_term(2, Q())).has_value());
  std::mt19937_64 gen(4);
  for (int t = 0; t < 30; ++t) {
    auto m = random_structure(gen, Z(), S({2}));
    auto id = ChainMap::identity(m.base());
    auto c = cone_complex(id);
    auto hc = find_contraction(c);
    REQUIRE(hc.has_value());
    CHECK(is_null_homotopy(c, *hc, 1));
    CHECK(compose(*hc, *hc).components() == ChainMap(c, c, 2).components());
  }
}

TEST_CASE("contractible iff exact on random integer complexes") {
  std::mt19937_64 gen(9);
  int exact = 0, inexact = 0;
  for (int t = 0; t < 200; ++t) {
    RandomOptions opt;
    opt.contractible = t % 3 == 0;
    auto x = random_structure(gen, Z(), S({static_cast<long>(uniform(gen, 1, 4))}), opt).base();
    bool e = homology_invariants(x).exact();
    auto h = find_contraction(x);
    CHECK(e == h.has_value());
    if (h) CHECK(is_null_homotopy(x, *h, 1));
    (e ? exact : inexact)++;
  }
  CHECK(exact > 20);
  CHECK(inexact > 20);
}

TEST_CASE("check_ses examples") {
  std::mt19937_64 gen(2);
  auto x = random_structure(gen, Z(), S({2})).base();
  auto id = ChainMap::identity(x);
  CHECK(check_ses(ChainMap(ChainComplex(Z()), x, 0), id).ok);
  CHECK_FALSE(check_ses(id, id).ok);
  auto mismatch = check_ses(id, ChainMap::identity(two_term(3)));
  CHECK_FALSE(mismatch.ok);
  CHECK(mismatch.problems.front().find("mismatch") != std::string::npos);
}

TEST_CASE("cone sequences are exact and euler characteristics add") {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 60; ++t) {
    auto a = random_structure(gen, Z(), S({2}));
    auto b = random_structure(gen, Z(), S({3}));
    auto f = random_chain_map(gen, a.base(), b.base());
    CHECK(validate_chain_map(f).empty());
    auto c = cone_mixed(f, a, b);
    auto ses = check_ses(c.inclusion, c.projection);
    CHECK(ses.ok);
    CHECK(c.cone.base().euler_characteristic() ==
          c.inclusion.source().euler_characteristic() + c.projection.target().euler_characteristic());
  }
}

TEST_CASE("chain map inverse") {
  std::mt19937_64 gen(6);
  auto m = random_structure(gen, Z(), S({2}));
  auto id = ChainMap::identity(m.base());
  CHECK(inverse(id).value() == id);
  CHECK_FALSE(inverse(ChainMap::scalar(m.base(), 2)).has_value());
  CHECK(inverse(ChainMap::scalar(two_term(2, Q()), 2)).has_value());
}

TEST_CASE("check_structure examples") {
  CHECK(valid(k2()));
  CHECK(k2().op(0, 0) == M({{1}}));
  HomotopyStructure zero_e(k2().base(), 2, ChainMap(k2().base(), k2().base(), 1));
  auto r = check_structure(zero_e);
  CHECK_FALSE(r.empty());
  auto d = disk(Z(), 1, 2, S({2}));
  CHECK(valid(d));
  CHECK(d.op(0, 1) == M({{2}}));
  CHECK(d.base().d(2) == M({{1}}));
}

TEST_CASE("find_structure exponents on two-term complexes") {
  for (unsigned k = 0; k <= 8; ++k) {
    auto found = find_structure(two_term(1L << k), {S({2})});
    REQUIRE(found.has_value());
    CHECK(found->exponents == std::vector<unsigned>{k});
    CHECK(valid(found->structure));
  }
  auto z2 = find_structure(two_term(2), {S({2})});
  CHECK(z2->structure.op(0, 0) == M({{1}}));
  auto z4 = find_structure(two_term(4), {S({2})});
  CHECK(z4->structure.op(0, 0) == M({{1}}));
  CHECK(find_structure(two_term(4), {S({2, 4})})->exponents == std::vector<unsigned>{2, 1});
}

TEST_CASE("find_structure is inconclusive without a power that kills homology") {
  CHECK_FALSE(find_structure(two_term(0), {S({2})}).has_value());
  CHECK_FALSE(find_structure(two_term(6), {S({2})}, 10).has_value());
  CHECK_FALSE(find_structure(two_term(2), {S({3})}).has_value());
  CHECK_FALSE(find_structure(two_term(1L << 5), {S({2})}, 4).has_value());
}

TEST_CASE("find_structure on exact complexes needs no power") {
  std::mt19937_64 gen(14);
  for (int t = 0; t < 40; ++t) {
    RandomOptions opt;
    opt.contractible = true;
    auto x = random_structure(gen, Z(), S({5}), opt).base();
    auto found = find_structure(x, {S({2, 3})});
    REQUIRE(found.has_value());
    CHECK(found->exponents == std::vector<unsigned>{0, 0});
    CHECK(valid(found->structure));
  }
}

TEST_CASE("find_structure results are valid on random modules") {
  std::mt19937_64 gen(15);
  for (int t = 0; t < 40; ++t) {
    auto m = random_structure(gen, Z(), S({6}));
    auto found = find_structure(m.base(), {S({6})}, 4);
    REQUIRE(found.has_value());
    CHECK(found->exponents.front() <= 1);
    CHECK(valid(found->structure));
    auto other = find_structure(m.base(), {S({6})}, 4, 99);
    REQUIRE(other.has_value());
    CHECK(valid(other->structure));
  }
}

TEST_CASE("restriction of scalars") {
  auto k = k2();
  CHECK(restrict(k, S({1})) == k);
  auto r = restrict(k, S({2}));
  CHECK(r.scalars() == S({4}));
  CHECK(r.op(0, 0) == M({{2}}));
  CHECK(valid(r));
  CHECK_THROWS_AS(restrict(k, S({2, 3})), Error);
  std::mt19937_64 gen(16);
  for (int t = 0; t < 100; ++t) {
    auto m = random_structure(gen, Z(), S({2, 3}));
    REQUIRE(valid(m));
    auto a = S({uniform(gen, -4, 4), uniform(gen, -4, 4)});
    auto b = S({uniform(gen, -4, 4), uniform(gen, -4, 4)});
    CHECK(valid(restrict(m, a)));
    CHECK(restrict(restrict(m, a), b) == restrict(m, multiply(Z(), a, b)));
  }
}

TEST_CASE("a tuple structure is independent single-scalar structures") {
  std::mt19937_64 gen(17);
  for (int t = 0; t < 30; ++t) {
    auto m = random_structure(gen, Z(), S({2, 3, 5}));
    for (std::size_t i = 0; i < m.arity(); ++i) {
      HomotopyStructure single(m.base(), m.scalars()[i], m.op(i));
      CHECK(valid(single));
    }
    auto ops = m.ops();
    std::swap(ops[0], ops[2]);
    HomotopyStructure swapped(m.base(), {m.scalars()[2], m.scalars()[1], m.scalars()[0]}, ops);
    CHECK(valid(swapped));
  }
}

TEST_CASE("zero structure and equivariance") {
  CHECK(valid(zero_structure(Z(), S({2, 3}))));
  std::mt19937_64 gen(18);
  auto m = random_structure(gen, Z(), S({2}));
  CHECK(is_equivariant(ChainMap::identity(m.base()), m, m));
  CHECK(is_equivariant(ChainMap::scalar(m.base(), 3), m, m));
}
