#include <doctest.h>

#include "hk/koszul.hpp"
#include "support.hpp"

using namespace hk;
using namespace hk::test;

namespace {

HomotopyStructure k2() { return koszul(Z(), S({2})); }

HomotopyStructure sample(std::mt19937_64& gen, long s, int hi = 3, std::size_t max_rank = 4) {
  RandomOptions opt;
  opt.hi = hi;
  opt.max_rank = max_rank;
  return random_structure(gen, Z(), S({s}), opt);
}

bool same_module(const HomotopyStructure& a, const HomotopyStructure& b) {
  int lo = std::min(a.base().lo(), b.base().lo());
  int hi = std::max(a.base().hi(), b.base().hi());
  return rewindowed(a, lo, hi) == rewindowed(b, lo, hi);
}

}  // namespace

TEST_CASE("suspension") {
  auto z = zero_structure(Z(), S({2}));
  CHECK(suspend(z).base().is_zero());
  auto s = suspend(k2());
  CHECK(valid(s));
  CHECK(s.base().rank(2) == 1);
  CHECK(s.base().rank(1) == 1);
  CHECK(s.base().rank(0) == 0);
  CHECK(s.base().d(2) == M({{-2}}));
  CHECK(s.op(0, 1) == M({{-1}}));
  auto ss = suspend(s);
  CHECK(ss.base().d(3) == M({{2}}));
  CHECK(ss.op(0, 2) == M({{1}}));
  CHECK(same_module(suspend(s, -1), k2()));
  std::mt19937_64 gen(30);
  for (int t = 0; t < 50; ++t) {
    auto m = sample(gen, 3);
    auto sm = suspend(m);
    CHECK(valid(sm));
    CHECK(sm.scalars() == m.scalars());
    CHECK(sm.base().euler_characteristic() == -m.base().euler_characteristic());
  }
}

TEST_CASE("duality") {
  auto d = dual(k2(), 1);
  CHECK(valid(d));
  CHECK(d.base().d(1) == M({{2}}));
  CHECK(d.op(0, 0) == M({{1}}));
  auto disk_dual = dual(disk(Z(), 2, 1, S({3})), 1);
  CHECK(same_module(disk_dual, disk(Z(), 2, 1, S({3}))));
  std::mt19937_64 gen(31);
  for (int t = 0; t < 50; ++t) {
    auto m = sample(gen, 6);
    auto dm = dual(m, 3);
    CHECK(valid(dm));
    CHECK(same_module(dual(dm, 3), m));
    for (int k = 0; k <= 3; ++k) CHECK(dm.base().rank(3 - k) == m.base().rank(k));
  }
  CHECK_THROWS_AS(dual(suspend(k2(), 3), 2), Error);
}

TEST_CASE("disks") {
  auto d = disk(Z(), 1, 2, S({2}));
  CHECK(valid(d));
  CHECK(d.base().d(2) == M({{1}}));
  CHECK(d.op(0, 1) == M({{2}}));
  CHECK(disk(Z(), 0, 3, S({2})).base().is_zero());
  for (std::size_t r = 1; r <= 3; ++r) {
    auto dr = disk(Z(), r, 3, S({2, 5}));
    CHECK(valid(dr));
    auto h = find_contraction(dr.base());
    REQUIRE(h.has_value());
    CHECK(h->at(2) == Matrix::identity(Z(), r));
  }
}

TEST_CASE("direct sums") {
  std::mt19937_64 gen(32);
  auto m = sample(gen, 2);
  CHECK(same_module(direct_sum(m, zero_structure(Z(), S({2}))), m));
  CHECK(direct_sum(zero_structure(Z(), S({2})), zero_structure(Z(), S({2}))).base().is_zero());
  CHECK_THROWS_AS(direct_sum(m, koszul(Z(), S({3}))), Error);
  for (int t = 0; t < 30; ++t) CHECK(valid(direct_sum(sample(gen, 2), sample(gen, 2))));
}

TEST_CASE("mixed cones") {
  std::mt19937_64 gen(33);
  for (int t = 0; t < 60; ++t) {
    auto mx = sample(gen, 2);
    auto my = sample(gen, 3);
    auto f = random_chain_map(gen, mx.base(), my.base());
    auto c = cone_mixed(f, mx, my);
    CHECK(valid(c.cone));
    CHECK(c.cone.scalars() == S({6}));
    CHECK(check_ses(c.inclusion, c.projection).ok);
    CHECK(is_equivariant(c.inclusion, c.left, c.cone));
    CHECK(is_equivariant(c.projection, c.cone, c.right));
    CHECK(same_module(c.left, restrict(my, S({2}))));
    CHECK(same_module(c.right, restrict(suspend(mx), S({3}))));
  }
}

TEST_CASE("mixed cone special cases") {
  std::mt19937_64 gen(34);
  auto mx = sample(gen, 2);
  auto my = sample(gen, 3);
  auto zero_map = ChainMap(mx.base(), my.base(), 0);
  auto split = cone_mixed(zero_map, mx, my);
  CHECK(same_module(split.cone, direct_sum(restrict(my, S({2})), restrict(suspend(mx), S({3})))));

  auto from_zero = cone_mixed(ChainMap(ChainComplex(Z()), my.base(), 0), zero_structure(Z(), S({2})), my);
  CHECK(same_module(from_zero.cone, restrict(my, S({2}))));

  auto c = cone_mixed(ChainMap::identity(k2().base()), k2(), k2());
  CHECK(c.cone.scalars() == S({4}));
  CHECK(valid(c.cone));
  CHECK(find_contraction(c.cone.base()).has_value());
}

TEST_CASE("same-scalar cones") {
  std::mt19937_64 gen(35);
  for (int t = 0; t < 40; ++t) {
    auto m = sample(gen, 5);
    auto c = cone_same(ChainMap::identity(m.base()), m, m);
    CHECK(valid(c.cone));
    CHECK(c.cone.scalars() == S({5}));
    CHECK(check_ses(c.inclusion, c.projection).ok);
    CHECK(is_equivariant(c.inclusion, m, c.cone));
    CHECK(is_equivariant(c.projection, c.cone, suspend(m)));
    CHECK(find_contraction(c.cone.base()).has_value());
    auto split = cone_same(ChainMap(m.base(), m.base(), 0), m, m);
    CHECK(same_module(split.cone, direct_sum(m, suspend(m))));
  }
  auto m = sample(gen, 5);
  auto twisted = random_twist(gen, m);
  if (!(twisted == m) && !is_equivariant(ChainMap::identity(m.base()), m, twisted))
    CHECK_THROWS_AS(cone_same(ChainMap::identity(m.base()), m, twisted), Error);
}

TEST_CASE("peeling") {
  auto d = disk(Z(), 2, 3, S({2}));
  auto one = peel_top(d, 3);
  CHECK(one.quotient.base().is_zero());
  CHECK(check_ses(one.inclusion, one.quotient_map).ok);

  auto dd = direct_sum(disk(Z(), 1, 2, S({2})), disk(Z(), 2, 1, S({2})));
  auto steps = peel_all(dd, 2);
  REQUIRE(steps.size() == 2);
  CHECK(steps.back().quotient.base().is_zero());

  auto c = cone_same(ChainMap::identity(k2().base()), k2(), k2()).cone;
  auto cs = peel_all(c, 2);
  REQUIRE(cs.size() == 2);
  CHECK(cs.back().quotient.base().is_zero());

  CHECK_THROWS_AS(peel_top(k2(), 1), Error);
}

TEST_CASE("peeling random contractible modules") {
  std::mt19937_64 gen(36);
  for (int t = 0; t < 40; ++t) {
    RandomOptions opt;
    opt.hi = static_cast<int>(uniform(gen, 1, 4));
    opt.contractible = true;
    auto m = random_structure(gen, Z(), S({3}), opt);
    auto steps = peel_all(m, opt.hi);
    REQUIRE(steps.size() == static_cast<std::size_t>(opt.hi));
    auto cur = m;
    for (const auto& st : steps) {
      CHECK(valid(st.disk));
      CHECK(valid(st.quotient));
      CHECK(check_ses(st.inclusion, st.quotient_map).ok);
      CHECK(is_equivariant(st.inclusion, st.disk, cur));
      CHECK(is_equivariant(st.quotient_map, cur, st.quotient));
      cur = st.quotient;
    }
    CHECK(cur.base().is_zero());
  }
}

TEST_CASE("gluing extensions") {
  std::mt19937_64 gen(37);
  const long scalars[] = {2, 3, 5};
  for (int t = 0; t < 200; ++t) {
    long s = scalars[uniform(gen, 0, 2)], u = scalars[uniform(gen, 0, 2)];
    int hi = static_cast<int>(uniform(gen, 1, 3));
    auto ma = sample(gen, s, hi + 1, 3);
    auto mx = sample(gen, u, hi, 3);
    auto mc = suspend(mx);
    auto f = random_chain_map(gen, mx.base(), ma.base());
    auto c = cone_complex(f);
    ChainMap inc(ma.base(), c, 0), proj(c, mc.base(), 0);
    for (int k = c.lo(); k <= c.hi(); ++k) {
      std::size_t ra = ma.base().rank(k), rc = mc.base().rank(k);
      inc.set(k, vstack(Matrix::identity(Z(), ra), Matrix::zero(Z(), rc, ra)));
      proj.set(k, hstack(Matrix::zero(Z(), rc, ra), Matrix::identity(Z(), rc)));
    }
    REQUIRE(check_ses(inc, proj).ok);
    auto b = glue_extension(inc, proj, ma, mc);
    CHECK(valid(b));
    CHECK(b.scalars() == S({s * u}));
    CHECK(is_equivariant(inc, restrict(ma, S({u})), b));
    CHECK(is_equivariant(proj, b, restrict(mc, S({s}))));
  }
}

TEST_CASE("gluing degenerate extensions") {
  std::mt19937_64 gen(38);
  auto mc = sample(gen, 3);
  auto za = zero_structure(Z(), S({2}));
  auto only_c = glue_extension(ChainMap(ChainComplex(Z()), mc.base(), 0), ChainMap::identity(mc.base()), za, mc);
  CHECK(same_module(only_c, restrict(mc, S({2}))));
  auto ma = sample(gen, 2);
  auto zc = zero_structure(Z(), S({3}));
  auto only_a = glue_extension(ChainMap::identity(ma.base()), ChainMap(ma.base(), ChainComplex(Z()), 0), ma, zc);
  CHECK(same_module(only_a, restrict(ma, S({3}))));
}

TEST_CASE("tensor products") {
  auto unit = ChainComplex(Z(), 0, {1}, {Matrix::zero(Z(), 0, 1)});
  std::mt19937_64 gen(39);
  auto x = sample(gen, 2).base();
  CHECK(tensor_free(x, unit) == x);
  auto kk = tensor_free(k2().base(), koszul(Z(), S({3})).base());
  CHECK(validate(kk).empty());
  CHECK(kk.ranks() == std::vector<std::size_t>{1, 2, 1});
  auto shifted = suspend(tensor_module(k2(), 3), 2);
  CHECK(valid(shifted));
  CHECK(shifted.base().rank(3) == 3);
  CHECK(shifted.base().rank(2) == 3);
  CHECK(valid(module_tensor(2, koszul(Z(), S({2, 3})))));
  CHECK_THROWS_AS(tensor_free(x, ChainComplex(Q(), 0, {1}, {Matrix::zero(Q(), 0, 1)})), Error);
}
