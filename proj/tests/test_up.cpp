#include <doctest.h>

#include <random>

#include "grpeq/up.hpp"
#include "group_oracles.hpp"
#include "helpers.hpp"

using namespace grpeq;

namespace {

ElementSet ints(const GroupId& z, std::initializer_list<long long> v) {
  ElementSet s;
  for (long long x : v)
    s.push_back(make_vector(z, {x}));
  return s;
}

ElementSet random_set(const GroupId& g, std::mt19937& rng, int max_size, int spread) {
  std::uniform_int_distribution<int> n(2, max_size);
  size_t want = static_cast<size_t>(n(rng));
  ElementSet s{fixtures::random_element(g, rng, spread)};
  while (s.size() < want) {
    s.push_back(fixtures::random_element(g, rng, spread));
    s = normalized_set(s);
  }
  return s;
}

} // namespace

TEST_CASE("up_check small examples") {
  GroupId z = free_abelian(1);
  UPReport r = up_check(ints(z, {0, 1}), ints(z, {0, 1}));
  REQUIRE(r.unique_elements.size() == 2);
  CHECK(r.unique_elements[0] == make_vector(z, {0}));
  CHECK(r.unique_elements[1] == make_vector(z, {2}));
  CHECK(r.products.at(make_vector(z, {1})).size() == 2);
  CHECK(r.multiplicity_total() == 4);

  GroupId k = klein_four();
  ElementSet all = k->elements();
  UPReport rk = up_check(all, all);
  CHECK(rk.unique_elements.empty());
  for (const auto& [p, f] : rk.products)
    CHECK(f.size() == 4);

  UPReport single = up_check({make_vector(z, {5})}, ints(z, {0, 3, 7}));
  CHECK(single.unique_elements.size() == 3);
  CHECK_THROWS_AS(up_check({}, all), PreconditionError);
}

TEST_CASE("census conservation, translation invariance and inversion duality") {
  std::mt19937 rng(3);
  std::vector<GroupId> groups = {free_abelian(2), free_group({"a", "b"}), dihedral_group(5),
                                 fours_group()};
  for (const auto& g : groups)
    for (int trial = 0; trial < 50; ++trial) {
      ElementSet x = random_set(g, rng, 5, 2), y = random_set(g, rng, 5, 2);
      UPReport r = up_check(x, y);
      CHECK(r.multiplicity_total() == x.size() * y.size());
      CHECK(static_cast<int>(r.unique_elements.size()) == oracle::unique_count(x, y));

      GroupElement a = fixtures::random_element(g, rng, 2), b = fixtures::random_element(g, rng, 2);
      ElementSet ax, yb;
      for (const auto& e : x) ax.push_back(a * e);
      for (const auto& e : y) yb.push_back(e * b);
      CHECK(up_check(ax, yb).unique_elements.size() == r.unique_elements.size());

      UPReport d = up_check(inverse_set(y), inverse_set(x));
      ElementSet inv_unique = inverse_set(r.unique_elements);
      CHECK(d.unique_elements == inv_unique);
    }
}

TEST_CASE("strong UP and the Strojnowski bound in Z^2") {
  std::mt19937 rng(7);
  GroupId z2 = free_abelian(2);
  for (int trial = 0; trial < 300; ++trial) {
    ElementSet x = random_set(z2, rng, 5, 3), y = random_set(z2, rng, 5, 3);
    StrojnowskiCheck s = strojnowski_check(x, y);
    CHECK(s.checked);
    CHECK(s.bound_holds);
    CHECK(static_cast<int>(s.unique_count) == oracle::unique_count(x, y));
    StrongUP st = strong_up_check(x, y);
    CHECK(st.holds);
    REQUIRE(st.witness.size() == 2);
    CHECK(st.witness[0].second != st.witness[1].second);
  }
  GroupId z = free_abelian(1);
  CHECK(strojnowski_check(ints(z, {0, 1}), ints(z, {0, 1})).unique_count == 2);
  // |X| = |Y| = 2 in Z: the extreme sums are always unique and the two
  // middle sums either collide or not, so the count is 2 or 4
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      auto c = strojnowski_check(ints(z, {0, a}), ints(z, {0, b})).unique_count;
      CHECK(c == (a == b ? 2u : 4u));
    }

  GroupId f = free_group({"a", "b"});
  auto skipped = strojnowski_check({f->parse("a"), f->parse("b")}, {f->parse("a"), f->identity()});
  CHECK_FALSE(skipped.checked);
  CHECK_THROWS_AS(strong_up_check(ints(z, {0, 1}), ints(z, {0})), PreconditionError);
}

TEST_CASE("UP4 examples and the XYY^-1X^-1 argument") {
  GroupId z = free_abelian(1);
  ElementSet s01 = ints(z, {0, 1});
  UP4 u = up4_check(s01, s01, s01, s01);
  CHECK(u.holds);
  CHECK(u.quadruples == 16);
  CHECK(u.unique_count == 2);

  ElementSet one = ints(z, {3});
  CHECK(up4_check(one, one, one, one).holds);

  GroupId k = klein_four();
  ElementSet all = k->elements();
  UP4 uk = up4_check(all, all, all, all);
  CHECK_FALSE(uk.holds);
  CHECK(uk.quadruples == 256);

  auto na = verify_up4_implies_strong(s01, s01);
  CHECK(na.status == ImplicationStatus::not_applicable);
  auto kk = verify_up4_implies_strong(all, all);
  CHECK(kk.status == ImplicationStatus::confirmed);
  REQUIRE(kk.up4);
  CHECK_FALSE(kk.up4->holds);
}

TEST_CASE("non-UP witness search") {
  GroupId z = free_abelian(1);
  NonUPSearch nz = search_nonup_witness(z, 3, 5, 20000);
  CHECK(nz.status == SearchStatus::exhausted);

  GroupId k = klein_four();
  NonUPSearch nk = search_nonup_witness(k, 2, 4, 20000);
  REQUIRE(nk.status == SearchStatus::found);
  CHECK(oracle::unique_count(nk.witness, nk.witness) == 0);
  // the full group is also a witness, but an order-2 subgroup comes first
  CHECK(nk.witness.size() == 2);
  CHECK(oracle::unique_count(k->elements(), k->elements()) == 0);

  GroupId d = dihedral_group(3);
  NonUPSearch nd = search_nonup_witness(d, 2, 3, 20000);
  REQUIRE(nd.status == SearchStatus::found);
  CHECK(oracle::unique_count(nd.witness, nd.witness) == 0);
}
