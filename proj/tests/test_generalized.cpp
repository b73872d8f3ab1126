#include <doctest.h>

#include <numeric>

#include "grpeq/generalized.hpp"
#include "group_oracles.hpp"
#include "helpers.hpp"

using namespace grpeq;

namespace {

GroupElement evaluate_in(const Word& w, const std::vector<GroupElement>& images,
                         const GroupId& target) {
  GroupElement x = target->identity();
  for (Letter l : w)
    x = x * (l > 0 ? images[l - 1] : inv(images[-l - 1]));
  return x;
}

// Images of a K_Y or solution-group presentation inside G * T: the copy of g
// for coset c goes to c^-1 g c, generators of T to themselves and the
// witness letter to t.
std::vector<GroupElement> canonical_images(const Presentation& p, const RewrittenEquation& re,
                                           const std::vector<GroupElement>& reps) {
  const auto& fp = as_free_product(*re.ambient);
  auto ggens = re.group->generators();
  auto tgens = re.vargroup->generators();
  auto gnames = re.group->presentation()->generators;
  auto tnames = re.vargroup->presentation()->generators;
  std::vector<GroupElement> images;
  for (const auto& gen : p.generators) {
    auto dot = gen.name.rfind(".x");
    if (dot != std::string::npos) {
      std::string base = gen.name.substr(0, dot);
      size_t idx = std::stoul(gen.name.substr(dot + 2));
      size_t gi = std::find(gnames.begin(), gnames.end(), base) - gnames.begin();
      REQUIRE(gi < ggens.size());
      REQUIRE(idx < reps.size());
      images.push_back(conj(fp.inject(0, ggens[gi]), fp.inject(1, reps[idx])));
    } else if (gen.name == "tt") {
      images.push_back(fp.inject(1, re.t));
    } else {
      size_t ti = std::find(tnames.begin(), tnames.end(), gen.name) - tnames.begin();
      REQUIRE(ti < tgens.size());
      images.push_back(fp.inject(1, tgens[ti]));
    }
  }
  return images;
}

} // namespace

TEST_CASE("coset representatives are canonical") {
  std::mt19937 rng(11);
  std::vector<GroupId> ts = {free_abelian(2), free_abelian(3), free_group({"x", "y"}),
                             free_group({"x"}), cyclic_group(6), dihedral_group(4)};
  for (const auto& T : ts) {
    for (int trial = 0; trial < 60; ++trial) {
      GroupElement t = fixtures::random_element(T, rng, 3);
      if (t.is_identity())
        continue;
      CosetSpace cs(T, t);
      CHECK(cs.rep(T->identity()).is_identity());
      GroupElement s = fixtures::random_element(T, rng, 4);
      std::uniform_int_distribution<int> j(-3, 3);
      int k = j(rng);
      CHECK(cs.rep(s * pow(t, k)) == cs.rep(s));
      auto [c, e] = cs.decompose(s);
      CHECK(c * pow(t, e) == s);
      CHECK(cs.log(pow(t, k)).has_value());
    }
  }
}

TEST_CASE("coset rewrite expansion reproduces the word") {
  std::mt19937 rng(5);
  std::vector<GroupId> gs = {free_group({"a", "b"}), cyclic_group(3)};
  std::vector<GroupId> ts = {free_abelian(2), free_abelian(3), free_group({"x", "y"})};
  int checked = 0;
  for (const auto& G : gs)
    for (const auto& T : ts)
      for (int trial = 0; trial < 80; ++trial) {
        int n = 1 + trial % 5;
        auto ge = fixtures::random_generalized(G, T, rng, n, 2);
        RewrittenEquation re = coset_rewrite(ge);
        CHECK(oracle::expansion(re) == ge.word());
        CHECK(re.expansion() == ge.word());
        ++checked;
      }
  CHECK(checked == 480);
}

TEST_CASE("conjugate family matches conjugation by coset labels") {
  std::mt19937 rng(17);
  std::vector<GroupId> ts = {free_abelian(2), free_abelian(3), free_group({"x"})};
  GroupId G = free_group({"a", "b"});
  for (const auto& T : ts)
    for (int trial = 0; trial < 20; ++trial) {
      auto ge = fixtures::random_generalized(G, T, rng, 3, 2);
      RewrittenEquation re = coset_rewrite(ge);
      CosetSpace cs(T, re.t);
      std::vector<GroupElement> ys;
      for (int i = 0; i < 12; ++i)
        ys.push_back(fixtures::random_element(T, rng, 3));
      auto fam = conjugate_family(re, ys);
      REQUIRE(fam.size() == ys.size());
      for (size_t i = 0; i < ys.size(); ++i) {
        GroupElement cy = as_free_product(*ge.ambient()).inject(1, cs.rep(ys[i]));
        CHECK(fam[i].expansion() == conj(re.expansion(), cy));
        CHECK(oracle::expansion(fam[i]) == conj(ge.word(), cy));
      }
    }
}

TEST_CASE("conjugate family rejects a non-normal subgroup") {
  GroupId T = free_group({"x", "y"});
  GroupId G = cyclic_group(3);
  GeneralizedEquation ge(G, T, {{G->parse("g"), T->parse("x")}});
  RewrittenEquation re = coset_rewrite(ge);
  CHECK_THROWS_AS(conjugate_family(re, {T->parse("y")}), PreconditionError);
}

TEST_CASE("unimodular verdict over infinite cyclic and free abelian T") {
  std::mt19937 rng(23);
  GroupId G = free_group({"a"});
  GroupId Z = free_group({"s"});
  for (int trial = 0; trial < 100; ++trial) {
    auto ge = fixtures::random_generalized(G, Z, rng, 1 + trial % 4, 3);
    long long sigma = exponent_sums(total_product(ge).as<FreeWord>().letters, 1)[0];
    UnimodularVerdict v = unimodular_verdict(ge);
    CHECK(v.overall == (std::llabs(sigma) == 1 ? Tri::yes : Tri::no));
    if (v.overall == Tri::no && sigma != 0)
      CHECK(v.witness_x.size() == static_cast<size_t>(std::llabs(sigma)));
  }
  GroupId Z2 = free_abelian(2);
  for (int trial = 0; trial < 100; ++trial) {
    auto ge = fixtures::random_generalized(G, Z2, rng, 2, 3);
    auto c = total_product(ge).as<IntVector>().coords;
    long long g = std::gcd(std::llabs(c[0]), std::llabs(c[1]));
    UnimodularVerdict v = unimodular_verdict(ge);
    CHECK(v.subgroup_normal == Tri::yes);
    CHECK(v.overall == (g == 1 ? Tri::yes : Tri::no));
    CHECK(v.weak_torsion_free == (g == 1 ? Tri::yes : Tri::no));
  }
}

TEST_CASE("unimodular verdict on finite and non-normal cases") {
  GroupId G = free_group({"a"});
  GroupId C6 = cyclic_group(6);
  GeneralizedEquation ge(G, C6, {{G->parse("a"), C6->parse("g")}});
  auto v = unimodular_verdict(ge);
  CHECK(v.order_infinite == Tri::no);
  CHECK(v.overall == Tri::no);
  GroupId F2 = free_group({"x", "y"});
  GeneralizedEquation ge2(G, F2, {{G->parse("a"), F2->parse("x")}});
  auto v2 = unimodular_verdict(ge2);
  CHECK(v2.subgroup_normal == Tri::no);
  CHECK(v2.overall == Tri::no);
  REQUIRE(v2.normal_witness.has_value());
}

TEST_CASE("K_Y and solution group map into G * T") {
  std::mt19937 rng(29);
  std::vector<std::pair<GroupId, GroupId>> cases = {
      {free_group({"a", "b"}), free_abelian(2)},
      {cyclic_group(3), free_abelian(2)},
      {free_group({"a"}), free_group({"s"})},
  };
  for (const auto& [G, T] : cases)
    for (int trial = 0; trial < 10; ++trial) {
      auto ge = fixtures::random_generalized(G, T, rng, 3, 2);
      RewrittenEquation re = coset_rewrite(ge);
      CosetSpace cs(T, re.t);
      std::vector<GroupElement> ys{T->identity(), cs.rep(fixtures::random_element(T, rng, 2))};

      Presentation ky = emit_KY(re, ys);
      std::vector<GroupElement> reps;
      for (const auto& gen : ky.generators)
        if (gen.name.rfind(".x") != std::string::npos) {
          std::string c = gen.note.substr(gen.note.find("coset ") + 6);
          size_t idx = std::stoul(gen.name.substr(gen.name.rfind(".x") + 2));
          if (reps.size() <= idx)
            reps.resize(idx + 1);
          reps[idx] = T->parse(c);
        }
      auto images = canonical_images(ky, re, reps);
      auto fam = conjugate_family(re, ys);
      size_t wy = 0;
      for (size_t i = 0; i < ky.relators.size(); ++i) {
        GroupElement x = evaluate_in(ky.relators[i], images, ge.ambient());
        if (ky.relator_notes[i].rfind("w_y", 0) == 0) {
          CHECK(x == fam[wy].expansion());
          ++wy;
        } else {
          CHECK(x.is_identity());
        }
      }
      CHECK(wy == ys.size());

      for (int window : {0, 1, 2}) {
        Presentation sg = emit_solution_group(re, ys, window);
        std::vector<GroupElement> sreps;
        for (const auto& gen : sg.generators)
          if (gen.name.rfind(".x") != std::string::npos) {
            std::string c = gen.note.substr(gen.note.find("coset ") + 6);
            size_t idx = std::stoul(gen.name.substr(gen.name.rfind(".x") + 2));
            if (sreps.size() <= idx)
              sreps.resize(idx + 1);
            sreps[idx] = T->parse(c);
          }
        auto simages = canonical_images(sg, re, sreps);
        for (size_t i = 0; i < sg.relators.size(); ++i) {
          GroupElement x = evaluate_in(sg.relators[i], simages, ge.ambient());
          if (sg.relator_notes[i].rfind("w_y", 0) != 0)
            CHECK_MESSAGE(x.is_identity(), sg.relator_notes[i]);
        }
        if (window == 0)
          for (const auto& note : sg.relator_notes)
            CHECK(note.rfind("action", 0) != 0);
      }
    }
}

TEST_CASE("reduction to ordinary equations") {
  std::mt19937 rng(31);
  GroupId G = free_group({"a", "b"});
  GroupId T = free_group({"s"});
  int preserved = 0, in_t = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto ge = fixtures::random_generalized(G, T, rng, 1 + trial % 4, 2);
    bool nontrivial = is_nontrivial(ge);
    for (AmbientChoice c : {AmbientChoice::free_product, AmbientChoice::direct_product}) {
      auto r = reduce_to_ordinary(ge, c);
      CHECK(r.source_nontrivial == nontrivial);
      CHECK(r.equation.exponent_sum() == 0);
      if (r.source_in_conjugate_of_t) {
        CHECK_FALSE(r.result_nontrivial);
        ++in_t;
      } else {
        CHECK(r.preserved());
        ++preserved;
      }
    }
    auto rc = reduce_to_ordinary(ge, AmbientChoice::cyclic);
    CHECK(rc.preserved());
    CHECK(rc.equation.exponent_sum() ==
          exponent_sums(total_product(ge).as<FreeWord>().letters, 1)[0]);
  }
  CHECK(preserved > 0);
  GeneralizedEquation pure(G, T, {{G->identity(), T->parse("s")}});
  CHECK(is_nontrivial(pure));
  auto r = reduce_to_ordinary(pure, AmbientChoice::free_product);
  CHECK(r.source_in_conjugate_of_t);
  CHECK_FALSE(r.result_nontrivial);
}
