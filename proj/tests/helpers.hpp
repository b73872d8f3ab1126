// Shared fixtures for the unit and acceptance tests.

#ifndef GRPEQ_TESTS_HELPERS_HPP_
#define GRPEQ_TESTS_HELPERS_HPP_

#include <cstdlib>
#include <random>
#include <vector>

#include "grpeq/equations.hpp"
#include "grpeq/generalized.hpp"
#include "grpeq/group.hpp"

namespace fixtures {

// G = free(a) * free(b); equations in letters a = 1, b = 2, t = 3.
struct SplitFree {
  grpeq::GroupId a = grpeq::free_group({"a"});
  grpeq::GroupId b = grpeq::free_group({"b"});
  grpeq::GroupId g = grpeq::free_product({a, b});
  grpeq::GroupId amb = grpeq::with_letter(g, "t");

  grpeq::GroupElement ambient_word(const std::vector<int>& letters) const {
    const auto& fp = grpeq::as_free_product(*amb);
    grpeq::GroupElement w = amb->identity();
    for (int l : letters) {
      int f = std::abs(l) - 1;
      int one = l > 0 ? 1 : -1;
      w = w * fp.embed(f, grpeq::make_free(fp.factors()[f], std::vector<int>{one}));
    }
    return w;
  }
  grpeq::Equation equation(const std::vector<int>& letters) const {
    return grpeq::equation_from_word(g, "t", ambient_word(letters));
  }
};

// Random element: a reduced word of length <= size, a vector with entries
// in [-size, size], a product of <= size generators, or a uniform element
// of a finite group.
inline grpeq::GroupElement random_element(const grpeq::GroupId& g, std::mt19937& rng, int size) {
  using namespace grpeq;
  if (g->kind() == GroupKind::free) {
    int rank = static_cast<int>(g->generators().size());
    std::uniform_int_distribution<int> len(0, size), let(1, rank), sgn(0, 1);
    Word w;
    int n = len(rng);
    while (static_cast<int>(w.size()) < n) {
      int l = let(rng) * (sgn(rng) ? 1 : -1);
      if (w.empty() || w.back() != -l)
        w.push_back(l);
    }
    return make_free(g, w);
  }
  if (g->kind() == GroupKind::free_abelian) {
    std::uniform_int_distribution<long long> c(-size, size);
    std::vector<long long> v(g->identity().as<IntVector>().coords.size());
    for (auto& x : v) x = c(rng);
    return make_vector(g, v);
  }
  if (!g->size()) {
    auto gens = g->generators();
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(0, size), sgn(0, 1);
    GroupElement x = g->identity();
    for (int n = len(rng); n > 0; --n) {
      GroupElement s = gens[pick(rng)];
      x = x * (sgn(rng) ? s : inv(s));
    }
    return x;
  }
  auto els = g->elements();
  std::uniform_int_distribution<size_t> pick(0, els.size() - 1);
  return els[pick(rng)];
}

// Random generalized equation with n pairs whose product of t_i is not 1.
inline grpeq::GeneralizedEquation random_generalized(const grpeq::GroupId& g,
                                                     const grpeq::GroupId& t, std::mt19937& rng,
                                                     int n, int size) {
  using namespace grpeq;
  for (;;) {
    std::vector<GPair> pairs;
    for (int i = 0; i < n; ++i)
      pairs.push_back({random_element(g, rng, size), random_element(t, rng, size)});
    GeneralizedEquation ge(g, t, pairs);
    if (!total_product(ge).is_identity())
      return ge;
  }
}

} // namespace fixtures

#endif
