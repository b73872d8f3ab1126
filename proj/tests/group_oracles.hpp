// Oracles over grpeq elements, written without the library's own
// rewriting and census code.

#ifndef GRPEQ_TESTS_GROUP_ORACLES_HPP_
#define GRPEQ_TESTS_GROUP_ORACLES_HPP_

#include <cstdlib>
#include <utility>
#include <vector>

#include "grpeq/generalized.hpp"

namespace oracle {

// Product of the conjugates (c t^k)^-1 g (c t^k), with t^k built by
// repeated multiplication.
inline grpeq::GroupElement expansion(const grpeq::RewrittenEquation& re) {
  using namespace grpeq;
  const auto& fp = as_free_product(*re.ambient);
  GroupElement out = fp.inject(1, re.t);
  if (re.sign < 0)
    out = inv(out);
  for (const auto& term : re.terms) {
    GroupElement s = re.vargroup->identity();
    for (long long i = 0; i < std::llabs(term.k); ++i)
      s = s * (term.k > 0 ? re.t : inv(re.t));
    s = term.coset * s;
    out = out * conj(fp.inject(0, term.g), fp.inject(1, s));
  }
  return out;
}

// Factorization count of each product of X Y by pairwise comparison.
inline std::vector<std::pair<grpeq::GroupElement, int>> census(
    const std::vector<grpeq::GroupElement>& x, const std::vector<grpeq::GroupElement>& y) {
  std::vector<std::pair<grpeq::GroupElement, int>> out;
  for (const auto& a : x)
    for (const auto& b : y) {
      grpeq::GroupElement p = a * b;
      bool found = false;
      for (auto& [q, k] : out)
        if (q == p) {
          ++k;
          found = true;
        }
      if (!found)
        out.emplace_back(p, 1);
    }
  return out;
}

inline int unique_count(const std::vector<grpeq::GroupElement>& x,
                        const std::vector<grpeq::GroupElement>& y) {
  int n = 0;
  for (const auto& [p, k] : census(x, y))
    n += k == 1;
  return n;
}

} // namespace oracle

#endif
