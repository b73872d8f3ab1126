// Solutions of equations over small finite groups inside symmetric groups.

#ifndef GRPEQ_FINITE_SOLVER_HPP_
#define GRPEQ_FINITE_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "grpeq/equations.hpp"
#include "grpeq/group.hpp"

namespace grpeq {

// Permutations act on {0, ..., degree-1}; (x y)(i) = x(y(i)).
struct SolutionCertificate {
  int degree = 0;
  std::vector<GroupElement> elements;   // all of G, sorted; point i is elements[i]
  std::vector<Permutation> embedding;   // image of elements[i]
  Permutation solution;
  Permutation residual;                 // the word evaluated at the solution
};

struct FiniteSolve {
  std::optional<SolutionCertificate> certificate;
  std::vector<int> degrees_exhausted;
  std::uint64_t nodes = 0;
  bool budget_hit = false;
  int group_order = 0;
  int max_degree = 0;
};

inline constexpr int finite_solver_order_cap = 64;
inline constexpr int finite_solver_degree_cap = 24;

// Embeds G by its regular representation, extended by fixed points, and
// searches S_d for d = |G| .. max_degree.
FiniteSolve solve_over_finite(const Equation& e, int max_degree, std::int64_t budget_ms = 60000);

Permutation compose(const Permutation& x, const Permutation& y);
Permutation perm_inverse(const Permutation& x);
// 1-based cycle notation, "()" for the identity.
std::string format_cycles(const Permutation& p);

// Checks the embedding (an injective homomorphism on the full table), then
// evaluates the equation at the solution. Throws on malformed input.
bool verify_certificate(const SolutionCertificate& cert, const Equation& e);

} // namespace grpeq

#endif
