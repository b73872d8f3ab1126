// Proper powers in free groups and the multivariable equation precheck.

#ifndef GRPEQ_FREEGROUP_HPP_
#define GRPEQ_FREEGROUP_HPP_

#include <string>
#include <vector>

#include "grpeq/freeword.hpp"
#include "grpeq/group.hpp"

namespace grpeq {

struct PowerDecomposition {
  Word input;        // reduced
  Word conjugator;   // input = conjugator core conjugator^-1
  Word core;         // cyclically reduced
  Word root;         // primitive root of the core
  long long exponent = 1;
  // conjugator root conjugator^-1, whose exponent-th power is the input
  Word conjugated_root;

  bool proper() const { return exponent >= 2; }
};

// Smallest period of the cyclic core via a border array.
PowerDecomposition proper_power(std::span<const Letter> w);

// g1 x_j1^e1 g2 x_j2^e2 ... gn x_jn^en = 1 over G.
struct MultiTerm {
  GroupElement coefficient;
  int variable;      // 0-based index into variables
  long long exponent;
};

struct MultiEquation {
  GroupId group;
  std::vector<std::string> variables;
  std::vector<MultiTerm> terms;

  // prod x_ji^ei as a reduced word with letters 1..variables.size().
  Word variable_word() const;
  std::string to_string() const;
};

enum class PrecheckStatus { applies, silent, degenerate };
std::string_view precheck_name(PrecheckStatus s);

struct CorollaryPrecheck {
  PrecheckStatus status = PrecheckStatus::degenerate;
  Word variable_word;
  PowerDecomposition decomposition;
  // The conclusion needs G torsion-free; false when the backend cannot
  // certify it.
  bool group_torsion_free = false;
  std::string detail;
};

CorollaryPrecheck corollary_precheck(const MultiEquation& e);

} // namespace grpeq

#endif
