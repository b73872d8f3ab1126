// The input language of the command-line tool.
//
//   group G = free(a, b) * finite{cyclic 3}
//   let g in G = a b^-1
//   set X in zn(2) = {(0,0), (1,0)}
//   eq E over G var t: a t b t^-1 a t = 1
//   geq W over free(a) with zn(2): (a, (1,0)) (a^-1, (0,1)) = 1
//   meq M over free(a) vars x1, x2: a x1 x2 a^-1 x1^-1 x2^-1 = 1
//
// Group expressions: free(names), zn(k), fours, finite{cyclic n},
// finite{klein}, finite{dihedral n}, finite{[names n0 n1 ...;] rows},
// perm(n){cycles, ...}, declared names, parentheses and A * B. Lines
// starting with # are comments; names in eq/geq/meq are optional.

#ifndef GRPEQ_DSL_HPP_
#define GRPEQ_DSL_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "grpeq/equations.hpp"
#include "grpeq/freegroup.hpp"
#include "grpeq/generalized.hpp"
#include "grpeq/up.hpp"

namespace grpeq {

enum class DeclKind { group, element, set, equation, generalized, multi };
std::string_view decl_name(DeclKind k);

struct Session {
  std::map<std::string, GroupId> groups;
  std::map<std::string, GroupElement> elements;
  std::map<std::string, ElementSet> sets;
  std::map<std::string, Equation> equations;
  std::map<std::string, GeneralizedEquation> generalized;
  std::map<std::string, MultiEquation> multi;
  std::vector<std::pair<std::string, DeclKind>> order;

  std::vector<std::string> names_of(DeclKind k) const;
  bool declared(const std::string& name) const;
};

inline constexpr std::size_t max_script_bytes = 1 << 20;
inline constexpr int max_group_nesting = 32;

// Throws ParseError with a line and column on any malformed statement.
Session parse_session(std::string_view script);
GroupId parse_group_expr(std::string_view text, const Session& s);

} // namespace grpeq

#endif
