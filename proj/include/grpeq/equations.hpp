// Ordinary equations g1 t^e1 ... gn t^en = 1 over a group G.

#ifndef GRPEQ_EQUATIONS_HPP_
#define GRPEQ_EQUATIONS_HPP_

#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "grpeq/group.hpp"
#include "grpeq/words.hpp"

namespace grpeq {

struct Term {
  GroupElement coefficient;
  long long exponent;
};

class Equation {
public:
  Equation(GroupId group, std::vector<Term> terms, std::string variable = "t");

  const GroupId& group() const { return group_; }
  const std::vector<Term>& terms() const { return terms_; }
  const std::string& variable() const { return variable_; }
  // G * <t>, with the letter as the last flattened factor.
  const GroupId& ambient() const { return ambient_; }
  int letter() const { return letter_; }
  int constant_factor_count() const { return letter_; }
  std::set<int> constant_factors() const;
  // Injects an element of G into the ambient.
  GroupElement constant(const GroupElement& g) const;
  GroupElement t_power(long long k) const;
  GroupElement word() const;
  long long exponent_sum() const;
  std::string to_string() const;

private:
  GroupId group_;
  std::vector<Term> terms_;
  std::string variable_;
  GroupId ambient_;
  int letter_ = 0;
};

// Reads a word of G * <t> back into terms. A trailing constant is moved to
// the front (a cyclic conjugate, so the solution set is unchanged).
Equation equation_from_word(const GroupId& g, const std::string& variable,
                            const GroupElement& word);
// g1^-1 w^-1 g1 written as terms: exponent sum negated, triviality kept.
Equation inverted(const Equation& e);

// CLASSIFICATION

enum class EquationKind { singular, nonsingular, unimodular };
std::string_view kind_name(EquationKind k);

struct Classification {
  long long length = 0;        // occurrences of t^+-1 in the reduced word
  long long exponent_sum = 0;
  EquationKind kind = EquationKind::singular;
  bool trivial = false;        // cyclic core lies in G
};

Classification classify(const Equation& e);

// NORMAL FORM

// Copies H_i, K_i of the factors of G, for levels lo..hi. Copy (level i,
// factor f) stands for t^-i g t^i inside G * <t>.
struct LevelWindow {
  GroupId group;               // free product of the copies
  int lo = 0, hi = 0;
  int factors = 0;             // flattened factors of G
  std::set<int> h;             // factors of G that belong to H

  int index(int level, int factor) const { return (level - lo) * factors + factor; }
  int level_of(int index) const { return lo + index / factors; }
  int factor_of(int index) const { return index % factors; }
  // Sources for H-bar * K_from * ... * K_to.
  std::set<int> sub(int k_from, int k_to) const;
  GroupElement to_ambient(const GroupElement& x, const Equation& e) const;
  std::string format(const GroupElement& x) const;
};

struct Form6 {
  long long m = 0;
  long long n = 0;
  GroupElement c;
  std::vector<std::pair<GroupElement, GroupElement>> pairs;  // (b_i, a_i)
  bool property1 = false;                // n >= 1
  std::vector<bool> a_outside;           // a_i not in G^(m-1)
  std::vector<bool> b_outside;           // b_i not in (G^(m-1))^t
  bool property2 = false;
  bool property3_implied = false;        // follows from property 2
};

// The length-one case: the system reduces to t = u.
struct LengthOne {
  GroupElement c;   // c t is a conjugate of w, c in H-bar * K_0
  GroupElement u;   // u = c^-1
};

struct NormalForm {
  explicit NormalForm(Equation e) : equation(std::move(e)) {}

  Equation equation;        // after inversion when the exponent sum was -1
  bool inverted = false;
  LevelWindow window;
  GroupElement conjugator;  // q with q^-1 w q equal to the expansion
  std::size_t rotation = 0;
  long long shift = 0;
  long long span = 0;       // K-level span of the chosen rotation
  std::size_t rotations_examined = 0;
  std::variant<Form6, LengthOne> form;
  bool expansion_verified = false;

  bool length_one() const { return std::holds_alternative<LengthOne>(form); }
  // c t prod b_i t^-1 a_i t (or c t) in G * <t>.
  GroupElement expansion() const;
};

// G = H * K with H the given flattened factors of G (possibly none) and K
// the rest. Requires |sigma| = 1 and w not conjugate into H * <t>.
NormalForm normal_form_6(const Equation& e, const std::set<int>& h_factors);

inline constexpr int default_window = 8;

// System (x^-1 H_i x = H_{i+1}, x^-1 K_i x = K_{i+1}, c x prod b x^-1 a x)
// over H_{-W..W} * K_0..K_m; the length-one case gives u^-1 H_i u = H_{i+1}.
Presentation emit_system_7(const NormalForm& f, int window = default_window,
                           const std::string& variable = "x");

// <G, t | relators of G, w>
Presentation universal_solution_group(const Equation& e);

// Generator names of each flattened factor of a group, disambiguated.
std::vector<std::vector<std::string>> factor_generator_names(const Group& g);
// Flattened factors of G (G itself when it is not a free product).
std::vector<GroupId> flat_factors(const GroupId& g);

} // namespace grpeq

#endif
