// Generalized equations g1 t1 ... gn tn = 1 with the t_i in a variable
// group T, their rewriting along the cosets of <t1 ... tn>, and the
// presentations built from the rewritten form.

#ifndef GRPEQ_GENERALIZED_HPP_
#define GRPEQ_GENERALIZED_HPP_

#include <optional>
#include <string>
#include <vector>

#include "grpeq/equations.hpp"
#include "grpeq/group.hpp"
#include "grpeq/words.hpp"

namespace grpeq {

struct GPair {
  GroupElement g;  // in G
  GroupElement t;  // in T
};

class GeneralizedEquation {
public:
  GeneralizedEquation(GroupId g, GroupId t, std::vector<GPair> pairs);

  const GroupId& group() const { return g_; }
  const GroupId& vargroup() const { return t_; }
  const std::vector<GPair>& pairs() const { return pairs_; }
  // G * T; G occupies operand 0 and T operand 1.
  const GroupId& ambient() const { return ambient_; }
  GroupElement from_g(const GroupElement& g) const;
  GroupElement from_t(const GroupElement& t) const;
  std::set<int> g_factors() const;
  std::set<int> t_factors() const;
  GroupElement word() const;
  std::string to_string() const;

private:
  GroupId g_, t_, ambient_;
  std::vector<GPair> pairs_;
};

GroupElement total_product(const GeneralizedEquation& ge);
// Not conjugate into G inside G * T.
bool is_nontrivial(const GeneralizedEquation& ge);

// COSETS OF <t>

// Left cosets c<t> of a cyclic subgroup of T. Supported for free,
// free-abelian and finite backends.
class CosetSpace {
public:
  CosetSpace(GroupId T, GroupElement t);

  const GroupElement& t() const { return t_; }
  const GroupId& vargroup() const { return T_; }
  // Canonical representative of s<t>; the identity for <t> itself.
  GroupElement rep(const GroupElement& s) const;
  // k with x = t^k, if any.
  std::optional<long long> log(const GroupElement& x) const;
  // s = c t^k with c = rep(s).
  std::pair<GroupElement, long long> decompose(const GroupElement& s) const;
  // +1 or -1 when c^-1 t c = t^(+-1).
  std::optional<int> conjugation_sign(const GroupElement& c) const;
  static bool supports(const Group& T);

private:
  GroupId T_;
  GroupElement t_;
  Word prefix_, core_;  // free backend: t = prefix core prefix^-1
  std::vector<GroupElement> powers_;  // finite backend: t^0 .. t^(ord-1)
};

// REWRITTEN EQUATION

struct RewriteTerm {
  GroupElement g;
  GroupElement coset;  // representative c_x
  long long k;
};

struct RewrittenEquation {
  GroupId group, vargroup, ambient;
  GroupElement t;
  GroupElement label;      // c_y of the conjugating coset (1 for w_1)
  int sign = 1;            // exponent of t in front
  std::vector<RewriteTerm> terms;

  // X_1: distinct cosets occurring in the terms, sorted.
  std::vector<GroupElement> cosets() const;
  // t^sign prod (c_x t^k)^-1 g (c_x t^k) in G * T.
  GroupElement expansion() const;
};

RewrittenEquation coset_rewrite(const GeneralizedEquation& ge);
// The equations w_x, obtained by conjugating w_1 by c_x.
std::vector<RewrittenEquation> conjugate_family(const RewrittenEquation& re,
                                                const std::vector<GroupElement>& xs);

// VERDICT

enum class Tri { yes, no, unknown };
std::string_view tri_name(Tri t);

struct UnimodularVerdict {
  Order order;
  Tri order_infinite = Tri::unknown;
  Tri subgroup_normal = Tri::unknown;
  std::optional<GroupElement> normal_witness;  // s with s^-1 t s not in <t>
  Tri quotient_strong_up = Tri::unknown;
  std::string strong_up_reason;
  std::vector<GroupElement> witness_x, witness_y;  // coset reps in T
  Tri weak_torsion_free = Tri::unknown;            // T/<t> torsion-free
  std::string weak_reason;
  Tri overall = Tri::unknown;
};

UnimodularVerdict unimodular_verdict(const GeneralizedEquation& ge);

// PRESENTATIONS

Presentation emit_KY(const RewrittenEquation& re, const std::vector<GroupElement>& ys,
                     const std::string& witness_var = "tt");
Presentation emit_solution_group(const RewrittenEquation& re, const std::vector<GroupElement>& ys,
                                 int window, const std::string& witness_var = "tt");

// REDUCTION TO ORDINARY EQUATIONS

enum class AmbientChoice { free_product, direct_product, cyclic };
std::string_view ambient_name(AmbientChoice c);

struct OrdinaryReduction {
  Equation equation;
  AmbientChoice choice;
  bool source_nontrivial = false;
  bool result_nontrivial = false;
  // The substitution fixes the conjugacy class of words inside T, so those
  // sources turn into trivial equations.
  bool source_in_conjugate_of_t = false;
  bool preserved() const { return source_nontrivial == result_nontrivial; }
};

// t_i -> t^-1 t_i t over G1 = G * T or G x T, or t_i = s^k -> t^k when T is
// infinite cyclic with generator s.
OrdinaryReduction reduce_to_ordinary(const GeneralizedEquation& ge, AmbientChoice choice);

} // namespace grpeq

#endif
