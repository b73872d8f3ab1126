#include "grpeq/freegroup.hpp"

namespace grpeq {

PowerDecomposition proper_power(std::span<const Letter> w) {
  PowerDecomposition d;
  d.input = reduce(w);
  if (d.input.empty())
    throw PreconditionError("proper_power of the empty word");
  CyclicSplit s = cyclic_split(d.input);
  d.conjugator = s.conjugator;
  d.core = s.core;
  const Word& c = d.core;
  size_t n = c.size();
  // border[i]: length of the longest proper border of c[0..i]
  std::vector<size_t> border(n, 0);
  for (size_t i = 1; i < n; ++i) {
    size_t k = border[i - 1];
    while (k > 0 && c[i] != c[k])
      k = border[k - 1];
    if (c[i] == c[k])
      ++k;
    border[i] = k;
  }
  size_t period = n - border[n - 1];
  if (n % period != 0)
    period = n;
  d.root.assign(c.begin(), c.begin() + static_cast<long>(period));
  d.exponent = static_cast<long long>(n / period);
  d.conjugated_root = multiply(multiply(d.conjugator, d.root), inverse(d.conjugator));
  return d;
}

Word MultiEquation::variable_word() const {
  Word w;
  for (const MultiTerm& t : terms) {
    Letter l = t.variable + 1;
    for (long long k = 0; k < std::llabs(t.exponent); ++k)
      push_reduced(w, t.exponent > 0 ? l : -l);
  }
  return w;
}

std::string MultiEquation::to_string() const {
  std::string s;
  for (const MultiTerm& t : terms) {
    if (!t.coefficient.is_identity())
      s += t.coefficient.to_string() + " ";
    s += variables.at(t.variable);
    if (t.exponent != 1)
      s += "^" + std::to_string(t.exponent);
    s += " ";
  }
  return s + "= 1";
}

std::string_view precheck_name(PrecheckStatus s) {
  switch (s) {
    case PrecheckStatus::applies: return "corollary-applies";
    case PrecheckStatus::silent: return "corollary-silent";
    case PrecheckStatus::degenerate: return "degenerate";
  }
  return "?";
}

CorollaryPrecheck corollary_precheck(const MultiEquation& e) {
  CorollaryPrecheck r;
  r.group_torsion_free = e.group->torsion_free();
  r.variable_word = e.variable_word();
  if (r.variable_word.empty()) {
    r.status = PrecheckStatus::degenerate;
    r.detail = e.terms.empty() ? "no variables occur" : "variable word reduces to the identity";
    return r;
  }
  r.decomposition = proper_power(r.variable_word);
  if (r.decomposition.proper()) {
    r.status = PrecheckStatus::silent;
    r.detail = "variable word is a proper power (exponent " +
               std::to_string(r.decomposition.exponent) + "); sufficient condition not met";
  } else {
    r.status = PrecheckStatus::applies;
    r.detail = r.group_torsion_free
                   ? "variable word is not a proper power; the equation is solvable"
                   : "variable word is not a proper power; solvability also needs G "
                     "torsion-free, which is not certified for " + e.group->description();
  }
  return r;
}

} // namespace grpeq
