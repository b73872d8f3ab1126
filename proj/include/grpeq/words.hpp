// Word algebra in free products of backends and named infinite-cyclic
// letters, plus finitely presented groups as syntactic objects.
//
// A word of G * <t> is an element of the free product whose last factor is
// free(t); its payload is the syllable normal form.

#ifndef GRPEQ_WORDS_HPP_
#define GRPEQ_WORDS_HPP_

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "grpeq/group.hpp"

namespace grpeq {

// AMBIENTS

// G * <name>: the letter is the last flattened factor.
GroupId with_letter(const GroupId& g, const std::string& name);
int letter_factor(const FreeProductGroup& ambient);
GroupElement letter_power(const GroupId& ambient, int factor, long long k);
// Exponent of a syllable from a rank-1 free factor.
long long letter_exponent(const Syllable& s);
bool is_letter_factor(const Group& g);

// Syllables as a plain list (empty for the identity).
std::vector<Syllable> syllables_of(const GroupElement& w);
std::size_t syllable_length(const GroupElement& w);

// CYCLIC REDUCTION

struct CyclicReduction {
  GroupElement core;
  GroupElement conjugator;  // w = conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const GroupElement& w);

// True iff the cyclic core lies in the sub-free-product on `factors`.
bool is_conjugate_to_constant(const GroupElement& w, const std::set<int>& factors);
bool is_conjugate_to_constant(const GroupElement& w, int factor);
bool in_subfreeproduct(const GroupElement& w, const std::set<int>& allowed);
std::set<int> all_sources(const FreeProductGroup& g);

// TRANSCENDENCE FALSIFIER

struct RelationSyllable {
  bool stable = false;   // a power of b
  long long exponent = 0;
  Word a_word;           // word in the generators of A when !stable
  GroupElement value;
};

struct RelationSearch {
  // Nontrivial relation of A * <b> that evaluates to 1, if found.
  std::optional<std::vector<RelationSyllable>> witness;
  int maxlen = 0;
  long long explored = 0;
  bool trivial_a = false;     // A = {1}: only the order of b is tested
  Order b_order;
  std::string describe(const std::vector<std::string>& a_names) const;
};

inline constexpr int default_falsifier_cap = 12;

// Enumerates reduced words of the abstract free product A * <b> with at
// most `maxlen` letters (A-syllables cost their shortest word length in the
// generators of A, b^k costs |k|) and evaluates them in the ambient group.
RelationSearch relation_falsifier(
    const std::vector<GroupElement>& a_gens, const GroupElement& b, int maxlen,
    int cap = default_falsifier_cap,
    const std::function<bool(const GroupElement&)>& is_trivial = {});

// PRESENTATIONS

struct PresentationGenerator {
  std::string name;
  std::string backing;  // description of the group this generator lives in
  std::string note;
};

class Presentation {
public:
  std::vector<PresentationGenerator> generators;
  std::vector<Word> relators;
  std::vector<std::string> relator_notes;  // parallel to relators, may be ""

  // Throws on a name clash.
  int add_generator(const std::string& name, const std::string& backing = "",
                    const std::string& note = "");
  void add_relator(Word w, const std::string& note = "");
  int index_of(const std::string& name) const;  // 1-based letter, 0 if absent
  std::vector<std::string> names() const;
  // Appends all generators and relators of `other`, returning the letter
  // offset at which its generators start.
  int append(const Presentation& other);

  std::string relator_text(const Word& w) const;
  Word parse_word(const std::string& text) const;
  std::string to_text() const;
  nlohmann::json to_json() const;
  static Presentation parse_text(const std::string& text);
  static Presentation from_json(const nlohmann::json& j);

  bool operator==(const Presentation& o) const {
    return names() == o.names() && relators == o.relators;
  }
};

// Presentation of a backend, with generator names as given.
Presentation backend_presentation(const Group& g);

// <base, stable | stable^-1 u stable v^-1 for each (u, v)>
Presentation hnn(const Presentation& base, const std::string& stable,
                 const std::vector<std::pair<Word, Word>>& pairs);
// Disjoint union plus u v^-1 for each glued pair; v is a word of `right`.
Presentation amalgam(const Presentation& left, const Presentation& right,
                     const std::vector<std::pair<Word, Word>>& glue);

} // namespace grpeq

#endif
