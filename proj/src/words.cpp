#include "grpeq/words.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace grpeq {

// AMBIENTS

GroupId with_letter(const GroupId& g, const std::string& name) {
  return free_product({g, free_group({name})});
}

bool is_letter_factor(const Group& g) {
  if (g.kind() != GroupKind::free)
    return false;
  auto p = g.presentation();
  return p && p->generators.size() == 1;
}

int letter_factor(const FreeProductGroup& ambient) {
  int last = static_cast<int>(ambient.factors().size()) - 1;
  require(last >= 0 && is_letter_factor(*ambient.factors()[last]),
          "ambient has no trailing letter factor: " + ambient.description());
  return last;
}

GroupElement letter_power(const GroupId& ambient, int factor, long long k) {
  const auto& fp = as_free_product(*ambient);
  const GroupId& f = fp.factors().at(factor);
  Word w = power(Word{1}, k);
  return fp.embed(factor, make_free(f, w));
}

long long letter_exponent(const Syllable& s) {
  const Word& w = s.value.as<FreeWord>().letters;
  long long e = 0;
  for (Letter l : w) {
    require(std::abs(l) == 1, "letter syllable from a factor of rank above one");
    e += l > 0 ? 1 : -1;
  }
  return e;
}

std::vector<Syllable> syllables_of(const GroupElement& w) { return syllables(w); }

std::size_t syllable_length(const GroupElement& w) { return syllables(w).size(); }

// CYCLIC REDUCTION

CyclicReduction cyclic_reduce(const GroupElement& w) {
  if (w.group().kind() == GroupKind::free) {
    CyclicSplit s = cyclic_split(w.as<FreeWord>().letters);
    return {make_free(w.group_id(), s.core), make_free(w.group_id(), s.conjugator)};
  }
  const auto& fp = as_free_product(w.group());
  std::vector<Syllable> s = syllables(w);
  std::vector<Syllable> conj;
  // w = x m y with x, y in one factor: w = x (m y x) x^-1
  size_t lo = 0, hi = s.size();
  std::vector<Syllable> core;
  bool merged = false;
  while (!merged && hi - lo >= 2 && s[lo].factor == s[hi - 1].factor) {
    GroupElement yx = mul(s[hi - 1].value, s[lo].value);
    conj.push_back(s[lo]);
    if (!yx.is_identity()) {
      core.assign(s.begin() + lo + 1, s.begin() + hi - 1);
      core.push_back({s[lo].factor, yx});
      merged = true;
    }
    ++lo;
    --hi;
  }
  if (!merged)
    core.assign(s.begin() + lo, s.begin() + hi);
  return {fp.from_syllables(core), fp.from_syllables(conj)};
}

bool in_subfreeproduct(const GroupElement& w, const std::set<int>& allowed) {
  for (const Syllable& s : syllables(w))
    if (!allowed.count(s.factor))
      return false;
  return true;
}

bool is_conjugate_to_constant(const GroupElement& w, const std::set<int>& factors) {
  if (w.group().kind() == GroupKind::free)
    return false;
  return in_subfreeproduct(cyclic_reduce(w).core, factors);
}

bool is_conjugate_to_constant(const GroupElement& w, int factor) {
  return is_conjugate_to_constant(w, std::set<int>{factor});
}

std::set<int> all_sources(const FreeProductGroup& g) {
  std::set<int> out;
  for (int i = 0; i < static_cast<int>(g.factors().size()); ++i)
    out.insert(i);
  return out;
}

// TRANSCENDENCE FALSIFIER

std::string RelationSearch::describe(const std::vector<std::string>& a_names) const {
  if (!witness)
    return "no relation up to length " + std::to_string(maxlen);
  std::string out;
  for (const auto& s : *witness) {
    if (!out.empty())
      out += " ";
    if (s.stable)
      out += s.exponent == 1 ? "b" : "b^" + std::to_string(s.exponent);
    else
      out += "[" + format_word(s.a_word, a_names) + "]";
  }
  return out;
}

namespace {

struct AValue {
  GroupElement value;
  Word word;
  int cost;
};

class Falsifier {
public:
  Falsifier(std::vector<AValue> a, GroupElement b, std::function<bool(const GroupElement&)> triv)
      : a_(std::move(a)), b_(std::move(b)), triv_(std::move(triv)) {}

  // Searches words of total cost exactly `budget` that start with b^k.
  bool run(int budget) {
    GroupElement one = b_.group().identity();
    return extend(one, budget, true, true);
  }

  std::vector<RelationSyllable> found;
  long long explored = 0;

private:
  bool trivial(const GroupElement& x) const { return triv_ ? triv_(x) : x.is_identity(); }

  bool extend(const GroupElement& acc, int left, bool next_stable, bool first) {
    if (next_stable) {
      for (int k = 1; k <= left; ++k)
        for (int sgn : {1, -1}) {
          ++explored;
          GroupElement v = mul(acc, pow(b_, sgn * k));
          RelationSyllable syl{true, sgn * k, {}, pow(b_, sgn * k)};
          stack_.push_back(syl);
          if (left == k && first && trivial(v)) {
            found = stack_;
            return true;
          }
          if (left > k && extend(v, left - k, false, false))
            return true;
          stack_.pop_back();
        }
      return false;
    }
    for (const AValue& a : a_) {
      if (a.cost > left)
        break;
      ++explored;
      GroupElement v = mul(acc, a.value);
      stack_.push_back({false, 0, a.word, a.value});
      if (a.cost == left) {
        if (trivial(v)) {
          found = stack_;
          return true;
        }
      } else if (extend(v, left - a.cost, true, false)) {
        return true;
      }
      stack_.pop_back();
    }
    return false;
  }

  std::vector<AValue> a_;
  GroupElement b_;
  std::function<bool(const GroupElement&)> triv_;
  std::vector<RelationSyllable> stack_;
};

} // namespace

RelationSearch relation_falsifier(const std::vector<GroupElement>& a_gens, const GroupElement& b,
                                  int maxlen, int cap,
                                  const std::function<bool(const GroupElement&)>& is_trivial) {
  require(maxlen >= 1, "relation_falsifier: maxlen must be positive");
  if (maxlen > cap)
    throw CapExceeded("relation_falsifier: maxlen " + std::to_string(maxlen) +
                      " exceeds cap " + std::to_string(cap));
  for (const auto& a : a_gens)
    require(same_group(a.group(), b.group()), "relation_falsifier: A and b in different groups");

  RelationSearch out;
  out.maxlen = maxlen;
  out.b_order = element_order(b);
  out.trivial_a = std::all_of(a_gens.begin(), a_gens.end(),
                              [](const GroupElement& a) { return a.is_identity(); });
  if (out.trivial_a) {
    if (out.b_order.is_finite())
      out.witness = std::vector<RelationSyllable>{
          {true, static_cast<long long>(out.b_order.value), {}, pow(b, out.b_order.value)}};
    return out;
  }

  // nonidentity elements of <A> with their shortest words, by cost
  std::vector<AValue> values;
  std::map<GroupElement, bool> seen{{b.group().identity(), true}};
  std::vector<AValue> frontier{{b.group().identity(), {}, 0}};
  for (int r = 1; r < maxlen; ++r) {
    std::vector<AValue> next;
    for (const auto& x : frontier)
      for (int i = 0; i < static_cast<int>(a_gens.size()); ++i)
        for (int sgn : {1, -1}) {
          Word w = x.word;
          push_reduced(w, sgn * (i + 1));
          if (w.size() != static_cast<size_t>(r))
            continue;
          GroupElement v = mul(x.value, sgn > 0 ? a_gens[i] : inv(a_gens[i]));
          if (seen.emplace(v, true).second) {
            values.push_back({v, w, r});
            next.push_back({v, w, r});
          }
        }
    frontier = std::move(next);
  }

  Falsifier f(values, b, is_trivial);
  for (int len = 1; len <= maxlen; ++len) {
    if (f.run(len)) {
      out.witness = f.found;
      break;
    }
  }
  out.explored = f.explored;
  return out;
}

// PRESENTATIONS

int Presentation::add_generator(const std::string& name, const std::string& backing,
                                const std::string& note) {
  if (name.empty() || name.find_first_of(" \t\n,^") != std::string::npos || name == "1")
    throw PreconditionError("invalid generator name '" + name + "'");
  if (index_of(name))
    throw PreconditionError("generator name clash: '" + name + "'");
  generators.push_back({name, backing, note});
  return static_cast<int>(generators.size());
}

void Presentation::add_relator(Word w, const std::string& note) {
  for (Letter l : w)
    require(l != 0 && std::abs(l) <= static_cast<int>(generators.size()),
            "relator mentions an undeclared generator");
  relators.push_back(reduce(w));
  relator_notes.push_back(note);
}

int Presentation::index_of(const std::string& name) const {
  for (size_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name)
      return static_cast<int>(i + 1);
  return 0;
}

std::vector<std::string> Presentation::names() const {
  std::vector<std::string> out;
  for (const auto& g : generators)
    out.push_back(g.name);
  return out;
}

int Presentation::append(const Presentation& other) {
  int offset = static_cast<int>(generators.size());
  for (const auto& g : other.generators)
    add_generator(g.name, g.backing, g.note);
  for (size_t i = 0; i < other.relators.size(); ++i) {
    Word w;
    for (Letter l : other.relators[i])
      w.push_back(l > 0 ? l + offset : l - offset);
    add_relator(w, i < other.relator_notes.size() ? other.relator_notes[i] : "");
  }
  return offset;
}

std::string Presentation::relator_text(const Word& w) const { return format_word(w, names()); }

Word Presentation::parse_word(const std::string& text) const {
  Word out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1")
      continue;
    auto [base, k] = split_power(tok);
    int idx = index_of(base);
    if (!idx)
      throw ParseError("unknown generator '" + base + "' in relator");
    for (Letter l : power(Word{idx}, k))
      push_reduced(out, l);
  }
  return out;
}

std::string Presentation::to_text() const {
  std::string out = "gens:";
  for (size_t i = 0; i < generators.size(); ++i)
    out += (i ? ", " : " ") + generators[i].name;
  out += "\n";
  for (const Word& r : relators)
    out += "rel: " + relator_text(r) + "\n";
  return out;
}

nlohmann::json Presentation::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : generators) {
    nlohmann::json j{{"name", g.name}};
    if (!g.backing.empty())
      j["backing"] = g.backing;
    if (!g.note.empty())
      j["note"] = g.note;
    gens.push_back(j);
  }
  nlohmann::json rels = nlohmann::json::array();
  for (size_t i = 0; i < relators.size(); ++i) {
    nlohmann::json j{{"word", relator_text(relators[i])}};
    if (i < relator_notes.size() && !relator_notes[i].empty())
      j["note"] = relator_notes[i];
    rels.push_back(j);
  }
  return {{"generators", gens},
          {"relators", rels},
          {"generator_count", generators.size()},
          {"relator_count", relators.size()}};
}

Presentation Presentation::parse_text(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_gens = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos)
      continue;
    line = line.substr(first);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    try {
      if (line.rfind("gens:", 0) == 0) {
        if (have_gens)
          throw ParseError("duplicate gens line");
        have_gens = true;
        std::string rest = line.substr(5);
        std::istringstream names(rest);
        std::string name;
        while (std::getline(names, name, ',')) {
          auto a = name.find_first_not_of(" \t");
          auto b = name.find_last_not_of(" \t");
          if (a == std::string::npos)
            throw ParseError("empty generator name");
          p.add_generator(name.substr(a, b - a + 1));
        }
      } else if (line.rfind("rel:", 0) == 0) {
        if (!have_gens)
          throw ParseError("rel before gens");
        p.add_relator(p.parse_word(line.substr(4)));
      } else {
        throw ParseError("expected 'gens:' or 'rel:'");
      }
    } catch (const ParseError& e) {
      if (e.line)
        throw;
      throw ParseError(e.what(), lineno, 1);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what(), lineno, 1);
    }
  }
  return p;
}

Presentation Presentation::from_json(const nlohmann::json& j) {
  Presentation p;
  for (const auto& g : j.at("generators"))
    p.add_generator(g.at("name").get<std::string>(), g.value("backing", ""), g.value("note", ""));
  for (const auto& r : j.at("relators"))
    p.add_relator(p.parse_word(r.at("word").get<std::string>()), r.value("note", ""));
  return p;
}

Presentation backend_presentation(const Group& g) {
  auto bp = g.presentation();
  if (!bp)
    throw PreconditionError("backend without known presentation: " + g.description());
  Presentation p;
  for (const auto& n : bp->generators)
    p.add_generator(n, g.description());
  for (const Word& r : bp->relators)
    p.add_relator(r);
  return p;
}

Presentation hnn(const Presentation& base, const std::string& stable,
                 const std::vector<std::pair<Word, Word>>& pairs) {
  require(!pairs.empty(), "hnn: no associated pairs");
  Presentation p = base;
  int s = p.add_generator(stable, "", "stable letter");
  for (const auto& [u, v] : pairs) {
    Word r{-s};
    for (Letter l : u) push_reduced(r, l);
    push_reduced(r, s);
    for (Letter l : inverse(v)) push_reduced(r, l);
    p.add_relator(r);
  }
  return p;
}

Presentation amalgam(const Presentation& left, const Presentation& right,
                     const std::vector<std::pair<Word, Word>>& glue) {
  Presentation p = left;
  int offset = p.append(right);
  for (const auto& [u, v] : glue) {
    Word r = u;
    for (Letter l : inverse(v))
      push_reduced(r, l > 0 ? l + offset : l - offset);
    p.add_relator(r);
  }
  return p;
}

} // namespace grpeq
