#include "grpeq/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>
#include <set>

namespace grpeq {

std::string_view kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::finite_table: return "finite-table";
    case GroupKind::permutation: return "permutation";
    case GroupKind::free: return "free";
    case GroupKind::free_abelian: return "free-abelian";
    case GroupKind::fours: return "fours-group";
    case GroupKind::free_product: return "free-product";
    case GroupKind::direct_product: return "direct-product";
  }
  return "?";
}

std::string Order::to_string() const {
  switch (kind) {
    case Kind::finite: return std::to_string(value);
    case Kind::infinite: return "infinite";
    case Kind::unknown: return "unknown";
  }
  return "?";
}

// PAYLOAD COMPARISON

namespace {

template <class T> int cmp3(const T& a, const T& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

struct PayloadCompare {
  int operator()(const TableIndex& a, const TableIndex& b) const { return cmp3(a, b); }
  int operator()(const Permutation& a, const Permutation& b) const { return cmp3(a, b); }
  int operator()(const FreeWord& a, const FreeWord& b) const {
    // shortlex, so that sorted output lists short words first
    if (shortlex_less(a.letters, b.letters)) return -1;
    if (shortlex_less(b.letters, a.letters)) return 1;
    return 0;
  }
  int operator()(const IntVector& a, const IntVector& b) const { return cmp3(a, b); }
  int operator()(const AffinePair& a, const AffinePair& b) const { return cmp3(a, b); }
  int operator()(const SyllableSeq& a, const SyllableSeq& b) const {
    if (a.syllables.size() != b.syllables.size())
      return a.syllables.size() < b.syllables.size() ? -1 : 1;
    for (size_t i = 0; i < a.syllables.size(); ++i) {
      const Syllable& x = a.syllables[i];
      const Syllable& y = b.syllables[i];
      if (x.factor != y.factor)
        return x.factor < y.factor ? -1 : 1;
      if (int c = x.value.compare(y.value))
        return c;
    }
    return 0;
  }
  int operator()(const Components& a, const Components& b) const {
    for (size_t i = 0; i < std::min(a.parts.size(), b.parts.size()); ++i)
      if (int c = a.parts[i].compare(b.parts[i]))
        return c;
    return cmp3(a.parts.size(), b.parts.size());
  }
  template <class A, class B> int operator()(const A&, const B&) const { return 0; }
};

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

} // namespace

int compare_payload(const Payload& x, const Payload& y) {
  if (x.index() != y.index())
    return x.index() < y.index() ? -1 : 1;
  return std::visit(PayloadCompare{}, x, y);
}

std::size_t hash_payload(const Payload& p) {
  std::size_t seed = p.index();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, TableIndex>) {
          hash_mix(seed, std::hash<int>{}(v.index));
        } else if constexpr (std::is_same_v<T, Permutation>) {
          for (int i : v.images) hash_mix(seed, std::hash<int>{}(i));
        } else if constexpr (std::is_same_v<T, FreeWord>) {
          for (int i : v.letters) hash_mix(seed, std::hash<int>{}(i));
        } else if constexpr (std::is_same_v<T, IntVector>) {
          for (long long i : v.coords) hash_mix(seed, std::hash<long long>{}(i));
        } else if constexpr (std::is_same_v<T, AffinePair>) {
          for (int i : v.sign) hash_mix(seed, std::hash<int>{}(i));
          for (long long i : v.twice_shift) hash_mix(seed, std::hash<long long>{}(i));
        } else if constexpr (std::is_same_v<T, SyllableSeq>) {
          for (const Syllable& s : v.syllables) {
            hash_mix(seed, std::hash<int>{}(s.factor));
            hash_mix(seed, hash_payload(s.value.payload()));
          }
        } else {
          for (const GroupElement& e : v.parts) hash_mix(seed, hash_payload(e.payload()));
        }
      },
      p);
  return seed;
}

// ELEMENT

bool GroupElement::is_identity() const {
  return compare_payload(payload_, group_->identity_payload()) == 0;
}

std::string GroupElement::to_string() const { return group_->format(payload_); }

int GroupElement::compare(const GroupElement& o) const {
  if (group_ != o.group_ && group_ && o.group_ &&
      group_->description() != o.group_->description())
    return group_->description() < o.group_->description() ? -1 : 1;
  return compare_payload(payload_, o.payload_);
}

// GROUP BASE

bool same_group(const Group& a, const Group& b) {
  return &a == &b || a.description() == b.description();
}
bool same_group(const GroupId& a, const GroupId& b) {
  return a && b && same_group(*a, *b);
}

GroupElement Group::identity() const { return GroupElement(self(), identity_payload()); }

GroupElement Group::element(Payload p) const { return GroupElement(self(), std::move(p)); }

std::vector<GroupElement> Group::elements() const {
  if (!size())
    throw PreconditionError("elements() on an infinite group: " + description());
  std::set<GroupElement> seen{identity()};
  std::vector<GroupElement> frontier{identity()};
  auto gens = generators();
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        GroupElement y = grpeq::mul(x, g);
        if (seen.insert(y).second)
          next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

Word Group::word_of(const Payload&) const {
  throw PreconditionError("backend without known presentation: " + description());
}

GroupElement Group::evaluate(std::span<const Letter> w) const {
  auto gens = generators();
  Payload acc = identity_payload();
  for (Letter l : w) {
    size_t g = static_cast<size_t>(std::abs(l) - 1);
    require(g < gens.size(), "letter out of range for " + description());
    acc = mul(acc, l > 0 ? gens[g].payload() : inv(gens[g].payload()));
  }
  return element(std::move(acc));
}

// OPERATIONS

namespace {
void check_same(const GroupElement& x, const GroupElement& y) {
  if (!x.valid() || !y.valid())
    throw GroupMismatch("uninitialized group element");
  if (!same_group(x.group(), y.group()))
    throw GroupMismatch("group mismatch: " + x.group().description() + " vs " +
                        y.group().description());
}
} // namespace

GroupElement identity(const GroupId& g) { return g->identity(); }

GroupElement mul(const GroupElement& x, const GroupElement& y) {
  check_same(x, y);
  return GroupElement(x.group_id(), x.group().mul(x.payload(), y.payload()));
}

GroupElement inv(const GroupElement& x) {
  return GroupElement(x.group_id(), x.group().inv(x.payload()));
}

GroupElement pow(const GroupElement& x, long long k) {
  GroupElement base = k >= 0 ? x : inv(x);
  unsigned long long n = k >= 0 ? k : -static_cast<unsigned long long>(k);
  GroupElement acc = x.group().identity();
  while (n) {
    if (n & 1)
      acc = mul(acc, base);
    n >>= 1;
    if (n)
      base = mul(base, base);
  }
  return acc;
}

GroupElement conj(const GroupElement& x, const GroupElement& y) {
  return mul(mul(inv(y), x), y);
}

GroupElement commutator(const GroupElement& x, const GroupElement& y) {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

Order element_order(const GroupElement& x) { return x.group().order(x.payload()); }

std::vector<GroupElement> ball(const GroupId& g, int radius,
                               std::span<const GroupElement> gens, int radius_cap) {
  require(!gens.empty(), "ball: empty generator list");
  require(radius >= 0, "ball: negative radius");
  if (radius > radius_cap)
    throw CapExceeded("ball radius " + std::to_string(radius) + " exceeds cap " +
                      std::to_string(radius_cap));
  std::vector<GroupElement> steps;
  for (const auto& s : gens) {
    require(same_group(s.group(), *g), "ball: generator from another group");
    steps.push_back(s);
    steps.push_back(inv(s));
  }
  std::set<GroupElement> seen{g->identity()};
  std::vector<GroupElement> frontier{g->identity()};
  for (int r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& s : steps) {
        GroupElement y = mul(x, s);
        if (seen.insert(y).second)
          next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// TOKENS

std::vector<std::string> literal_tokens(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  auto closing = [](char c) { return c == '(' ? ')' : c == '[' ? ']' : '}'; };
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    if (s[i] == '(' || s[i] == '[' || s[i] == '{') {
      std::vector<char> stack{closing(s[i])};
      ++i;
      while (i < s.size() && !stack.empty()) {
        char c = s[i];
        if (c == '(' || c == '[' || c == '{')
          stack.push_back(closing(c));
        else if (c == ')' || c == ']' || c == '}') {
          if (c != stack.back())
            throw ParseError("mismatched bracket in literal '" + std::string(s) + "'");
          stack.pop_back();
        }
        ++i;
      }
      if (!stack.empty())
        throw ParseError("unbalanced bracket in literal '" + std::string(s) + "'");
    } else {
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) &&
             s[i] != '(' && s[i] != '[' && s[i] != '{') {
        if (s[i] == ')' || s[i] == ']' || s[i] == '}')
          throw ParseError("unbalanced bracket in literal '" + std::string(s) + "'");
        ++i;
      }
    }
    // trailing exponent after a bracket group
    if (i < s.size() && s[i] == '^') {
      ++i;
      if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    }
    out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::pair<std::string, long long> split_power(std::string_view token) {
  int depth = 0;
  size_t caret = std::string_view::npos;
  for (size_t i = 0; i < token.size(); ++i) {
    char c = token[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    else if (c == ')' || c == ']' || c == '}') --depth;
    else if (c == '^' && depth == 0) caret = i;
  }
  if (caret == std::string_view::npos)
    return {std::string(token), 1};
  std::string_view base = token.substr(0, caret);
  std::string_view num = token.substr(caret + 1);
  if (!num.empty() && num[0] == '+')
    num.remove_prefix(1);
  long long k = 0;
  auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
  if (base.empty() || num.empty() || ec != std::errc() || p != num.data() + num.size())
    throw ParseError("bad exponent in '" + std::string(token) + "'");
  if (k > max_literal_exponent || k < -max_literal_exponent)
    throw ParseError("exponent out of range in '" + std::string(token) + "'");
  return {std::string(base), k};
}

// FREE PRODUCT

namespace {

std::string product_description(const std::vector<GroupId>& f, const char* sep) {
  std::string d = "(";
  for (size_t i = 0; i < f.size(); ++i) {
    if (i) d += sep;
    d += f[i]->description();
  }
  return d + ")";
}

std::vector<GroupId> flatten(const std::vector<GroupId>& operands) {
  std::vector<GroupId> out;
  for (const auto& g : operands) {
    if (g->kind() == GroupKind::free_product) {
      const auto& fp = static_cast<const FreeProductGroup&>(*g);
      out.insert(out.end(), fp.factors().begin(), fp.factors().end());
    } else {
      out.push_back(g);
    }
  }
  return out;
}

// Appends one syllable, merging with the last one when they share a factor.
void push_syllable(std::vector<Syllable>& w, const Syllable& s) {
  if (!w.empty() && w.back().factor == s.factor) {
    GroupElement m = mul(w.back().value, s.value);
    if (m.is_identity())
      w.pop_back();
    else
      w.back().value = std::move(m);
  } else if (!s.value.is_identity()) {
    w.push_back(s);
  }
}

std::vector<std::string> disambiguated_names(const std::vector<GroupId>& factors,
                                             std::vector<std::vector<std::string>>& per) {
  std::set<std::string> seen, clash;
  for (const auto& f : factors) {
    auto p = f->presentation();
    per.push_back(p ? p->generators : std::vector<std::string>{});
    for (const auto& n : per.back())
      if (!seen.insert(n).second)
        clash.insert(n);
  }
  std::vector<std::string> all;
  for (size_t i = 0; i < per.size(); ++i)
    for (auto& n : per[i]) {
      if (clash.count(n))
        n += "_" + std::to_string(i);
      all.push_back(n);
    }
  return all;
}

} // namespace

FreeProductGroup::FreeProductGroup(std::vector<GroupId> operands)
    : Group(GroupKind::free_product, product_description(flatten(operands), " * ")),
      factors_(flatten(operands)) {
  require(!operands.empty(), "free product of an empty factor list");
  int at = 0;
  for (const auto& g : operands) {
    int n = g->kind() == GroupKind::free_product
                ? static_cast<int>(static_cast<const FreeProductGroup&>(*g).factors().size())
                : 1;
    ranges_.emplace_back(at, at + n);
    at += n;
  }
}

const FreeProductGroup& as_free_product(const Group& g) {
  if (g.kind() != GroupKind::free_product)
    throw PreconditionError("not a free product: " + g.description());
  return static_cast<const FreeProductGroup&>(g);
}

const std::vector<Syllable>& syllables(const GroupElement& fp) {
  if (fp.group().kind() != GroupKind::free_product)
    throw PreconditionError("not a free-product element: " + fp.group().description());
  return fp.as<SyllableSeq>().syllables;
}

GroupElement FreeProductGroup::embed(int factor, const GroupElement& x) const {
  require(factor >= 0 && factor < static_cast<int>(factors_.size()), "embed: factor index");
  if (!same_group(x.group(), *factors_[factor]))
    throw GroupMismatch("embed: element of " + x.group().description() + " into factor " +
                        factors_[factor]->description());
  SyllableSeq s;
  if (!x.is_identity())
    s.syllables.push_back({factor, x});
  return element(std::move(s));
}

GroupElement FreeProductGroup::inject(std::size_t operand, const GroupElement& x) const {
  auto [lo, hi] = operand_range(operand);
  if (hi - lo == 1 && x.group().kind() != GroupKind::free_product)
    return embed(lo, x);
  const auto& inner = as_free_product(x.group());
  require(static_cast<int>(inner.factors().size()) == hi - lo, "inject: operand shape");
  SyllableSeq s;
  for (const Syllable& y : x.as<SyllableSeq>().syllables)
    s.syllables.push_back({y.factor + lo, y.value});
  return element(std::move(s));
}

GroupElement FreeProductGroup::from_syllables(std::vector<Syllable> s) const {
  std::vector<Syllable> w;
  for (const auto& y : s) {
    require(y.factor >= 0 && y.factor < static_cast<int>(factors_.size()),
            "syllable factor out of range");
    if (!same_group(y.value.group(), *factors_[y.factor]))
      throw GroupMismatch("syllable from the wrong factor");
    push_syllable(w, y);
  }
  return element(SyllableSeq{std::move(w)});
}

int FreeProductGroup::factor_of_name(std::string_view generator) const {
  for (size_t i = 0; i < factors_.size(); ++i) {
    auto p = factors_[i]->presentation();
    if (p && std::find(p->generators.begin(), p->generators.end(), generator) !=
                 p->generators.end())
      return static_cast<int>(i);
  }
  return -1;
}

Payload FreeProductGroup::identity_payload() const { return SyllableSeq{}; }

Payload FreeProductGroup::mul(const Payload& x, const Payload& y) const {
  std::vector<Syllable> w = std::get<SyllableSeq>(x).syllables;
  for (const Syllable& s : std::get<SyllableSeq>(y).syllables)
    push_syllable(w, s);
  return SyllableSeq{std::move(w)};
}

Payload FreeProductGroup::inv(const Payload& x) const {
  const auto& s = std::get<SyllableSeq>(x).syllables;
  SyllableSeq out;
  for (auto it = s.rbegin(); it != s.rend(); ++it)
    out.syllables.push_back({it->factor, grpeq::inv(it->value)});
  return out;
}

Order FreeProductGroup::order(const Payload& x) const {
  // torsion in a free product is conjugate into a factor
  std::vector<Syllable> w = std::get<SyllableSeq>(x).syllables;
  while (w.size() >= 2 && w.front().factor == w.back().factor) {
    Syllable first = w.front();
    w.erase(w.begin());
    Syllable last = w.back();
    w.pop_back();
    push_syllable(w, {last.factor, grpeq::mul(last.value, first.value)});
  }
  if (w.empty())
    return Order::finite(1);
  if (w.size() == 1)
    return element_order(w[0].value);
  return Order::infinite();
}

std::string FreeProductGroup::format(const Payload& x) const {
  const auto& s = std::get<SyllableSeq>(x).syllables;
  if (s.empty())
    return "1";
  std::string out;
  for (const auto& y : s) {
    if (!out.empty())
      out += ' ';
    out += y.value.to_string();
  }
  return out;
}

GroupElement FreeProductGroup::parse(std::string_view literal) const {
  GroupElement acc = identity();
  for (const std::string& tok : literal_tokens(literal)) {
    if (tok == "1")
      continue;
    std::optional<GroupElement> hit;
    for (size_t i = 0; i < factors_.size(); ++i) {
      try {
        GroupElement e = factors_[i]->parse(tok);
        if (hit)
          throw ParseError("ambiguous token '" + tok + "' in " + description());
        hit = embed(static_cast<int>(i), e);
      } catch (const ParseError& err) {
        if (std::string(err.what()).rfind("ambiguous", 0) == 0)
          throw;
      } catch (const Error&) {
      }
    }
    if (!hit)
      throw ParseError("token '" + tok + "' is not an element of any factor of " +
                       description());
    acc = grpeq::mul(acc, *hit);
  }
  return acc;
}

std::vector<GroupElement> FreeProductGroup::generators() const {
  std::vector<GroupElement> out;
  for (size_t i = 0; i < factors_.size(); ++i)
    for (const auto& g : factors_[i]->generators())
      out.push_back(embed(static_cast<int>(i), g));
  return out;
}

bool FreeProductGroup::torsion_free() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const GroupId& g) { return g->torsion_free(); });
}

std::optional<BackendPresentation> FreeProductGroup::presentation() const {
  BackendPresentation p;
  std::vector<std::vector<std::string>> per;
  p.generators = disambiguated_names(factors_, per);
  int offset = 0;
  for (size_t i = 0; i < factors_.size(); ++i) {
    auto fp = factors_[i]->presentation();
    if (!fp)
      return std::nullopt;
    for (const Word& r : fp->relators) {
      Word shifted;
      for (Letter l : r)
        shifted.push_back(l > 0 ? l + offset : l - offset);
      p.relators.push_back(std::move(shifted));
    }
    offset += static_cast<int>(fp->generators.size());
  }
  return p;
}

Word FreeProductGroup::word_of(const Payload& x) const {
  std::vector<int> offsets;
  int offset = 0;
  for (const auto& f : factors_) {
    offsets.push_back(offset);
    auto fp = f->presentation();
    if (!fp)
      throw PreconditionError("backend without known presentation: " + f->description());
    offset += static_cast<int>(fp->generators.size());
  }
  Word out;
  for (const Syllable& s : std::get<SyllableSeq>(x).syllables)
    for (Letter l : s.value.group().word_of(s.value.payload()))
      push_reduced(out, l > 0 ? l + offsets[s.factor] : l - offsets[s.factor]);
  return out;
}

GroupId free_product(std::vector<GroupId> factors) {
  return std::make_shared<FreeProductGroup>(std::move(factors));
}

// DIRECT PRODUCT

namespace {

class DirectProductGroup final : public Group {
public:
  explicit DirectProductGroup(std::vector<GroupId> f)
      : Group(GroupKind::direct_product, product_description(f, " x ")), f_(std::move(f)) {
    require(!f_.empty(), "direct product of an empty factor list");
  }

  Payload identity_payload() const override {
    Components c;
    for (const auto& g : f_) c.parts.push_back(g->identity());
    return c;
  }
  Payload mul(const Payload& x, const Payload& y) const override {
    const auto& a = std::get<Components>(x).parts;
    const auto& b = std::get<Components>(y).parts;
    Components c;
    for (size_t i = 0; i < f_.size(); ++i) c.parts.push_back(grpeq::mul(a[i], b[i]));
    return c;
  }
  Payload inv(const Payload& x) const override {
    Components c;
    for (const auto& e : std::get<Components>(x).parts) c.parts.push_back(grpeq::inv(e));
    return c;
  }
  Order order(const Payload& x) const override {
    std::uint64_t l = 1;
    bool unknown = false;
    for (const auto& e : std::get<Components>(x).parts) {
      Order o = element_order(e);
      if (o.is_infinite()) return Order::infinite();
      if (!o.is_finite()) unknown = true;
      else l = std::lcm(l, o.value);
    }
    return unknown ? Order::unknown() : Order::finite(l);
  }
  std::string format(const Payload& x) const override {
    std::string s = "[";
    const auto& p = std::get<Components>(x).parts;
    for (size_t i = 0; i < p.size(); ++i) s += (i ? " ; " : "") + p[i].to_string();
    return s + "]";
  }
  GroupElement parse(std::string_view literal) const override {
    std::string_view s = literal;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s == "1") return identity();
    auto toks = literal_tokens(s);
    GroupElement acc = identity();
    for (const auto& tok : toks) {
      auto [base, k] = split_power(tok);
      if (base.size() < 2 || base.front() != '[' || base.back() != ']')
        throw ParseError("direct-product literal must look like [x ; y]: '" + tok + "'");
      std::string inner = base.substr(1, base.size() - 2);
      std::vector<std::string> parts;
      int depth = 0;
      std::string cur;
      for (char c : inner) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ';' && depth == 0) { parts.push_back(cur); cur.clear(); }
        else cur += c;
      }
      parts.push_back(cur);
      if (parts.size() != f_.size())
        throw ParseError("direct-product literal needs " + std::to_string(f_.size()) +
                         " components: '" + tok + "'");
      std::vector<GroupElement> comps;
      for (size_t i = 0; i < f_.size(); ++i) comps.push_back(f_[i]->parse(parts[i]));
      acc = grpeq::mul(acc, pow(element(Components{comps}), k));
    }
    return acc;
  }
  std::vector<GroupElement> generators() const override {
    std::vector<GroupElement> out;
    for (size_t i = 0; i < f_.size(); ++i)
      for (const auto& g : f_[i]->generators()) out.push_back(inject(i, g));
    return out;
  }
  std::optional<std::uint64_t> size() const override {
    std::uint64_t n = 1;
    for (const auto& g : f_) {
      auto s = g->size();
      if (!s) return std::nullopt;
      n *= *s;
    }
    return n;
  }
  bool torsion_free() const override {
    return std::all_of(f_.begin(), f_.end(), [](const GroupId& g) { return g->torsion_free(); });
  }
  bool certified_orderable() const override {
    return std::all_of(f_.begin(), f_.end(),
                       [](const GroupId& g) { return g->certified_orderable(); });
  }
  std::optional<BackendPresentation> presentation() const override {
    BackendPresentation p;
    std::vector<std::vector<std::string>> per;
    p.generators = disambiguated_names(f_, per);
    std::vector<std::pair<int, int>> spans;
    int offset = 0;
    for (const auto& g : f_) {
      auto fp = g->presentation();
      if (!fp) return std::nullopt;
      for (const Word& r : fp->relators) {
        Word s;
        for (Letter l : r) s.push_back(l > 0 ? l + offset : l - offset);
        p.relators.push_back(s);
      }
      int n = static_cast<int>(fp->generators.size());
      spans.emplace_back(offset, offset + n);
      offset += n;
    }
    // generators of distinct factors commute
    for (size_t i = 0; i < spans.size(); ++i)
      for (size_t j = i + 1; j < spans.size(); ++j)
        for (int x = spans[i].first; x < spans[i].second; ++x)
          for (int y = spans[j].first; y < spans[j].second; ++y)
            p.relators.push_back({-(x + 1), -(y + 1), x + 1, y + 1});
    return p;
  }
  Word word_of(const Payload& x) const override {
    Word out;
    int offset = 0;
    const auto& parts = std::get<Components>(x).parts;
    for (size_t i = 0; i < f_.size(); ++i) {
      auto fp = f_[i]->presentation();
      if (!fp)
        throw PreconditionError("backend without known presentation: " + f_[i]->description());
      for (Letter l : f_[i]->word_of(parts[i].payload()))
        push_reduced(out, l > 0 ? l + offset : l - offset);
      offset += static_cast<int>(fp->generators.size());
    }
    return out;
  }

  GroupElement inject(size_t i, const GroupElement& x) const {
    Components c = std::get<Components>(identity_payload());
    c.parts[i] = x;
    return element(std::move(c));
  }
  const std::vector<GroupId>& factors() const { return f_; }

private:
  std::vector<GroupId> f_;
};

} // namespace

GroupId direct_product(std::vector<GroupId> factors) {
  return std::make_shared<DirectProductGroup>(std::move(factors));
}

GroupElement make_components(const GroupId& g, std::vector<GroupElement> parts) {
  require(g->kind() == GroupKind::direct_product, "make_components: not a direct product");
  const auto& dp = static_cast<const DirectProductGroup&>(*g);
  require(parts.size() == dp.factors().size(), "make_components: component count");
  for (size_t i = 0; i < parts.size(); ++i)
    if (!same_group(parts[i].group(), *dp.factors()[i]))
      throw GroupMismatch("make_components: component " + std::to_string(i));
  return GroupElement(g, Components{std::move(parts)});
}

} // namespace grpeq
