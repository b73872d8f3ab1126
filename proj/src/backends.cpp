// Finite tables, permutation groups, free groups, free abelian groups and
// the fours group.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <mutex>
#include <numeric>
#include <set>

#include "grpeq/group.hpp"

namespace grpeq {

namespace {

long long parse_int(std::string_view s) {
  std::string_view t = s;
  if (!t.empty() && t[0] == '+')
    t.remove_prefix(1);
  long long v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size())
    throw ParseError("expected an integer, got '" + std::string(s) + "'");
  if (v > 1'000'000'000LL || v < -1'000'000'000LL)
    throw ParseError("integer out of range: '" + std::string(s) + "'");
  return v;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return std::string(s);
}

// FINITE TABLE

class TableGroup final : public Group {
public:
  TableGroup(std::vector<std::vector<int>> t, std::vector<std::string> names,
             std::string description, std::optional<BackendPresentation> pres,
             std::vector<Word> words, std::vector<int> gens)
      : Group(GroupKind::finite_table, std::move(description)), t_(std::move(t)),
        names_(std::move(names)), pres_(std::move(pres)), words_(std::move(words)),
        gens_(std::move(gens)) {
    validate();
  }

  int identity_index() const { return e_; }
  int n() const { return static_cast<int>(t_.size()); }

  Payload identity_payload() const override { return TableIndex{e_}; }
  Payload mul(const Payload& x, const Payload& y) const override {
    return TableIndex{t_[std::get<TableIndex>(x).index][std::get<TableIndex>(y).index]};
  }
  Payload inv(const Payload& x) const override {
    return TableIndex{inverse_[std::get<TableIndex>(x).index]};
  }
  Order order(const Payload& x) const override {
    int i = std::get<TableIndex>(x).index, cur = i;
    std::uint64_t k = 1;
    while (cur != e_) {
      cur = t_[cur][i];
      ++k;
    }
    return Order::finite(k);
  }
  std::string format(const Payload& x) const override {
    return names_[std::get<TableIndex>(x).index];
  }
  GroupElement parse(std::string_view literal) const override {
    int acc = e_;
    auto toks = literal_tokens(literal);
    if (toks.empty())
      throw ParseError("empty literal for " + description());
    for (const auto& tok : toks) {
      int idx = lookup(tok);
      long long k = 1;
      if (idx < 0) {
        auto [base, p] = split_power(tok);
        idx = lookup(base);
        k = p;
      }
      if (idx < 0)
        throw ParseError("unknown element '" + tok + "' of " + description());
      Payload pw = std::get<TableIndex>(
          grpeq::pow(element(TableIndex{idx}), k).payload());
      acc = t_[acc][std::get<TableIndex>(pw).index];
    }
    return element(TableIndex{acc});
  }
  std::vector<GroupElement> generators() const override {
    std::vector<GroupElement> out;
    for (int g : gens_)
      out.push_back(element(TableIndex{g}));
    if (out.empty())  // trivial group: any nonempty generating list will do
      out.push_back(identity());
    return out;
  }
  std::optional<std::uint64_t> size() const override { return t_.size(); }
  std::vector<GroupElement> elements() const override {
    std::vector<GroupElement> out;
    for (int i = 0; i < n(); ++i)
      out.push_back(element(TableIndex{i}));
    return out;
  }
  std::optional<BackendPresentation> presentation() const override { return pres_; }
  Word word_of(const Payload& x) const override { return words_[std::get<TableIndex>(x).index]; }

  const std::vector<std::vector<int>>& table() const { return t_; }

private:
  int lookup(std::string_view name) const {
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name)
        return static_cast<int>(i);
    if (name == "1")
      return e_;
    if (!name.empty() && name[0] == '#') {
      long long v = parse_int(name.substr(1));
      if (v >= 0 && v < n())
        return static_cast<int>(v);
    }
    return -1;
  }

  void validate() {
    int n = this->n();
    require(n >= 1, "finite table: empty");
    require(n <= 512, "finite table: order above 512");
    for (const auto& row : t_) {
      require(static_cast<int>(row.size()) == n, "finite table: not square");
      for (int v : row)
        require(v >= 0 && v < n, "finite table: entry out of range");
    }
    e_ = -1;
    for (int i = 0; i < n && e_ < 0; ++i) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j)
        ok = t_[i][j] == j && t_[j][i] == j;
      if (ok)
        e_ = i;
    }
    require(e_ >= 0, "finite table: no identity element");
    inverse_.assign(n, -1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (t_[i][j] == e_ && t_[j][i] == e_)
          inverse_[i] = j;
    for (int i = 0; i < n; ++i)
      require(inverse_[i] >= 0, "finite table: element without inverse");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          require(t_[t_[a][b]][c] == t_[a][t_[b][c]], "finite table: not associative");
    if (names_.empty())
      for (int i = 0; i < n; ++i)
        names_.push_back("#" + std::to_string(i));
    require(static_cast<int>(names_.size()) == n, "finite table: name count");
    require(std::set<std::string>(names_.begin(), names_.end()).size() == names_.size(),
            "finite table: duplicate element names");
    if (!pres_) {
      // multiplication-table presentation on the nonidentity elements
      BackendPresentation p;
      std::vector<int> letter(n, 0);
      for (int i = 0; i < n; ++i)
        if (i != e_) {
          p.generators.push_back(names_[i]);
          letter[i] = static_cast<int>(p.generators.size());
          gens_.push_back(i);
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == e_ || j == e_)
            continue;
          Word r{letter[i], letter[j]};
          if (t_[i][j] != e_)
            r.push_back(-letter[t_[i][j]]);
          p.relators.push_back(reduce(r));
        }
      words_.assign(n, Word{});
      for (int i = 0; i < n; ++i)
        if (i != e_)
          words_[i] = {letter[i]};
      pres_ = std::move(p);
    }
  }

  std::vector<std::vector<int>> t_;
  std::vector<std::string> names_;
  std::optional<BackendPresentation> pres_;
  std::vector<Word> words_;
  std::vector<int> gens_;
  std::vector<int> inverse_;
  int e_ = 0;
};

std::string table_description(const std::vector<std::vector<int>>& t) {
  std::string d = "finite{";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) d += ";";
    for (size_t j = 0; j < t[i].size(); ++j)
      d += (j ? " " : "") + std::to_string(t[i][j]);
  }
  return d + "}";
}

// PERMUTATIONS

std::string format_perm(const std::vector<int>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i))
      continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

class PermGroup final : public Group {
public:
  PermGroup(int degree, std::vector<Permutation> gens)
      : Group(GroupKind::permutation, describe(degree, gens)), n_(degree), gens_(std::move(gens)) {
    require(degree >= 1 && degree <= 64, "perm: degree must be in [1, 64]");
    for (const auto& g : gens_)
      check(g.images);
  }

  int degree() const { return n_; }

  Payload identity_payload() const override {
    Permutation p;
    p.images.resize(n_);
    std::iota(p.images.begin(), p.images.end(), 0);
    return p;
  }
  Payload mul(const Payload& x, const Payload& y) const override {
    const auto& a = std::get<Permutation>(x).images;
    const auto& b = std::get<Permutation>(y).images;
    Permutation p;
    p.images.resize(n_);
    for (int i = 0; i < n_; ++i)
      p.images[i] = a[b[i]];  // apply y first
    return p;
  }
  Payload inv(const Payload& x) const override {
    const auto& a = std::get<Permutation>(x).images;
    Permutation p;
    p.images.resize(n_);
    for (int i = 0; i < n_; ++i)
      p.images[a[i]] = i;
    return p;
  }
  Order order(const Payload& x) const override {
    const auto& a = std::get<Permutation>(x).images;
    std::uint64_t l = 1;
    std::vector<bool> seen(n_, false);
    for (int i = 0; i < n_; ++i) {
      std::uint64_t len = 0;
      for (int j = i; !seen[j]; j = a[j]) {
        seen[j] = true;
        ++len;
      }
      if (len)
        l = std::lcm(l, len);
    }
    return Order::finite(l);
  }
  std::string format(const Payload& x) const override {
    return format_perm(std::get<Permutation>(x).images);
  }
  GroupElement parse(std::string_view literal) const override {
    std::string s = trim(literal);
    if (s == "1" || s == "()")
      return identity();
    Payload acc = identity_payload();
    for (const auto& tok : literal_tokens(s)) {
      auto [base, k] = split_power(tok);
      if (base.size() < 2 || base.front() != '(' || base.back() != ')')
        throw ParseError("permutation literal must be cycles like (1 2 3): '" + tok + "'");
      std::string inner = base.substr(1, base.size() - 2);
      for (char& c : inner)
        if (c == ',')
          c = ' ';
      std::vector<int> pts;
      for (const auto& p : literal_tokens(inner)) {
        long long v = parse_int(p);
        if (v < 1 || v > n_)
          throw ParseError("point " + p + " outside 1.." + std::to_string(n_));
        pts.push_back(static_cast<int>(v - 1));
      }
      if (std::set<int>(pts.begin(), pts.end()).size() != pts.size())
        throw ParseError("repeated point in cycle '" + tok + "'");
      Permutation c = std::get<Permutation>(identity_payload());
      for (size_t i = 0; i < pts.size(); ++i)
        c.images[pts[i]] = pts[(i + 1) % pts.size()];
      Payload cp = c;
      Payload pw = grpeq::pow(element(cp), k).payload();
      acc = mul(acc, pw);
    }
    return make(std::get<Permutation>(acc).images);
  }
  std::vector<GroupElement> generators() const override {
    std::vector<GroupElement> out;
    for (const auto& g : gens_)
      out.push_back(element(g));
    if (out.empty())
      out.push_back(identity());
    return out;
  }
  std::optional<std::uint64_t> size() const override {
    const auto& c = closure();
    if (c.empty())
      return std::nullopt;
    return c.size();
  }
  std::vector<GroupElement> elements() const override {
    const auto& c = closure();
    if (c.empty())
      throw CapExceeded("permutation group too large to enumerate: " + description());
    std::vector<GroupElement> out;
    for (const auto& p : c)
      out.push_back(element(p));
    return out;
  }

  GroupElement make(std::vector<int> images) const {
    check(images);
    const auto& c = closure();
    Permutation p{std::move(images)};
    if (!c.empty() && !std::binary_search(c.begin(), c.end(), p))
      throw PreconditionError("permutation " + format_perm(p.images) +
                              " is not in the group " + description());
    return element(std::move(p));
  }

private:
  static std::string describe(int n, const std::vector<Permutation>& g) {
    std::string d = "perm(" + std::to_string(n) + "){";
    for (size_t i = 0; i < g.size(); ++i)
      d += (i ? ", " : "") + format_perm(g[i].images);
    return d + "}";
  }
  void check(const std::vector<int>& images) const {
    require(static_cast<int>(images.size()) == n_, "perm: wrong degree");
    std::vector<bool> hit(n_, false);
    for (int v : images) {
      require(v >= 0 && v < n_ && !hit[v], "perm: not a permutation");
      hit[v] = true;
    }
  }
  // Sorted element list, or empty when the group exceeds the enumeration cap.
  const std::vector<Permutation>& closure() const {
    std::call_once(closure_once_, [this] {
      constexpr size_t cap = 50000;
      std::set<Permutation> seen{std::get<Permutation>(identity_payload())};
      std::vector<Permutation> frontier(seen.begin(), seen.end());
      while (!frontier.empty() && seen.size() <= cap) {
        std::vector<Permutation> next;
        for (const auto& x : frontier)
          for (const auto& g : gens_) {
            Permutation y = std::get<Permutation>(mul(Payload{x}, Payload{g}));
            if (seen.insert(y).second)
              next.push_back(std::move(y));
          }
        frontier = std::move(next);
      }
      if (seen.size() <= cap)
        closure_.assign(seen.begin(), seen.end());
    });
    return closure_;
  }

  int n_;
  std::vector<Permutation> gens_;
  mutable std::once_flag closure_once_;
  mutable std::vector<Permutation> closure_;
};

// FREE GROUPS

class FreeGroup final : public Group {
public:
  explicit FreeGroup(std::vector<std::string> names)
      : Group(GroupKind::free, describe(names)), names_(std::move(names)) {
    require(std::set<std::string>(names_.begin(), names_.end()).size() == names_.size(),
            "free: duplicate generator names");
    for (const auto& n : names_)
      require(!n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'),
              "free: generator names must start with a letter");
  }

  int rank() const { return static_cast<int>(names_.size()); }

  Payload identity_payload() const override { return FreeWord{}; }
  Payload mul(const Payload& x, const Payload& y) const override {
    return FreeWord{multiply(std::get<FreeWord>(x).letters, std::get<FreeWord>(y).letters)};
  }
  Payload inv(const Payload& x) const override {
    return FreeWord{inverse(std::get<FreeWord>(x).letters)};
  }
  Order order(const Payload& x) const override {
    return std::get<FreeWord>(x).letters.empty() ? Order::finite(1) : Order::infinite();
  }
  std::string format(const Payload& x) const override {
    return format_word(std::get<FreeWord>(x).letters, names_);
  }
  GroupElement parse(std::string_view literal) const override {
    Word acc;
    auto toks = literal_tokens(literal);
    if (toks.empty())
      throw ParseError("empty literal for " + description());
    for (const auto& tok : toks) {
      if (tok == "1")
        continue;
      auto [base, k] = split_power(tok);
      Word w = letters_of(base, tok);
      for (Letter l : power(w, k))
        push_reduced(acc, l);
    }
    return element(FreeWord{std::move(acc)});
  }
  std::vector<GroupElement> generators() const override {
    std::vector<GroupElement> out;
    for (int i = 1; i <= rank(); ++i)
      out.push_back(element(FreeWord{{i}}));
    return out;
  }
  bool torsion_free() const override { return true; }
  std::optional<BackendPresentation> presentation() const override {
    return BackendPresentation{names_, {}};
  }
  Word word_of(const Payload& x) const override { return std::get<FreeWord>(x).letters; }

private:
  static std::string describe(const std::vector<std::string>& names) {
    std::string d = "free(";
    for (size_t i = 0; i < names.size(); ++i)
      d += (i ? "," : "") + names[i];
    return d + ")";
  }
  // A generator name, or a run of single-character generator names.
  Word letters_of(const std::string& base, const std::string& tok) const {
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == base)
        return {static_cast<int>(i + 1)};
    Word w;
    for (char c : base) {
      int hit = 0;
      for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i].size() == 1 && names_[i][0] == c)
          hit = static_cast<int>(i + 1);
      if (!hit)
        throw ParseError("unknown generator in '" + tok + "' for " + description());
      w.push_back(hit);
    }
    return w;
  }

  std::vector<std::string> names_;
};

// FREE ABELIAN GROUPS

class FreeAbelianGroup final : public Group {
public:
  explicit FreeAbelianGroup(int rank)
      : Group(GroupKind::free_abelian, "zn(" + std::to_string(rank) + ")"), k_(rank) {
    require(rank >= 1 && rank <= 64, "zn: rank must be in [1, 64]");
  }

  int rank() const { return k_; }

  Payload identity_payload() const override { return IntVector{std::vector<long long>(k_, 0)}; }
  Payload mul(const Payload& x, const Payload& y) const override {
    IntVector v = std::get<IntVector>(x);
    const auto& b = std::get<IntVector>(y).coords;
    for (int i = 0; i < k_; ++i)
      v.coords[i] += b[i];
    return v;
  }
  Payload inv(const Payload& x) const override {
    IntVector v = std::get<IntVector>(x);
    for (auto& c : v.coords)
      c = -c;
    return v;
  }
  Order order(const Payload& x) const override {
    const auto& c = std::get<IntVector>(x).coords;
    return std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; })
               ? Order::finite(1)
               : Order::infinite();
  }
  std::string format(const Payload& x) const override {
    const auto& c = std::get<IntVector>(x).coords;
    if (k_ == 1)
      return std::to_string(c[0]);
    std::string s = "(";
    for (int i = 0; i < k_; ++i)
      s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  }
  GroupElement parse(std::string_view literal) const override {
    auto toks = literal_tokens(literal);
    if (toks.empty())
      throw ParseError("empty literal for " + description());
    IntVector acc = std::get<IntVector>(identity_payload());
    for (const auto& tok : toks) {
      auto [base, k] = split_power(tok);
      std::vector<long long> v;
      if (base.front() == '(') {
        if (base.back() != ')')
          throw ParseError("bad vector literal '" + tok + "'");
        std::string inner = base.substr(1, base.size() - 2);
        size_t start = 0;
        while (true) {
          size_t comma = inner.find(',', start);
          v.push_back(parse_int(trim(inner.substr(start, comma - start))));
          if (comma == std::string::npos)
            break;
          start = comma + 1;
        }
      } else if (k_ == 1 || base == "0") {
        if (base == "0")
          v.assign(k_, 0);
        else
          v.push_back(parse_int(base));
      } else {
        throw ParseError("zn(" + std::to_string(k_) + ") literal must be a vector: '" + tok + "'");
      }
      if (static_cast<int>(v.size()) != k_)
        throw ParseError("vector '" + tok + "' does not have " + std::to_string(k_) + " entries");
      for (int i = 0; i < k_; ++i)
        acc.coords[i] += k * v[i];
    }
    return element(std::move(acc));
  }
  std::vector<GroupElement> generators() const override {
    std::vector<GroupElement> out;
    for (int i = 0; i < k_; ++i) {
      IntVector v = std::get<IntVector>(identity_payload());
      v.coords[i] = 1;
      out.push_back(element(v));
    }
    return out;
  }
  bool torsion_free() const override { return true; }
  bool certified_orderable() const override { return true; }
  std::optional<BackendPresentation> presentation() const override {
    BackendPresentation p;
    for (int i = 1; i <= k_; ++i)
      p.generators.push_back(k_ == 1 ? "e" : "e" + std::to_string(i));
    for (int i = 1; i <= k_; ++i)
      for (int j = i + 1; j <= k_; ++j)
        p.relators.push_back({-i, -j, i, j});
    return p;
  }
  Word word_of(const Payload& x) const override {
    Word w;
    const auto& c = std::get<IntVector>(x).coords;
    for (int i = 0; i < k_; ++i)
      for (long long j = 0; j < std::llabs(c[i]); ++j)
        w.push_back(c[i] > 0 ? i + 1 : -(i + 1));
    return w;
  }

private:
  int k_;
};

// FOURS GROUP
//
// a = (diag(1,-1,-1), (1/2,1/2,0)), b = (diag(-1,1,-1), (0,1/2,1/2)),
// acting by x -> Dx + v and multiplied as composition (apply the right
// factor first). a^2, b^2 and (ab)^2 are the unit translations along the
// three axes (the last one negated), so the translation subgroup is Z^3
// and every element is r * tau with r in {1, a, b, ab} and tau in Z^3.

constexpr AffinePair fours_a{{1, -1, -1}, {1, 1, 0}};
constexpr AffinePair fours_b{{-1, 1, -1}, {0, 1, 1}};

AffinePair affine_mul(const AffinePair& x, const AffinePair& y) {
  AffinePair r{};
  for (int i = 0; i < 3; ++i) {
    r.sign[i] = x.sign[i] * y.sign[i];
    r.twice_shift[i] = x.sign[i] * y.twice_shift[i] + x.twice_shift[i];
  }
  return r;
}

AffinePair affine_inv(const AffinePair& x) {
  AffinePair r{};
  for (int i = 0; i < 3; ++i) {
    r.sign[i] = x.sign[i];
    r.twice_shift[i] = -x.sign[i] * x.twice_shift[i];
  }
  return r;
}

constexpr AffinePair affine_identity{{1, 1, 1}, {0, 0, 0}};

class FoursGroup final : public Group {
public:
  FoursGroup() : Group(GroupKind::fours, "fours") {
    // the defining relations must hold by direct multiplication
    AffinePair b2 = affine_mul(fours_b, fours_b), a2 = affine_mul(fours_a, fours_a);
    AffinePair lhs1 = affine_mul(affine_inv(fours_a), affine_mul(b2, fours_a));
    AffinePair lhs2 = affine_mul(affine_inv(fours_b), affine_mul(a2, fours_b));
    if (lhs1 != affine_inv(b2) || lhs2 != affine_inv(a2))
      fail("fours group realization violates its defining relations");
    reps_ = {affine_identity, fours_a, fours_b, affine_mul(fours_a, fours_b)};
    rep_words_ = {{}, {1}, {2}, {1, 2}};
  }

  Payload identity_payload() const override { return affine_identity; }
  Payload mul(const Payload& x, const Payload& y) const override {
    return affine_mul(std::get<AffinePair>(x), std::get<AffinePair>(y));
  }
  Payload inv(const Payload& x) const override { return affine_inv(std::get<AffinePair>(x)); }
  Order order(const Payload& x) const override {
    const AffinePair& g = std::get<AffinePair>(x);
    if (g == affine_identity)
      return Order::finite(1);
    if (g.sign == affine_identity.sign)
      return Order::infinite();
    // every nontrivial rotation part is an involution, so g^2 is a translation
    AffinePair sq = affine_mul(g, g);
    return sq == affine_identity ? Order::finite(2) : Order::infinite();
  }
  std::string format(const Payload& x) const override {
    return format_word(word_of(x), {"a", "b"});
  }
  GroupElement parse(std::string_view literal) const override {
    auto toks = literal_tokens(literal);
    if (toks.empty())
      throw ParseError("empty literal for fours");
    AffinePair acc = affine_identity;
    for (const auto& tok : toks) {
      if (tok == "1")
        continue;
      auto [base, k] = split_power(tok);
      AffinePair w = affine_identity;
      for (char c : base) {
        if (c == 'a') w = affine_mul(w, fours_a);
        else if (c == 'b') w = affine_mul(w, fours_b);
        else throw ParseError("fours literal uses generators a, b: '" + tok + "'");
      }
      AffinePair p = std::get<AffinePair>(grpeq::pow(element(w), k).payload());
      acc = affine_mul(acc, p);
    }
    return element(acc);
  }
  std::vector<GroupElement> generators() const override {
    return {element(fours_a), element(fours_b)};
  }
  bool torsion_free() const override { return true; }
  std::optional<BackendPresentation> presentation() const override {
    // a^-1 b^2 a b^2, b^-1 a^2 b a^2
    return BackendPresentation{{"a", "b"}, {{-1, 2, 2, 1, 2, 2}, {-2, 1, 1, 2, 1, 1}}};
  }
  Word word_of(const Payload& x) const override {
    const AffinePair& g = std::get<AffinePair>(x);
    for (size_t r = 0; r < reps_.size(); ++r) {
      if (reps_[r].sign != g.sign)
        continue;
      AffinePair tau = affine_mul(affine_inv(reps_[r]), g);
      Word w = rep_words_[r];
      // tau = a^(2u0) b^(2u1) (ab)^(-2u2)
      long long u0 = tau.twice_shift[0] / 2, u1 = tau.twice_shift[1] / 2,
                u2 = tau.twice_shift[2] / 2;
      auto append = [&](Word piece, long long k) {
        for (Letter l : power(piece, k))
          push_reduced(w, l);
      };
      append({1}, 2 * u0);
      append({2}, 2 * u1);
      append({1, 2}, -2 * u2);
      return w;
    }
    fail("fours element with an unexpected rotation part");
  }

  bool contains(const AffinePair& g) const {
    for (const auto& r : reps_) {
      if (r.sign != g.sign)
        continue;
      for (int i = 0; i < 3; ++i)
        if (((g.twice_shift[i] - r.twice_shift[i]) % 2 + 2) % 2 != 0)
          return false;
      return true;
    }
    return false;
  }

private:
  std::vector<AffinePair> reps_;
  std::vector<Word> rep_words_;
};

template <class T> const T& downcast(const GroupId& g, GroupKind k, const char* what) {
  if (!g || g->kind() != k)
    throw GroupMismatch(std::string(what) + ": wrong backend");
  return static_cast<const T&>(*g);
}

} // namespace

// CONSTRUCTORS

GroupId finite_table(std::vector<std::vector<int>> table, std::vector<std::string> names) {
  std::string d = table_description(table);
  if (!names.empty()) {
    std::string n = "finite{names";
    for (const auto& x : names)
      n += " " + x;
    d = n + ";" + d.substr(7);
  }
  return std::make_shared<TableGroup>(std::move(table), std::move(names), std::move(d),
                                      std::nullopt, std::vector<Word>{}, std::vector<int>{});
}

GroupId cyclic_group(int n) {
  require(n >= 1 && n <= 512, "cyclic: order must be in [1, 512]");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> names;
  std::vector<Word> words;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      t[i][j] = (i + j) % n;
    names.push_back(i == 0 ? "1" : i == 1 ? "g" : "g^" + std::to_string(i));
    words.push_back(Word(i, 1));
  }
  BackendPresentation p{{"g"}, {Word(n, 1)}};
  std::vector<int> gens;
  if (n > 1)
    gens.push_back(1);
  return std::make_shared<TableGroup>(std::move(t), std::move(names),
                                      "finite{cyclic " + std::to_string(n) + "}", p,
                                      std::move(words), std::move(gens));
}

GroupId klein_four() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      t[i][j] = i ^ j;
  BackendPresentation p{{"x", "y"}, {{1, 1}, {2, 2}, {-1, -2, 1, 2}}};
  return std::make_shared<TableGroup>(std::move(t), std::vector<std::string>{"1", "x", "y", "xy"},
                                      "finite{klein}", p,
                                      std::vector<Word>{{}, {1}, {2}, {1, 2}},
                                      std::vector<int>{1, 2});
}

GroupId dihedral_group(int n) {
  require(n >= 1 && n <= 256, "dihedral: n must be in [1, 256]");
  // element r^i s^j has index i + n*j; s r = r^-1 s
  int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<std::string> names(m);
  std::vector<Word> words(m);
  for (int x = 0; x < m; ++x) {
    int i = x % n, j = x / n;
    for (int y = 0; y < m; ++y) {
      int k = y % n, l = y / n;
      int ri = (j == 0 ? i + k : i - k + n) % n;
      t[x][y] = ri + n * ((j + l) % 2);
    }
    std::string r = i == 0 ? "" : i == 1 ? "r" : "r^" + std::to_string(i);
    names[x] = j ? (r.empty() ? "s" : r + "s") : (r.empty() ? "1" : r);
    words[x] = Word(i, 1);
    if (j)
      words[x].push_back(2);
  }
  BackendPresentation p{{"r", "s"}, {Word(n, 1), {2, 2}, {2, 1, 2, 1}}};
  return std::make_shared<TableGroup>(std::move(t), std::move(names),
                                      "finite{dihedral " + std::to_string(n) + "}", p,
                                      std::move(words), std::vector<int>{n > 1 ? 1 : 0, n});
}

GroupId perm_group(int degree, std::vector<Permutation> gens) {
  return std::make_shared<PermGroup>(degree, std::move(gens));
}
GroupId free_group(std::vector<std::string> names) {
  return std::make_shared<FreeGroup>(std::move(names));
}
GroupId free_abelian(int rank) { return std::make_shared<FreeAbelianGroup>(rank); }
GroupId fours_group() { return std::make_shared<FoursGroup>(); }

GroupElement table_element(const GroupId& g, int index) {
  const auto& t = downcast<TableGroup>(g, GroupKind::finite_table, "table_element");
  require(index >= 0 && index < t.n(), "table_element: index out of range");
  return GroupElement(g, TableIndex{index});
}

GroupElement make_permutation(const GroupId& g, std::vector<int> images) {
  return downcast<PermGroup>(g, GroupKind::permutation, "make_permutation").make(std::move(images));
}

GroupElement make_free(const GroupId& g, std::span<const Letter> w) {
  const auto& f = downcast<FreeGroup>(g, GroupKind::free, "make_free");
  for (Letter l : w)
    require(l != 0 && std::abs(l) <= f.rank(), "make_free: letter out of range");
  return GroupElement(g, FreeWord{reduce(w)});
}

GroupElement make_vector(const GroupId& g, std::vector<long long> coords) {
  const auto& z = downcast<FreeAbelianGroup>(g, GroupKind::free_abelian, "make_vector");
  require(static_cast<int>(coords.size()) == z.rank(), "make_vector: wrong rank");
  return GroupElement(g, IntVector{std::move(coords)});
}

GroupElement make_affine(const GroupId& g, std::array<int, 3> sign,
                         std::array<long long, 3> twice_shift) {
  const auto& f = downcast<FoursGroup>(g, GroupKind::fours, "make_affine");
  AffinePair p{sign, twice_shift};
  require(f.contains(p), "make_affine: not an element of the fours group");
  return GroupElement(g, p);
}

} // namespace grpeq
