#include "grpeq/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

namespace grpeq {

std::string_view decl_name(DeclKind k) {
  switch (k) {
    case DeclKind::group: return "group";
    case DeclKind::element: return "element";
    case DeclKind::set: return "set";
    case DeclKind::equation: return "equation";
    case DeclKind::generalized: return "generalized equation";
    case DeclKind::multi: return "multivariable equation";
  }
  return "?";
}

std::vector<std::string> Session::names_of(DeclKind k) const {
  std::vector<std::string> out;
  for (const auto& [name, kind] : order)
    if (kind == k)
      out.push_back(name);
  return out;
}

bool Session::declared(const std::string& name) const {
  return std::any_of(order.begin(), order.end(), [&](const auto& p) { return p.first == name; });
}

namespace {

// Substring with its column offset inside the current line.
struct Piece {
  std::string_view text;
  size_t col = 0;
};

Piece trim(Piece p) {
  while (!p.text.empty() && std::isspace(static_cast<unsigned char>(p.text.front()))) {
    p.text.remove_prefix(1);
    ++p.col;
  }
  while (!p.text.empty() && std::isspace(static_cast<unsigned char>(p.text.back())))
    p.text.remove_suffix(1);
  return p;
}

std::string_view trim_view(std::string_view s) { return trim({s, 0}).text; }

bool is_ident(std::string_view s) {
  if (s.empty() || s.size() > 64)
    return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

// Error at a column of the current statement.
[[noreturn]] void error_at(const std::string& msg, size_t col) {
  throw ParseError(msg, 0, static_cast<int>(col) + 1);
}

bool opens(char c) { return c == '(' || c == '[' || c == '{'; }
bool closes(char c) { return c == ')' || c == ']' || c == '}'; }

// Positions of `sep` outside brackets. Throws on unbalanced brackets.
std::vector<size_t> top_level(std::string_view s, char sep, size_t col = 0) {
  std::vector<size_t> out;
  std::vector<char> stack;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (opens(c)) {
      stack.push_back(c == '(' ? ')' : c == '[' ? ']' : '}');
    } else if (closes(c)) {
      if (stack.empty() || stack.back() != c)
        error_at(std::string("unbalanced '") + c + "'", col + i);
      stack.pop_back();
    } else if (c == sep && stack.empty()) {
      out.push_back(i);
    }
  }
  if (!stack.empty())
    error_at(std::string("missing '") + stack.back() + "'", col + s.size());
  return out;
}

std::vector<Piece> split_top(Piece p, char sep) {
  std::vector<Piece> out;
  size_t start = 0;
  for (size_t i : top_level(p.text, sep, p.col)) {
    out.push_back(trim({p.text.substr(start, i - start), p.col + start}));
    start = i + 1;
  }
  out.push_back(trim({p.text.substr(start), p.col + start}));
  return out;
}

// Re-raises library errors in a piece of input at the piece's position.
template <class F>
auto at_piece(const Piece& p, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    if (e.column > 0)
      throw;
    error_at(e.message, p.col);
  } catch (const Error& e) {
    error_at(e.what(), p.col);
  }
}

long long parse_int(Piece p, long long lo, long long hi, const char* what) {
  std::string_view t = p.text;
  long long v = 0;
  auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size())
    error_at(std::string("expected an integer for ") + what + ", got '" + std::string(t) + "'",
             p.col);
  if (v < lo || v > hi)
    error_at(std::string(what) + " must be in [" + std::to_string(lo) + ", " +
                 std::to_string(hi) + "]",
             p.col);
  return v;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// GROUP EXPRESSIONS

inline constexpr int max_table_order = 64;
inline constexpr int max_free_rank = 26;
inline constexpr int max_zn_rank = 16;

GroupId parse_finite(Piece inner) {
  std::string_view t = inner.text;
  if (t == "klein")
    return klein_four();
  if (starts_with(t, "cyclic ") || starts_with(t, "dihedral ")) {
    bool cyc = starts_with(t, "cyclic ");
    size_t skip = cyc ? 7 : 9;
    Piece n = trim({t.substr(skip), inner.col + skip});
    long long k = parse_int(n, 1, cyc ? max_table_order : max_table_order / 2, "group order");
    return cyc ? cyclic_group(static_cast<int>(k)) : dihedral_group(static_cast<int>(k));
  }
  std::vector<Piece> segs = split_top(inner, ';');
  std::vector<std::string> names;
  size_t first = 0;
  if (starts_with(segs[0].text, "names")) {
    for (const auto& tok : literal_tokens(segs[0].text.substr(5)))
      names.push_back(tok);
    first = 1;
  }
  std::vector<std::vector<int>> rows;
  for (size_t i = first; i < segs.size(); ++i) {
    std::vector<int> row;
    Piece seg = segs[i];
    size_t pos = 0;
    std::string_view s = seg.text;
    while (pos < s.size()) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      size_t start = pos;
      while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start < pos)
        row.push_back(static_cast<int>(parse_int({s.substr(start, pos - start), seg.col + start},
                                                 0, max_table_order - 1, "table entry")));
    }
    if (row.empty())
      error_at("empty table row", seg.col);
    rows.push_back(std::move(row));
    if (rows.size() > static_cast<size_t>(max_table_order))
      error_at("table larger than " + std::to_string(max_table_order) + " rows", seg.col);
  }
  if (rows.empty())
    error_at("finite{} needs cyclic n, klein, dihedral n or a table", inner.col);
  return at_piece(inner, [&] { return finite_table(rows, names); });
}

Permutation parse_cycles(Piece p, int degree) {
  Permutation perm;
  perm.images.resize(degree);
  for (int i = 0; i < degree; ++i) perm.images[i] = i;
  std::string_view s = p.text;
  size_t pos = 0;
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
      continue;
    }
    if (s[pos] != '(')
      error_at("expected '(' in cycle notation", p.col + pos);
    size_t close = s.find(')', pos);
    if (close == std::string_view::npos)
      error_at("unterminated cycle", p.col + pos);
    std::vector<int> cyc;
    std::string_view body = s.substr(pos + 1, close - pos - 1);
    size_t q = 0;
    while (q < body.size()) {
      while (q < body.size() && (std::isspace(static_cast<unsigned char>(body[q])) || body[q] == ','))
        ++q;
      size_t start = q;
      while (q < body.size() && !std::isspace(static_cast<unsigned char>(body[q])) && body[q] != ',')
        ++q;
      if (start < q) {
        int v = static_cast<int>(parse_int({body.substr(start, q - start), p.col + pos + 1 + start},
                                           1, degree, "cycle point"));
        if (std::find(cyc.begin(), cyc.end(), v - 1) != cyc.end())
          error_at("repeated point in a cycle", p.col + pos + 1 + start);
        cyc.push_back(v - 1);
      }
    }
    // the permutation so far is applied after this cycle
    Permutation c;
    c.images.resize(degree);
    for (int i = 0; i < degree; ++i) c.images[i] = i;
    for (size_t i = 0; i < cyc.size(); ++i)
      c.images[cyc[i]] = cyc[(i + 1) % cyc.size()];
    Permutation r;
    r.images.resize(degree);
    for (int i = 0; i < degree; ++i) r.images[i] = perm.images[c.images[i]];
    perm = r;
    pos = close + 1;
  }
  return perm;
}

GroupId parse_atom(Piece p, const Session& s, int depth);

GroupId parse_expr(Piece p, const Session& s, int depth) {
  if (depth > max_group_nesting)
    error_at("group expression nested too deeply", p.col);
  p = trim(p);
  std::vector<Piece> parts = split_top(p, '*');
  if (parts.size() == 1)
    return parse_atom(parts[0], s, depth);
  std::vector<GroupId> factors;
  for (const Piece& part : parts)
    factors.push_back(parse_atom(part, s, depth));
  return at_piece(p, [&] { return free_product(factors); });
}

GroupId parse_atom(Piece p, const Session& s, int depth) {
  std::string_view t = p.text;
  if (t.empty())
    error_at("missing group expression", p.col);
  if (t.front() == '(' && t.back() == ')' && top_level(t.substr(1, t.size() - 2), ')').empty())
    return parse_expr({t.substr(1, t.size() - 2), p.col + 1}, s, depth + 1);
  if (t == "fours")
    return fours_group();
  if (starts_with(t, "free(") && t.back() == ')') {
    std::vector<std::string> names;
    for (const Piece& n : split_top({t.substr(5, t.size() - 6), p.col + 5}, ',')) {
      if (!is_ident(n.text))
        error_at("invalid generator name '" + std::string(n.text) + "'", n.col);
      names.emplace_back(n.text);
    }
    if (names.size() > static_cast<size_t>(max_free_rank))
      error_at("free group rank above " + std::to_string(max_free_rank), p.col);
    return at_piece(p, [&] { return free_group(names); });
  }
  if (starts_with(t, "zn(") && t.back() == ')') {
    long long k = parse_int(trim({t.substr(3, t.size() - 4), p.col + 3}), 1, max_zn_rank, "rank");
    return free_abelian(static_cast<int>(k));
  }
  if (starts_with(t, "finite{") && t.back() == '}')
    return parse_finite(trim({t.substr(7, t.size() - 8), p.col + 7}));
  if (starts_with(t, "perm(")) {
    size_t close = t.find(')');
    if (close == std::string_view::npos)
      error_at("perm needs a degree: perm(n){...}", p.col);
    long long n = parse_int(trim({t.substr(5, close - 5), p.col + 5}), 1, 64, "degree");
    std::string_view rest = trim_view(t.substr(close + 1));
    size_t rest_col = p.col + (t.size() - rest.size());
    if (rest.size() < 2 || rest.front() != '{' || rest.back() != '}')
      error_at("perm needs generators: perm(n){(1 2), ...}", p.col + close + 1);
    std::vector<Permutation> gens;
    Piece body = trim({rest.substr(1, rest.size() - 2), rest_col + 1});
    if (!body.text.empty())
      for (const Piece& g : split_top(body, ','))
        gens.push_back(parse_cycles(g, static_cast<int>(n)));
    return at_piece(p, [&] { return perm_group(static_cast<int>(n), gens); });
  }
  if (is_ident(t)) {
    auto it = s.groups.find(std::string(t));
    if (it == s.groups.end())
      error_at("unknown group '" + std::string(t) + "'", p.col);
    return it->second;
  }
  error_at("unrecognized group expression '" + std::string(t) + "'", p.col);
}

// ELEMENTS AND EQUATIONS

GroupElement parse_element(Piece p, const GroupId& g, const Session& s) {
  if (p.text.empty())
    error_at("missing element literal", p.col);
  auto it = s.elements.find(std::string(p.text));
  if (it != s.elements.end()) {
    if (!same_group(it->second.group(), *g))
      error_at("element '" + std::string(p.text) + "' is not in " + g->description(), p.col);
    return it->second;
  }
  return at_piece(p, [&] { return g->parse(p.text); });
}

// A token that may be a declared element raised to a power.
GroupElement parse_constant_token(Piece p, const GroupId& g, const Session& s) {
  auto [base, k] = at_piece(p, [&] { return split_power(p.text); });
  auto it = s.elements.find(base);
  if (it != s.elements.end())
    return pow(parse_element({base, p.col}, g, s), k);
  return parse_element(p, g, s);
}

// Tokens of a word with their columns.
std::vector<Piece> word_tokens(Piece p) {
  std::vector<std::string> toks = at_piece(p, [&] { return literal_tokens(p.text); });
  std::vector<Piece> out;
  size_t pos = 0;
  for (const auto& t : toks) {
    size_t at = p.text.find(t, pos);
    if (at == std::string_view::npos)
      at = pos;
    out.push_back({p.text.substr(at, t.size()), p.col + at});
    pos = at + t.size();
  }
  return out;
}

// "lhs = 1" -> lhs
Piece equation_lhs(Piece body) {
  auto eqs = top_level(body.text, '=', body.col);
  if (eqs.empty())
    error_at("equation must end with '= 1'", body.col + body.text.size());
  size_t e = eqs.back();
  Piece rhs = trim({body.text.substr(e + 1), body.col + e + 1});
  if (rhs.text != "1")
    error_at("right-hand side must be 1", rhs.col);
  return trim({body.text.substr(0, e), body.col});
}

Equation parse_equation(Piece body, const GroupId& g, const std::string& var, const Session& s) {
  Piece lhs = equation_lhs(body);
  GroupId amb = at_piece(body, [&] { return with_letter(g, var); });
  const auto& fp = as_free_product(*amb);
  int letter = letter_factor(fp);
  GroupElement w = amb->identity();
  for (const Piece& tok : word_tokens(lhs)) {
    auto [base, k] = at_piece(tok, [&] { return split_power(tok.text); });
    if (base == var)
      w = w * letter_power(amb, letter, k);
    else
      w = w * fp.inject(0, parse_constant_token(tok, g, s));
  }
  return at_piece(lhs, [&] { return equation_from_word(g, var, w); });
}

GeneralizedEquation parse_generalized(Piece body, const GroupId& g, const GroupId& t,
                                      const Session& s) {
  Piece lhs = equation_lhs(body);
  std::vector<GPair> pairs;
  for (const Piece& tok : word_tokens(lhs)) {
    if (tok.text.size() < 2 || tok.text.front() != '(' || tok.text.back() != ')')
      error_at("expected a pair (g, t)", tok.col);
    auto parts = split_top({tok.text.substr(1, tok.text.size() - 2), tok.col + 1}, ',');
    if (parts.size() != 2)
      error_at("a pair needs exactly two entries", tok.col);
    pairs.push_back({parse_element(parts[0], g, s), parse_element(parts[1], t, s)});
  }
  if (pairs.empty())
    error_at("generalized equation without pairs", lhs.col);
  return at_piece(lhs, [&] { return GeneralizedEquation(g, t, pairs); });
}

MultiEquation parse_multi(Piece body, const GroupId& g, const std::vector<std::string>& vars,
                          const Session& s) {
  Piece lhs = equation_lhs(body);
  MultiEquation m{g, vars, {}};
  GroupElement pending = g->identity();
  for (const Piece& tok : word_tokens(lhs)) {
    auto [base, k] = at_piece(tok, [&] { return split_power(tok.text); });
    auto v = std::find(vars.begin(), vars.end(), base);
    if (v != vars.end()) {
      if (k == 0)
        continue;
      m.terms.push_back({pending, static_cast<int>(v - vars.begin()), k});
      pending = g->identity();
    } else {
      pending = pending * parse_constant_token(tok, g, s);
    }
  }
  if (!m.terms.empty() && !pending.is_identity())
    m.terms.front().coefficient = pending * m.terms.front().coefficient;
  return m;
}

// STATEMENTS

struct Header {
  std::string name;
  Piece rest;
};

// "[NAME] over ..." -> name (possibly generated) and the text after "over".
Header named_over(Piece p, int& counter) {
  Header h;
  std::string_view t = p.text;
  size_t over = t.find("over ");
  if (over == std::string_view::npos || (over > 0 && !std::isspace(static_cast<unsigned char>(t[over - 1]))))
    error_at("expected 'over'", p.col);
  Piece name = trim({t.substr(0, over), p.col});
  if (name.text.empty()) {
    h.name = "_" + std::to_string(++counter);
  } else {
    if (!is_ident(name.text))
      error_at("invalid name '" + std::string(name.text) + "'", name.col);
    h.name = std::string(name.text);
  }
  h.rest = trim({t.substr(over + 5), p.col + over + 5});
  return h;
}

// Splits "HEAD: BODY" at the first top-level colon.
std::pair<Piece, Piece> split_colon(Piece p) {
  auto colons = top_level(p.text, ':', p.col);
  if (colons.empty())
    error_at("expected ':' before the equation", p.col + p.text.size());
  size_t c = colons.front();
  return {trim({p.text.substr(0, c), p.col}), trim({p.text.substr(c + 1), p.col + c + 1})};
}

// Splits "A KEYWORD B" at the last " keyword ".
bool split_keyword(Piece p, std::string_view kw, Piece& before, Piece& after) {
  std::string needle = " " + std::string(kw) + " ";
  size_t at = p.text.rfind(needle);
  if (at == std::string_view::npos)
    return false;
  before = trim({p.text.substr(0, at), p.col});
  after = trim({p.text.substr(at + needle.size()), p.col + at + needle.size()});
  return true;
}

class Parser {
public:
  Session run(std::string_view script) {
    if (script.size() > max_script_bytes)
      throw ParseError("script larger than " + std::to_string(max_script_bytes) + " bytes", 1, 1);
    int line_no = 0;
    size_t pos = 0;
    while (pos <= script.size()) {
      size_t nl = script.find('\n', pos);
      std::string_view line = script.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      try {
        statement(line);
      } catch (const ParseError& e) {
        throw ParseError(e.message, line_no, std::max(e.column, 1));
      } catch (const Error& e) {
        throw ParseError(e.what(), line_no, 1);
      }
      if (nl == std::string_view::npos)
        break;
      pos = nl + 1;
    }
    return std::move(s_);
  }

private:
  void declare(const std::string& name, DeclKind k, size_t col) {
    if (s_.declared(name))
      error_at("name '" + name + "' is already declared", col);
    s_.order.emplace_back(name, k);
  }

  void statement(std::string_view raw) {
    Piece line = trim({raw, 0});
    if (line.text.empty() || line.text.front() == '#')
      return;
    size_t sp = 0;
    while (sp < line.text.size() && !std::isspace(static_cast<unsigned char>(line.text[sp]))) ++sp;
    std::string_view kw = line.text.substr(0, sp);
    Piece rest = trim({line.text.substr(sp), line.col + sp});
    if (kw == "group")
      group(rest);
    else if (kw == "let" || kw == "set")
      member(rest, kw == "set");
    else if (kw == "eq")
      eq(rest);
    else if (kw == "geq")
      geq(rest);
    else if (kw == "meq")
      meq(rest);
    else
      error_at("unknown statement '" + std::string(kw) + "'", line.col);
  }

  void group(Piece rest) {
    auto eqs = top_level(rest.text, '=', rest.col);
    if (eqs.empty())
      error_at("expected 'group NAME = expression'", rest.col);
    Piece name = trim({rest.text.substr(0, eqs[0]), rest.col});
    if (!is_ident(name.text))
      error_at("invalid group name '" + std::string(name.text) + "'", name.col);
    GroupId g = parse_expr({rest.text.substr(eqs[0] + 1), rest.col + eqs[0] + 1}, s_, 0);
    declare(std::string(name.text), DeclKind::group, name.col);
    s_.groups.emplace(std::string(name.text), g);
  }

  void member(Piece rest, bool is_set) {
    Piece name, tail;
    size_t in = rest.text.find(" in ");
    if (in == std::string_view::npos)
      error_at(is_set ? "expected 'set NAME in GROUP = {...}'" : "expected 'let NAME in GROUP = literal'",
               rest.col);
    name = trim({rest.text.substr(0, in), rest.col});
    if (!is_ident(name.text))
      error_at("invalid name '" + std::string(name.text) + "'", name.col);
    tail = trim({rest.text.substr(in + 4), rest.col + in + 4});
    auto eqs = top_level(tail.text, '=', tail.col);
    if (eqs.empty())
      error_at("expected '='", tail.col + tail.text.size());
    GroupId g = parse_expr({tail.text.substr(0, eqs[0]), tail.col}, s_, 0);
    Piece value = trim({tail.text.substr(eqs[0] + 1), tail.col + eqs[0] + 1});
    std::string key(name.text);
    if (!is_set) {
      GroupElement x = parse_element(value, g, s_);
      declare(key, DeclKind::element, name.col);
      s_.elements.emplace(key, x);
      return;
    }
    if (value.text.size() < 2 || value.text.front() != '{' || value.text.back() != '}')
      error_at("a set is written {x, y, ...}", value.col);
    Piece inner = trim({value.text.substr(1, value.text.size() - 2), value.col + 1});
    if (inner.text.empty())
      error_at("empty set", value.col);
    ElementSet xs;
    for (const Piece& item : split_top(inner, ','))
      xs.push_back(parse_element(item, g, s_));
    if (xs.size() > 4096)
      error_at("set larger than 4096 elements", value.col);
    declare(key, DeclKind::set, name.col);
    s_.sets.emplace(key, normalized_set(xs));
  }

  void eq(Piece rest) {
    Header h = named_over(rest, counter_);
    auto [head, body] = split_colon(h.rest);
    Piece gpart = head, var{"t", head.col};
    Piece before, after;
    if (split_keyword(head, "var", before, after)) {
      gpart = before;
      var = after;
    }
    if (!is_ident(var.text))
      error_at("invalid variable name '" + std::string(var.text) + "'", var.col);
    GroupId g = parse_expr(gpart, s_, 0);
    Equation e = parse_equation(body, g, std::string(var.text), s_);
    declare(h.name, DeclKind::equation, rest.col);
    s_.equations.emplace(h.name, std::move(e));
  }

  void geq(Piece rest) {
    Header h = named_over(rest, counter_);
    auto [head, body] = split_colon(h.rest);
    Piece gpart, tpart;
    if (!split_keyword(head, "with", gpart, tpart))
      error_at("expected 'over G with T'", head.col);
    GroupId g = parse_expr(gpart, s_, 0);
    GroupId t = parse_expr(tpart, s_, 0);
    GeneralizedEquation ge = parse_generalized(body, g, t, s_);
    declare(h.name, DeclKind::generalized, rest.col);
    s_.generalized.emplace(h.name, std::move(ge));
  }

  void meq(Piece rest) {
    Header h = named_over(rest, counter_);
    auto [head, body] = split_colon(h.rest);
    Piece gpart, vpart;
    if (!split_keyword(head, "vars", gpart, vpart))
      error_at("expected 'over G vars x1, x2, ...'", head.col);
    GroupId g = parse_expr(gpart, s_, 0);
    std::vector<std::string> vars;
    for (const Piece& v : split_top(vpart, ',')) {
      if (!is_ident(v.text))
        error_at("invalid variable name '" + std::string(v.text) + "'", v.col);
      if (std::find(vars.begin(), vars.end(), v.text) != vars.end())
        error_at("variable '" + std::string(v.text) + "' listed twice", v.col);
      vars.emplace_back(v.text);
    }
    if (vars.size() > static_cast<size_t>(max_free_rank))
      error_at("too many variables", vpart.col);
    MultiEquation m = parse_multi(body, g, vars, s_);
    declare(h.name, DeclKind::multi, rest.col);
    s_.multi.emplace(h.name, std::move(m));
  }

  Session s_;
  int counter_ = 0;
};

} // namespace

GroupId parse_group_expr(std::string_view text, const Session& s) {
  return parse_expr({text, 0}, s, 0);
}

Session parse_session(std::string_view script) { return Parser().run(script); }

} // namespace grpeq
