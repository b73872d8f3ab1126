#include "grpeq/equations.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <tuple>

namespace grpeq {

std::vector<GroupId> flat_factors(const GroupId& g) {
  if (g->kind() == GroupKind::free_product)
    return as_free_product(*g).factors();
  return {g};
}

std::vector<std::vector<std::string>> factor_generator_names(const Group& g) {
  auto p = g.presentation();
  if (!p)
    throw PreconditionError("backend without known presentation: " + g.description());
  if (g.kind() != GroupKind::free_product)
    return {p->generators};
  std::vector<std::vector<std::string>> out;
  size_t at = 0;
  for (const auto& f : as_free_product(g).factors()) {
    size_t n = f->presentation()->generators.size();
    out.emplace_back(p->generators.begin() + at, p->generators.begin() + at + n);
    at += n;
  }
  return out;
}

// EQUATION

Equation::Equation(GroupId group, std::vector<Term> terms, std::string variable)
    : group_(std::move(group)), terms_(std::move(terms)), variable_(std::move(variable)) {
  require(!terms_.empty(), "equation without terms");
  for (const Term& t : terms_) {
    require(t.exponent != 0, "equation term with zero exponent");
    if (!same_group(t.coefficient.group(), *group_))
      throw GroupMismatch("equation coefficient " + t.coefficient.to_string() +
                          " is not in " + group_->description());
  }
  ambient_ = with_letter(group_, variable_);
  letter_ = letter_factor(as_free_product(*ambient_));
}

std::set<int> Equation::constant_factors() const {
  std::set<int> s;
  for (int i = 0; i < letter_; ++i)
    s.insert(i);
  return s;
}

GroupElement Equation::constant(const GroupElement& g) const {
  return as_free_product(*ambient_).inject(0, g);
}

GroupElement Equation::t_power(long long k) const { return letter_power(ambient_, letter_, k); }

GroupElement Equation::word() const {
  GroupElement w = ambient_->identity();
  for (const Term& t : terms_)
    w = w * constant(t.coefficient) * t_power(t.exponent);
  return w;
}

long long Equation::exponent_sum() const {
  long long s = 0;
  for (const Term& t : terms_)
    s += t.exponent;
  return s;
}

std::string Equation::to_string() const {
  std::string out;
  for (const Term& t : terms_) {
    if (!t.coefficient.is_identity())
      out += t.coefficient.to_string() + " ";
    out += variable_ + (t.exponent == 1 ? "" : "^" + std::to_string(t.exponent)) + " ";
  }
  return out + "= 1";
}

Equation equation_from_word(const GroupId& g, const std::string& variable,
                            const GroupElement& word) {
  GroupId amb = with_letter(g, variable);
  if (!same_group(word.group(), *amb))
    throw GroupMismatch("equation word is not in " + amb->description());
  const auto& fp = as_free_product(*amb);
  int letter = letter_factor(fp);
  // G-part of a run of constant syllables, as an element of G
  auto to_g = [&](const std::vector<Syllable>& run) -> GroupElement {
    if (g->kind() == GroupKind::free_product)
      return as_free_product(*g).from_syllables(run);
    GroupElement x = g->identity();
    for (const auto& s : run)
      x = x * s.value;
    return x;
  };
  std::vector<Term> terms;
  std::vector<Syllable> run;
  bool seen_letter = false;
  for (const Syllable& s : syllables(word)) {
    if (s.factor == letter) {
      terms.push_back({to_g(run), letter_exponent(s)});
      run.clear();
      seen_letter = true;
    } else {
      run.push_back(s);
    }
  }
  if (!seen_letter)
    throw PreconditionError("equation has no occurrence of " + variable);
  if (!run.empty()) {
    // conjugate the trailing constant to the front
    terms.front().coefficient = to_g(run) * terms.front().coefficient;
  }
  return Equation(g, std::move(terms), variable);
}

Equation inverted(const Equation& e) {
  const auto& t = e.terms();
  size_t n = t.size();
  std::vector<Term> out;
  out.push_back({inv(t[0].coefficient), -t[n - 1].exponent});
  for (size_t i = n - 1; i >= 1; --i)
    out.push_back({inv(t[i].coefficient), -t[i - 1].exponent});
  return Equation(e.group(), std::move(out), e.variable());
}

// CLASSIFICATION

std::string_view kind_name(EquationKind k) {
  switch (k) {
    case EquationKind::singular: return "singular";
    case EquationKind::nonsingular: return "nonsingular";
    case EquationKind::unimodular: return "unimodular";
  }
  return "?";
}

Classification classify(const Equation& e) {
  Classification c;
  GroupElement w = e.word();
  for (const Syllable& s : syllables(w))
    if (s.factor == e.letter())
      c.length += std::llabs(letter_exponent(s));
  c.exponent_sum = e.exponent_sum();
  c.kind = c.exponent_sum == 0                ? EquationKind::singular
           : std::llabs(c.exponent_sum) == 1 ? EquationKind::unimodular
                                              : EquationKind::nonsingular;
  c.trivial = is_conjugate_to_constant(w, e.constant_factors());
  return c;
}

// LEVEL WINDOW

std::set<int> LevelWindow::sub(int k_from, int k_to) const {
  std::set<int> out;
  for (int l = lo; l <= hi; ++l)
    for (int f = 0; f < factors; ++f)
      if (h.count(f) || (l >= k_from && l <= k_to))
        out.insert(index(l, f));
  return out;
}

GroupElement LevelWindow::to_ambient(const GroupElement& x, const Equation& e) const {
  GroupElement out = e.ambient()->identity();
  const auto& amb = as_free_product(*e.ambient());
  for (const Syllable& s : syllables(x)) {
    int level = level_of(s.factor);
    out = out * e.t_power(-level) * amb.embed(factor_of(s.factor), s.value) * e.t_power(level);
  }
  return out;
}

std::string LevelWindow::format(const GroupElement& x) const {
  const auto& s = syllables(x);
  if (s.empty())
    return "1";
  std::string out;
  for (const Syllable& y : s) {
    if (!out.empty())
      out += " ";
    out += "[" + y.value.to_string() + "]_" + std::to_string(level_of(y.factor));
  }
  return out;
}

// NORMAL FORM

namespace {

struct Placed {
  int factor;
  GroupElement value;
  long long level;
};

struct Rotation {
  std::vector<Placed> consts;  // constant syllables left to right
  long long kmin = LLONG_MAX, kmax = LLONG_MIN;
  long long span() const { return kmax - kmin; }
};

Rotation levels_of(const std::vector<Syllable>& r, int letter, const std::set<int>& h) {
  Rotation out;
  long long suffix = 0;
  for (size_t i = r.size(); i-- > 0;) {
    if (r[i].factor == letter) {
      suffix += letter_exponent(r[i]);
      continue;
    }
    out.consts.push_back({r[i].factor, r[i].value, suffix});
    if (!h.count(r[i].factor)) {
      out.kmin = std::min(out.kmin, suffix);
      out.kmax = std::max(out.kmax, suffix);
    }
  }
  std::reverse(out.consts.begin(), out.consts.end());
  return out;
}

// Pieces alternate U, L, U, ..., U; returns them with levels unchanged.
std::vector<std::vector<Placed>> greedy_pieces(const std::vector<Placed>& seq, long long m,
                                               const std::set<int>& h) {
  std::vector<std::vector<Placed>> pieces(1);
  bool upper = true;
  for (const Placed& p : seq) {
    if (!h.count(p.factor)) {
      bool need_lower = p.level == 0;
      bool need_upper = p.level == m + 1;
      if ((need_lower && upper) || (need_upper && !upper)) {
        pieces.emplace_back();
        upper = !upper;
      }
    }
    pieces.back().push_back(p);
  }
  if (!upper)
    pieces.emplace_back();
  return pieces;
}

} // namespace

GroupElement NormalForm::expansion() const {
  const Equation& e = equation;
  GroupElement t = e.t_power(1), ti = e.t_power(-1);
  if (const auto* one = std::get_if<LengthOne>(&form))
    return window.to_ambient(one->c, e) * t;
  const Form6& f = std::get<Form6>(form);
  GroupElement out = window.to_ambient(f.c, e) * t;
  for (const auto& [b, a] : f.pairs)
    out = out * window.to_ambient(b, e) * ti * window.to_ambient(a, e) * t;
  return out;
}

NormalForm normal_form_6(const Equation& input, const std::set<int>& h_factors) {
  const int nG = input.constant_factor_count();
  for (int f : h_factors)
    require(f >= 0 && f < nG, "normal_form_6: H factor index out of range");
  require(static_cast<int>(h_factors.size()) < nG, "normal_form_6: K must be nontrivial");
  long long sigma = input.exponent_sum();
  if (std::llabs(sigma) != 1)
    throw PreconditionError("normal_form_6 needs a unimodular equation, exponent sum is " +
                            std::to_string(sigma));
  NormalForm nf(sigma == -1 ? inverted(input) : input);
  nf.inverted = sigma == -1;
  const Equation& e = nf.equation;
  const int letter = e.letter();
  GroupElement w = e.word();
  std::set<int> h_and_t = h_factors;
  h_and_t.insert(letter);
  if (is_conjugate_to_constant(w, h_and_t))
    throw PreconditionError("equation lies in a conjugate of H * <" + e.variable() +
                            ">; no normal form relative to K");

  CyclicReduction cr = cyclic_reduce(w);
  std::vector<Syllable> core = syllables(cr.core);
  const size_t N = core.size();

  std::vector<Rotation> rots;
  long long best_span = LLONG_MAX;
  for (size_t j = 0; j < N; ++j) {
    std::vector<Syllable> r(core.begin() + j, core.end());
    r.insert(r.end(), core.begin(), core.begin() + j);
    rots.push_back(levels_of(r, letter, h_factors));
    best_span = std::min(best_span, rots.back().span());
  }
  nf.rotations_examined = N;
  nf.span = best_span;

  // choose rotation, shift and pieces
  std::vector<std::vector<Placed>> best_pieces;
  long long best_n = LLONG_MAX;
  for (size_t j = 0; j < N && best_span >= 1; ++j) {
    if (rots[j].span() != best_span)
      continue;
    long long shift = -rots[j].kmin;
    std::vector<Placed> seq = rots[j].consts;
    for (auto& p : seq)
      p.level += shift;
    auto pieces = greedy_pieces(seq, best_span - 1, h_factors);
    long long n = static_cast<long long>(pieces.size() / 2);
    if (n < best_n) {
      best_n = n;
      best_pieces = std::move(pieces);
      nf.rotation = j;
      nf.shift = shift;
    }
  }
  if (best_span == 0) {
    for (size_t j = 0; j < N; ++j)
      if (rots[j].span() == 0) {
        nf.rotation = j;
        nf.shift = 1 - rots[j].kmin;
        std::vector<Placed> seq = rots[j].consts;
        for (auto& p : seq)
          p.level += nf.shift;
        best_pieces = {seq};
        break;
      }
  }

  // U pieces (c^t and a_i^t) are stored one level down
  for (size_t i = 0; i < best_pieces.size(); i += 2)
    for (auto& p : best_pieces[i])
      p.level -= 1;

  LevelWindow& win = nf.window;
  win.factors = nG;
  win.h = h_factors;
  long long m = best_span == 0 ? 0 : best_span - 1;
  long long lo = 0, hi = m;
  for (const auto& piece : best_pieces)
    for (const auto& p : piece) {
      lo = std::min(lo, p.level);
      hi = std::max(hi, p.level);
    }
  win.lo = static_cast<int>(lo);
  win.hi = static_cast<int>(hi);
  std::vector<GroupId> copies;
  std::vector<GroupId> gf = flat_factors(e.group());
  for (long long l = lo; l <= hi; ++l)
    copies.insert(copies.end(), gf.begin(), gf.end());
  win.group = free_product(copies);
  const auto& wg = as_free_product(*win.group);
  auto build = [&](const std::vector<Placed>& piece) {
    std::vector<Syllable> s;
    for (const auto& p : piece)
      s.push_back({win.index(static_cast<int>(p.level), p.factor), p.value});
    return wg.from_syllables(s);
  };

  // q = p P_j t^J
  GroupElement prefix = e.ambient()->identity();
  const auto& amb = as_free_product(*e.ambient());
  for (size_t i = 0; i < nf.rotation; ++i)
    prefix = prefix * amb.from_syllables({core[i]});
  nf.conjugator = cr.conjugator * prefix * e.t_power(nf.shift);

  if (best_span == 0) {
    GroupElement c = build(best_pieces[0]);
    nf.form = LengthOne{c, inv(c)};
  } else {
    Form6 f;
    f.m = m;
    f.n = best_n;
    f.c = build(best_pieces[0]);
    for (size_t i = 1; i + 1 < best_pieces.size(); i += 2)
      f.pairs.emplace_back(build(best_pieces[i]), build(best_pieces[i + 1]));
    f.property1 = f.n >= 1;
    std::set<int> lower = win.sub(0, static_cast<int>(m) - 1);
    std::set<int> upper = win.sub(1, static_cast<int>(m));
    f.property2 = f.property1;
    for (const auto& [b, a] : f.pairs) {
      f.a_outside.push_back(!in_subfreeproduct(a, lower));
      f.b_outside.push_back(!in_subfreeproduct(b, upper));
      f.property2 = f.property2 && f.a_outside.back() && f.b_outside.back();
    }
    f.property3_implied = f.property2;
    nf.form = std::move(f);
  }
  nf.expansion_verified = nf.expansion() == conj(w, nf.conjugator);
  if (!nf.expansion_verified)
    fail("normal_form_6: expansion does not reproduce the conjugated equation");
  return nf;
}

// LEVEL SYSTEM

namespace {

struct CopyNames {
  // letter of (level, factor, generator) in the emitted presentation
  std::map<std::tuple<int, int, int>, int> letter;
};

Word copy_word(const GroupElement& x, const LevelWindow& win, const CopyNames& names) {
  Word out;
  for (const Syllable& s : syllables(x)) {
    int level = win.level_of(s.factor), f = win.factor_of(s.factor);
    for (Letter l : s.value.group().word_of(s.value.payload())) {
      auto it = names.letter.find({level, f, std::abs(l) - 1});
      if (it == names.letter.end())
        throw PreconditionError("window too small for level " + std::to_string(level));
      push_reduced(out, l > 0 ? it->second : -it->second);
    }
  }
  return out;
}

void add_copy(Presentation& p, CopyNames& names, const Group& g, int level, int f,
              const std::vector<std::string>& gen_names, const std::string& kind) {
  auto bp = g.presentation();
  if (!bp)
    throw PreconditionError("backend without known presentation: " + g.description());
  std::vector<int> letters;
  for (size_t i = 0; i < gen_names.size(); ++i) {
    int l = p.add_generator(gen_names[i] + "_" + std::to_string(level), g.description(),
                            kind + "_" + std::to_string(level));
    names.letter[{level, f, static_cast<int>(i)}] = l;
    letters.push_back(l);
  }
  for (const Word& r : bp->relators) {
    Word w;
    for (Letter l : r)
      w.push_back(l > 0 ? letters[l - 1] : -letters[-l - 1]);
    p.add_relator(w, "relator of " + kind + "_" + std::to_string(level));
  }
}

} // namespace

Presentation emit_system_7(const NormalForm& nf, int window, const std::string& variable) {
  require(window >= 0, "emit_system_7: negative window");
  const LevelWindow& win = nf.window;
  if (win.lo < -window || win.hi > window) {
    // only H levels may leave [0, m]; they must fit in [-W, W]
    bool h_outside = false;
    auto check = [&](const GroupElement& x) {
      for (const Syllable& s : syllables(x)) {
        int l = win.level_of(s.factor);
        if (l < -window || l > window)
          h_outside = true;
      }
    };
    if (const auto* one = std::get_if<LengthOne>(&nf.form)) {
      check(one->c);
    } else {
      const Form6& f = std::get<Form6>(nf.form);
      check(f.c);
      for (const auto& [b, a] : f.pairs) {
        check(b);
        check(a);
      }
    }
    if (h_outside)
      throw PreconditionError("emit_system_7: window " + std::to_string(window) +
                              " does not contain levels " + std::to_string(win.lo) + ".." +
                              std::to_string(win.hi));
  }
  const Equation& e = nf.equation;
  auto gf = flat_factors(e.group());
  auto gnames = factor_generator_names(*e.group());
  long long m = nf.length_one() ? 0 : std::get<Form6>(nf.form).m;
  if (!nf.length_one() && m > window)
    throw PreconditionError("emit_system_7: window smaller than m");

  Presentation p;
  CopyNames names;
  for (int l = -window; l <= window; ++l)
    for (int f = 0; f < win.factors; ++f)
      if (win.h.count(f))
        add_copy(p, names, *gf[f], l, f, gnames[f], "H");
  for (int l = 0; l <= m; ++l)
    for (int f = 0; f < win.factors; ++f)
      if (!win.h.count(f))
        add_copy(p, names, *gf[f], l, f, gnames[f], "K");

  auto shift_rel = [&](const Word& conj_by, int level, int f, bool h) {
    for (size_t g = 0; g < gnames[f].size(); ++g) {
      int a = names.letter.at({level, f, static_cast<int>(g)});
      int b = names.letter.at({level + 1, f, static_cast<int>(g)});
      Word r = inverse(conj_by);
      push_reduced(r, a);
      for (Letter l : conj_by)
        push_reduced(r, l);
      push_reduced(r, -b);
      p.add_relator(r, std::string(h ? "H" : "K") + " shift at level " + std::to_string(level));
    }
  };

  if (const auto* one = std::get_if<LengthOne>(&nf.form)) {
    Word u = copy_word(one->u, win, names);
    for (int l = -window; l < window; ++l)
      for (int f = 0; f < win.factors; ++f)
        if (win.h.count(f))
          shift_rel(u, l, f, true);
    return p;
  }

  int x = p.add_generator(variable, "", "unknown");
  for (int l = -window; l < window; ++l)
    for (int f = 0; f < win.factors; ++f)
      if (win.h.count(f))
        shift_rel({x}, l, f, true);
  for (int l = 0; l < m; ++l)
    for (int f = 0; f < win.factors; ++f)
      if (!win.h.count(f))
        shift_rel({x}, l, f, false);
  const Form6& f6 = std::get<Form6>(nf.form);
  Word eq = copy_word(f6.c, win, names);
  push_reduced(eq, x);
  for (const auto& [b, a] : f6.pairs) {
    for (Letter l : copy_word(b, win, names)) push_reduced(eq, l);
    push_reduced(eq, -x);
    for (Letter l : copy_word(a, win, names)) push_reduced(eq, l);
    push_reduced(eq, x);
  }
  p.add_relator(eq, "equation");
  return p;
}

Presentation universal_solution_group(const Equation& e) {
  Presentation p = backend_presentation(*e.group());
  int t = p.add_generator(e.variable(), "", "unknown");
  Word w;
  for (const Term& term : e.terms()) {
    for (Letter l : e.group()->word_of(term.coefficient.payload()))
      push_reduced(w, l);
    for (Letter l : power(Word{t}, term.exponent))
      push_reduced(w, l);
  }
  p.add_relator(w, "equation");
  return p;
}

} // namespace grpeq
