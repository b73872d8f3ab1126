#include "grpeq/generalized.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace grpeq {

// GENERALIZED EQUATION

GeneralizedEquation::GeneralizedEquation(GroupId g, GroupId t, std::vector<GPair> pairs)
    : g_(std::move(g)), t_(std::move(t)), pairs_(std::move(pairs)) {
  require(!pairs_.empty(), "generalized equation without pairs");
  for (const GPair& p : pairs_) {
    if (!same_group(p.g.group(), *g_))
      throw GroupMismatch("coefficient " + p.g.to_string() + " is not in " + g_->description());
    if (!same_group(p.t.group(), *t_))
      throw GroupMismatch("variable " + p.t.to_string() + " is not in " + t_->description());
  }
  ambient_ = free_product({g_, t_});
}

GroupElement GeneralizedEquation::from_g(const GroupElement& g) const {
  return as_free_product(*ambient_).inject(0, g);
}
GroupElement GeneralizedEquation::from_t(const GroupElement& t) const {
  return as_free_product(*ambient_).inject(1, t);
}

std::set<int> GeneralizedEquation::g_factors() const {
  auto [lo, hi] = as_free_product(*ambient_).operand_range(0);
  std::set<int> s;
  for (int i = lo; i < hi; ++i) s.insert(i);
  return s;
}

std::set<int> GeneralizedEquation::t_factors() const {
  auto [lo, hi] = as_free_product(*ambient_).operand_range(1);
  std::set<int> s;
  for (int i = lo; i < hi; ++i) s.insert(i);
  return s;
}

GroupElement GeneralizedEquation::word() const {
  GroupElement w = ambient_->identity();
  for (const GPair& p : pairs_)
    w = w * from_g(p.g) * from_t(p.t);
  return w;
}

std::string GeneralizedEquation::to_string() const {
  std::string s;
  for (const GPair& p : pairs_)
    s += "(" + p.g.to_string() + ", " + p.t.to_string() + ") ";
  return s + "= 1";
}

GroupElement total_product(const GeneralizedEquation& ge) {
  GroupElement t = ge.vargroup()->identity();
  for (const GPair& p : ge.pairs())
    t = t * p.t;
  return t;
}

bool is_nontrivial(const GeneralizedEquation& ge) {
  return !is_conjugate_to_constant(ge.word(), ge.g_factors());
}

// COSETS

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace

bool CosetSpace::supports(const Group& T) {
  return T.kind() == GroupKind::free || T.kind() == GroupKind::free_abelian ||
         (T.size() && *T.size() <= 4096);
}

CosetSpace::CosetSpace(GroupId T, GroupElement t) : T_(std::move(T)), t_(std::move(t)) {
  if (!supports(*T_))
    throw PreconditionError("no coset representatives for variable group " + T_->description());
  if (!same_group(t_.group(), *T_))
    throw GroupMismatch("cyclic generator is not in " + T_->description());
  if (T_->kind() == GroupKind::free) {
    CyclicSplit s = cyclic_split(t_.as<FreeWord>().letters);
    prefix_ = s.conjugator;
    core_ = s.core;
  } else if (T_->kind() != GroupKind::free_abelian) {
    GroupElement x = T_->identity();
    do {
      powers_.push_back(x);
      x = x * t_;
    } while (!x.is_identity());
  }
}

std::optional<long long> CosetSpace::log(const GroupElement& x) const {
  if (T_->kind() == GroupKind::free_abelian) {
    const auto& v = t_.as<IntVector>().coords;
    const auto& c = x.as<IntVector>().coords;
    size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size())
      return std::all_of(c.begin(), c.end(), [](long long a) { return a == 0; })
                 ? std::optional<long long>(0)
                 : std::nullopt;
    if (c[p] % v[p] != 0)
      return std::nullopt;
    long long k = c[p] / v[p];
    for (size_t i = 0; i < v.size(); ++i)
      if (c[i] != k * v[i])
        return std::nullopt;
    return k;
  }
  if (T_->kind() == GroupKind::free) {
    const Word& w = x.as<FreeWord>().letters;
    if (w.empty())
      return 0;
    if (core_.empty())
      return std::nullopt;
    Word y = multiply(multiply(inverse(prefix_), w), prefix_);
    if (y.size() % core_.size() != 0)
      return std::nullopt;
    long long k = static_cast<long long>(y.size() / core_.size());
    if (y == power(core_, k)) return k;
    if (y == power(core_, -k)) return -k;
    return std::nullopt;
  }
  for (size_t k = 0; k < powers_.size(); ++k)
    if (powers_[k] == x)
      return static_cast<long long>(k);
  return std::nullopt;
}

GroupElement CosetSpace::rep(const GroupElement& s) const {
  if (!same_group(s.group(), *T_))
    throw GroupMismatch("coset of an element outside " + T_->description());
  if (T_->kind() == GroupKind::free_abelian) {
    const auto& v = t_.as<IntVector>().coords;
    std::vector<long long> c = s.as<IntVector>().coords;
    size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size())
      return s;
    long long k = floor_div(c[p], std::llabs(v[p])) * (v[p] > 0 ? 1 : -1);
    for (size_t i = 0; i < v.size(); ++i)
      c[i] -= k * v[i];
    return make_vector(T_, c);
  }
  if (T_->kind() == GroupKind::free) {
    const Word& w = s.as<FreeWord>().letters;
    if (core_.empty())
      return s;
    long long bound =
        static_cast<long long>((2 * w.size() + 2 * prefix_.size()) / core_.size()) + 1;
    Word best = w;
    const Word& tw = t_.as<FreeWord>().letters;
    for (long long k = -bound; k <= bound; ++k) {
      Word cand = multiply(w, power(tw, k));
      if (shortlex_less(cand, best))
        best = cand;
    }
    return make_free(T_, best);
  }
  GroupElement best = s;
  for (const auto& p : powers_) {
    GroupElement c = s * p;
    if (c < best)
      best = c;
  }
  return best;
}

std::pair<GroupElement, long long> CosetSpace::decompose(const GroupElement& s) const {
  GroupElement c = rep(s);
  auto k = log(inv(c) * s);
  if (!k)
    fail("coset decomposition: representative not in the coset");
  return {c, *k};
}

std::optional<int> CosetSpace::conjugation_sign(const GroupElement& c) const {
  GroupElement x = conj(t_, c);
  if (x == t_)
    return 1;
  if (x == inv(t_))
    return -1;
  return std::nullopt;
}

// REWRITING

std::vector<GroupElement> RewrittenEquation::cosets() const {
  std::set<GroupElement> s;
  for (const auto& term : terms)
    s.insert(term.coset);
  return {s.begin(), s.end()};
}

GroupElement RewrittenEquation::expansion() const {
  const auto& fp = as_free_product(*ambient);
  GroupElement out = fp.inject(1, pow(t, sign));
  for (const auto& term : terms) {
    GroupElement s = fp.inject(1, term.coset * pow(t, term.k));
    out = out * inv(s) * fp.inject(0, term.g) * s;
  }
  return out;
}

namespace {

void push_term(std::vector<RewriteTerm>& terms, RewriteTerm t) {
  if (!terms.empty() && terms.back().coset == t.coset && terms.back().k == t.k) {
    terms.back().g = terms.back().g * t.g;
    if (terms.back().g.is_identity())
      terms.pop_back();
  } else if (!t.g.is_identity()) {
    terms.push_back(std::move(t));
  }
}

} // namespace

RewrittenEquation coset_rewrite(const GeneralizedEquation& ge) {
  GroupElement t = total_product(ge);
  if (t.is_identity())
    throw PreconditionError("coset_rewrite: the product of the t_i is the identity");
  CosetSpace cs(ge.vargroup(), t);
  RewrittenEquation re;
  re.group = ge.group();
  re.vargroup = ge.vargroup();
  re.ambient = ge.ambient();
  re.t = t;
  re.label = ge.vargroup()->identity();
  const auto& pairs = ge.pairs();
  std::vector<GroupElement> suffix(pairs.size());
  GroupElement s = ge.vargroup()->identity();
  for (size_t i = pairs.size(); i-- > 0;) {
    s = pairs[i].t * s;
    suffix[i] = s;
  }
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [c, k] = cs.decompose(suffix[i]);
    push_term(re.terms, {pairs[i].g, c, k});
  }
  if (re.expansion() != ge.word())
    fail("coset_rewrite: expansion does not reproduce the equation");
  return re;
}

std::vector<RewrittenEquation> conjugate_family(const RewrittenEquation& re,
                                                const std::vector<GroupElement>& xs) {
  CosetSpace cs(re.vargroup, re.t);
  std::vector<RewrittenEquation> out;
  for (const GroupElement& x : xs) {
    GroupElement cx = cs.rep(x);
    auto eps = cs.conjugation_sign(cx);
    if (!eps)
      throw PreconditionError("conjugate_family: <t> is not normal; " + cx.to_string() +
                              " conjugates t outside <t>");
    RewrittenEquation w;
    w.group = re.group;
    w.vargroup = re.vargroup;
    w.ambient = re.ambient;
    w.t = re.t;
    w.label = mul(re.label, cx);
    w.sign = re.sign * *eps;
    for (const auto& term : re.terms) {
      GroupElement e = term.coset * pow(re.t, term.k) * cx;
      GroupElement cf = cs.rep(e);
      auto l = cs.log(inv(cf) * e);
      if (!l)
        fail("conjugate_family: no exponent solves the power equation");
      push_term(w.terms, {term.g, cf, *l});
    }
    out.push_back(std::move(w));
  }
  return out;
}

// VERDICT

std::string_view tri_name(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "?";
}

namespace {

// Products with exactly one factorization in X * Y inside T/<t>, tested
// with canonical representatives.
bool quotient_strong_up_fails(const CosetSpace& cs, const std::vector<GroupElement>& xs,
                              const std::vector<GroupElement>& ys) {
  std::map<GroupElement, std::vector<GroupElement>> census;
  for (const auto& x : xs)
    for (const auto& y : ys)
      census[cs.rep(x * y)].push_back(y);
  std::set<GroupElement> unique_y;
  for (const auto& [p, f] : census)
    if (f.size() == 1)
      unique_y.insert(f[0]);
  return unique_y.size() < 2;
}

} // namespace

UnimodularVerdict unimodular_verdict(const GeneralizedEquation& ge) {
  UnimodularVerdict v;
  const GroupId& T = ge.vargroup();
  GroupElement t = total_product(ge);
  v.order = element_order(t);
  v.order_infinite = v.order.is_infinite() ? Tri::yes : v.order.is_finite() ? Tri::no : Tri::unknown;

  if (!CosetSpace::supports(*T)) {
    v.strong_up_reason = "no coset machinery for " + T->description();
    v.weak_reason = v.strong_up_reason;
    v.overall = v.order_infinite == Tri::no ? Tri::no : Tri::unknown;
    return v;
  }
  CosetSpace cs(T, t);

  v.subgroup_normal = Tri::yes;
  for (const auto& s : T->generators()) {
    if (!cs.log(conj(t, s)) || !cs.log(conj(t, inv(s)))) {
      v.subgroup_normal = Tri::no;
      v.normal_witness = s;
      break;
    }
  }

  if (v.subgroup_normal == Tri::yes) {
    if (T->kind() == GroupKind::free_abelian) {
      const auto& c = t.as<IntVector>().coords;
      long long g = 0;
      for (long long a : c) g = std::gcd(g, std::llabs(a));
      if (g == 0 || g == 1) {
        v.quotient_strong_up = Tri::yes;
        v.strong_up_reason = "quotient is free abelian (lexicographically ordered)";
        v.weak_torsion_free = Tri::yes;
        v.weak_reason = v.strong_up_reason;
      } else {
        std::vector<long long> base(c.size());
        for (size_t i = 0; i < c.size(); ++i) base[i] = c[i] / g;
        for (long long j = 0; j < g; ++j) {
          std::vector<long long> e(c.size());
          for (size_t i = 0; i < c.size(); ++i) e[i] = j * base[i];
          v.witness_x.push_back(cs.rep(make_vector(T, e)));
        }
        v.witness_y = v.witness_x;
        v.weak_torsion_free = Tri::no;
        v.weak_reason = "quotient has torsion of order " + std::to_string(g);
      }
    } else if (T->kind() == GroupKind::free) {
      const Word& w = t.as<FreeWord>().letters;
      int rank = static_cast<int>(T->generators().size());
      if (w.empty()) {
        v.quotient_strong_up = Tri::yes;
        v.strong_up_reason = "quotient is the free group itself (bi-orderable)";
        v.weak_torsion_free = Tri::yes;
        v.weak_reason = v.strong_up_reason;
      } else if (rank == 1) {
        long long k = static_cast<long long>(w.size());
        if (k == 1) {
          v.quotient_strong_up = Tri::yes;
          v.strong_up_reason = "quotient is trivial";
          v.weak_torsion_free = Tri::yes;
          v.weak_reason = v.strong_up_reason;
        } else {
          for (long long j = 0; j < k; ++j)
            v.witness_x.push_back(cs.rep(make_free(T, Word(j, 1))));
          v.witness_y = v.witness_x;
          v.weak_torsion_free = Tri::no;
          v.weak_reason = "quotient is cyclic of order " + std::to_string(k);
        }
      }
    } else {
      // finite variable group: the quotient is finite
      std::set<GroupElement> reps;
      for (const auto& e : T->elements()) reps.insert(cs.rep(e));
      if (reps.size() == 1) {
        v.quotient_strong_up = Tri::yes;
        v.strong_up_reason = "quotient is trivial";
        v.weak_torsion_free = Tri::yes;
        v.weak_reason = v.strong_up_reason;
      } else {
        v.witness_x.assign(reps.begin(), reps.end());
        v.witness_y = v.witness_x;
        v.weak_torsion_free = Tri::no;
        v.weak_reason = "quotient is finite of order " + std::to_string(reps.size());
      }
    }
    if (!v.witness_x.empty()) {
      if (quotient_strong_up_fails(cs, v.witness_x, v.witness_y)) {
        v.quotient_strong_up = Tri::no;
        v.strong_up_reason = "finite subgroup X = Y of the quotient has no two unique products";
      } else {
        v.witness_x.clear();
        v.witness_y.clear();
      }
    }
  } else {
    v.strong_up_reason = "<t> is not normal, the quotient is not a group";
    v.weak_reason = v.strong_up_reason;
  }

  Tri parts[] = {v.order_infinite, v.subgroup_normal, v.quotient_strong_up};
  if (std::any_of(std::begin(parts), std::end(parts), [](Tri x) { return x == Tri::no; }))
    v.overall = Tri::no;
  else if (std::all_of(std::begin(parts), std::end(parts), [](Tri x) { return x == Tri::yes; }))
    v.overall = Tri::yes;
  else
    v.overall = Tri::unknown;
  return v;
}

// PRESENTATIONS

namespace {

struct CopyTable {
  std::vector<GroupElement> cosets;           // sorted
  std::map<GroupElement, std::vector<int>> letters;
};

void add_copies(Presentation& p, CopyTable& table, const Group& G,
                const std::vector<GroupElement>& cosets, const std::string& tag) {
  auto bp = G.presentation();
  if (!bp)
    throw PreconditionError("backend without known presentation: " + G.description());
  for (const auto& c : cosets) {
    if (table.letters.count(c))
      continue;
    size_t idx = table.cosets.size();
    table.cosets.push_back(c);
    std::vector<int> ls;
    for (const auto& n : bp->generators)
      ls.push_back(p.add_generator(n + ".x" + std::to_string(idx), G.description(),
                                   tag + " copy for coset " + c.to_string()));
    table.letters[c] = ls;
    for (const Word& r : bp->relators) {
      Word w;
      for (Letter l : r) w.push_back(l > 0 ? ls[l - 1] : -ls[-l - 1]);
      p.add_relator(w, "relator of copy x" + std::to_string(idx));
    }
  }
}

Word copy_letters(const GroupElement& g, const std::vector<int>& ls) {
  Word w;
  for (Letter l : g.group().word_of(g.payload()))
    push_reduced(w, l > 0 ? ls[l - 1] : -ls[-l - 1]);
  return w;
}

Word rewritten_relator(const RewrittenEquation& w, const CopyTable& table, int tt) {
  Word r = power(Word{tt}, w.sign);
  for (const auto& term : w.terms) {
    for (Letter l : power(Word{tt}, -term.k)) push_reduced(r, l);
    for (Letter l : copy_letters(term.g, table.letters.at(term.coset))) push_reduced(r, l);
    for (Letter l : power(Word{tt}, term.k)) push_reduced(r, l);
  }
  return r;
}

std::vector<GroupElement> sorted_unique(std::vector<GroupElement> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

} // namespace

Presentation emit_KY(const RewrittenEquation& re, const std::vector<GroupElement>& ys,
                     const std::string& witness_var) {
  require(!ys.empty(), "emit_KY: empty Y");
  CosetSpace cs(re.vargroup, re.t);
  auto family = conjugate_family(re, ys);
  std::vector<GroupElement> x1y;
  for (const auto& x : re.cosets())
    for (const auto& y : ys)
      x1y.push_back(cs.rep(x * y));
  x1y = sorted_unique(x1y);
  Presentation p;
  CopyTable table;
  add_copies(p, table, *re.group, x1y, "G");
  int tt = p.add_generator(witness_var, "", "image of t");
  for (size_t i = 0; i < family.size(); ++i)
    p.add_relator(rewritten_relator(family[i], table, tt), "w_y for y = " + ys[i].to_string());
  return p;
}

Presentation emit_solution_group(const RewrittenEquation& re, const std::vector<GroupElement>& ys,
                                 int window, const std::string& witness_var) {
  require(window >= 0, "emit_solution_group: negative window");
  require(!ys.empty(), "emit_solution_group: empty Y");
  const GroupId& T = re.vargroup;
  CosetSpace cs(T, re.t);
  auto family = conjugate_family(re, ys);
  auto tpres = T->presentation();
  if (!tpres)
    throw PreconditionError("backend without known presentation: " + T->description());

  std::vector<GroupElement> x1y;
  for (const auto& x : re.cosets())
    for (const auto& y : ys)
      x1y.push_back(cs.rep(x * y));
  x1y = sorted_unique(x1y);

  std::vector<GroupElement> interior;
  auto tgens = T->generators();
  if (window >= 1) {
    auto b = ball(T, window - 1, tgens);
    for (const auto& z : x1y)
      for (const auto& e : b)
        interior.push_back(cs.rep(z * e));
    interior = sorted_unique(interior);
  }
  std::vector<GroupElement> boundary;
  for (const auto& x : interior)
    for (const auto& y : tgens) {
      GroupElement f = cs.rep(x * y);
      if (!std::binary_search(interior.begin(), interior.end(), f))
        boundary.push_back(f);
    }
  std::vector<GroupElement> all = x1y;
  all.insert(all.end(), interior.begin(), interior.end());
  all.insert(all.end(), boundary.begin(), boundary.end());
  all = sorted_unique(all);

  Presentation p;
  for (const auto& n : tpres->generators)
    p.add_generator(n, T->description(), "generator of the variable group");
  for (const Word& r : tpres->relators)
    p.add_relator(r, "relator of the variable group");
  CopyTable table;
  add_copies(p, table, *re.group, all, "G");
  int tt = p.add_generator(witness_var, "", "image of t");
  for (size_t i = 0; i < family.size(); ++i)
    p.add_relator(rewritten_relator(family[i], table, tt), "w_y for y = " + ys[i].to_string());

  if (window >= 1) {
    for (size_t yi = 0; yi < tgens.size(); ++yi) {
      int y = static_cast<int>(yi + 1);
      auto eps = cs.conjugation_sign(tgens[yi]);
      if (!eps)
        throw PreconditionError("emit_solution_group: <t> is not normal in " + T->description());
      p.add_relator({-y, tt, y, -*eps * tt}, "action on " + witness_var);
      for (const auto& x : interior) {
        auto [f, k] = cs.decompose(x * tgens[yi]);
        const auto& lx = table.letters.at(x);
        const auto& lf = table.letters.at(f);
        for (size_t gi = 0; gi < lx.size(); ++gi) {
          Word r{-y, lx[gi], y};
          for (Letter l : power(Word{tt}, -k)) push_reduced(r, l);
          push_reduced(r, -lf[gi]);
          for (Letter l : power(Word{tt}, k)) push_reduced(r, l);
          p.add_relator(r, "action on copy of coset " + x.to_string());
        }
      }
    }
  }
  Word tw{tt};
  for (Letter l : inverse(T->word_of(re.t.payload()))) push_reduced(tw, l);
  p.add_relator(tw, witness_var + " = t");
  return p;
}

// REDUCTION

std::string_view ambient_name(AmbientChoice c) {
  switch (c) {
    case AmbientChoice::free_product: return "free-product";
    case AmbientChoice::direct_product: return "direct-product";
    case AmbientChoice::cyclic: return "cyclic";
  }
  return "?";
}

OrdinaryReduction reduce_to_ordinary(const GeneralizedEquation& ge, AmbientChoice choice) {
  bool nontrivial = is_nontrivial(ge);
  bool in_t = is_conjugate_to_constant(ge.word(), ge.t_factors());
  std::vector<Term> terms;
  GroupId g1;
  if (choice == AmbientChoice::cyclic) {
    const GroupId& T = ge.vargroup();
    require(T->kind() == GroupKind::free && T->generators().size() == 1,
            "cyclic reduction needs an infinite cyclic variable group");
    g1 = ge.group();
    GroupElement pending = g1->identity();
    for (const GPair& p : ge.pairs()) {
      long long k = exponent_sums(p.t.as<FreeWord>().letters, 1)[0];
      pending = pending * p.g;
      if (k != 0) {
        terms.push_back({pending, k});
        pending = g1->identity();
      }
    }
    if (terms.empty()) {
      // constant equation g = 1, written as g t t^-1
      terms.push_back({pending, 1});
      terms.push_back({g1->identity(), -1});
    } else if (!pending.is_identity()) {
      terms.front().coefficient = pending * terms.front().coefficient;
    }
  } else {
    if (choice == AmbientChoice::free_product) {
      g1 = free_product({ge.group(), ge.vargroup()});
      const auto& fp = as_free_product(*g1);
      for (const GPair& p : ge.pairs()) {
        terms.push_back({fp.inject(0, p.g), -1});
        terms.push_back({fp.inject(1, p.t), 1});
      }
    } else {
      g1 = direct_product({ge.group(), ge.vargroup()});
      for (const GPair& p : ge.pairs()) {
        terms.push_back({make_components(g1, {p.g, ge.vargroup()->identity()}), -1});
        terms.push_back({make_components(g1, {ge.group()->identity(), p.t}), 1});
      }
    }
  }
  Equation e(g1, std::move(terms));
  OrdinaryReduction r{e, choice};
  r.source_nontrivial = nontrivial;
  r.result_nontrivial = !classify(e).trivial;
  r.source_in_conjugate_of_t = in_t && choice != AmbientChoice::cyclic;
  return r;
}

} // namespace grpeq
