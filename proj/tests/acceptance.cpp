// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli_cases.hpp"
#include "group_oracles.hpp"
#include "grpeq/finite_solver.hpp"
#include "grpeq/freegroup.hpp"
#include "grpeq/up.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace grpeq;

namespace {

// TOLERANCES AND CAPS

constexpr int rewrite_trials_per_pair = 200;   // 6 (G, T) pairs
constexpr double rewrite_seconds = 10.0;
constexpr int min_labels = 10;
constexpr int cyclic_instances = 100;
constexpr double normal_form_seconds = 60.0;
constexpr int up_trials = 1000;
constexpr int search_radius = 3;
constexpr int search_max_size = 14;
constexpr std::int64_t search_budget_ms = 10 * 60 * 1000;
constexpr int torsion_radius = 4;
constexpr int power_max_len = 8;
constexpr int sweep_max_degree = 12;
constexpr std::int64_t sweep_budget_ms = 2000;  // per equation
constexpr int fuzz_inputs = 10000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<void(Verdict&)>& body) {
  Verdict v;
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " unexpected exception: " << e.what();
  }
  failures += !v.pass;
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << id << " " << title << ":" << v.detail.str()
            << std::endl;
}

GroupId c3() { return cyclic_group(3); }

std::vector<std::pair<GroupId, GroupId>> rewrite_pairs() {
  std::vector<std::pair<GroupId, GroupId>> out;
  for (GroupId g : {free_group({"a", "b"}), c3()})
    for (GroupId t : {free_abelian(2), free_abelian(3), free_group({"x", "y"})})
      out.emplace_back(g, t);
  return out;
}

// 1

void rewrite_soundness(Verdict& v) {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> npairs(1, 6);
  int total = 0, bad = 0;
  auto t0 = Clock::now();
  for (const auto& [g, t] : rewrite_pairs())
    for (int i = 0; i < rewrite_trials_per_pair; ++i) {
      auto ge = fixtures::random_generalized(g, t, rng, npairs(rng), 2);
      RewrittenEquation re = coset_rewrite(ge);
      ++total;
      bad += !(re.expansion() == ge.word() && oracle::expansion(re) == ge.word());
    }
  double s = seconds_since(t0);
  v.pass = bad == 0 && total >= 1000 && s < rewrite_seconds;
  v.detail << " " << total << " equations, " << bad << " expansion mismatches, " << s
           << " s (limit " << rewrite_seconds << " s)";
}

// 2

void conjugation_consistency(Verdict& v) {
  std::mt19937 rng(202);
  std::uniform_int_distribution<int> npairs(1, 6);
  int equations = 0, labels = 0, bad = 0, too_few = 0, rejected = 0;
  for (const auto& [g, t] : rewrite_pairs())
    for (int i = 0; i < rewrite_trials_per_pair; ++i) {
      auto ge = fixtures::random_generalized(g, t, rng, npairs(rng), 2);
      RewrittenEquation re = coset_rewrite(ge);
      CosetSpace cs(t, re.t);
      if (t->kind() == GroupKind::free) {
        // <t> is never normal in a free group of rank 2
        try {
          auto xy = t->generators();
          conjugate_family(re, {cs.rep(xy[0]), cs.rep(xy[1])});
        } catch (const PreconditionError&) {
          ++rejected;
          continue;
        }
        ++bad;
        continue;
      }
      std::vector<GroupElement> ys;
      for (int tries = 0; tries < 200 && static_cast<int>(ys.size()) < min_labels; ++tries) {
        GroupElement y = cs.rep(fixtures::random_element(t, rng, 4 + tries / 8));
        if (std::find(ys.begin(), ys.end(), y) == ys.end())
          ys.push_back(y);
      }
      too_few += static_cast<int>(ys.size()) < min_labels;
      auto fam = conjugate_family(re, ys);
      const auto& amb = as_free_product(*ge.ambient());
      ++equations;
      for (size_t k = 0; k < ys.size(); ++k) {
        GroupElement cy = amb.inject(1, ys[k]);
        ++labels;
        bad += !(fam[k].expansion() == conj(re.expansion(), cy) &&
                 oracle::expansion(fam[k]) == conj(ge.word(), cy));
      }
    }
  v.pass = bad == 0 && too_few == 0 && equations > 0;
  v.detail << " " << equations << " equations over Z^2 and Z^3, " << labels << " labels (>= "
           << min_labels << " distinct each), " << bad << " mismatches; " << rejected
           << " free(2) cases rejected as non-normal";
}

// 3

long long exponent_of_s(const GroupElement& x) {
  long long k = 0;
  for (Letter l : x.as<FreeWord>().letters) k += l > 0 ? 1 : -1;
  return k;
}

void cyclic_coincidence(Verdict& v) {
  std::mt19937 rng(303);
  std::uniform_int_distribution<int> npairs(1, 5), which(0, 1);
  GroupId s = free_group({"s"});
  GroupId gs[] = {free_group({"a", "b"}), c3()};
  int agree = 0, unimodular = 0;
  for (int i = 0; i < cyclic_instances; ++i) {
    auto ge = fixtures::random_generalized(gs[which(rng)], s, rng, npairs(rng), 2);
    long long sigma = 0;
    for (const auto& p : ge.pairs()) sigma += exponent_of_s(p.t);
    bool expected = std::llabs(sigma) == 1;
    UnimodularVerdict uv = unimodular_verdict(ge);
    OrdinaryReduction red = reduce_to_ordinary(ge, AmbientChoice::cyclic);
    bool ordinary = classify(red.equation).kind == EquationKind::unimodular;
    Tri want = expected ? Tri::yes : Tri::no;
    agree += uv.overall == want && ordinary == expected;
    unimodular += expected;
  }
  v.pass = agree == cyclic_instances;
  v.detail << " " << agree << "/" << cyclic_instances << " agree (" << unimodular
           << " with |sigma| = 1)";
}

// 4

void normal_form(Verdict& v) {
  fixtures::SplitFree sf;
  int checked = 0, mismatched = 0, property_failures = 0;
  auto t0 = Clock::now();
  for (int len = 1; len <= 6; ++len)
    for (const auto& w : oracle::reduced_words(3, len)) {
      long long sigma = 0;
      for (int l : w)
        if (std::abs(l) == 3)
          sigma += l > 0 ? 1 : -1;
      if (std::llabs(sigma) != 1)
        continue;
      Equation e = sf.equation(w);
      if (is_conjugate_to_constant(e.word(), std::set<int>{0, 2}))
        continue;
      NormalForm nf = normal_form_6(e, {0});
      long long m = 0, n = 0;
      if (!nf.length_one()) {
        const Form6& f = std::get<Form6>(nf.form);
        m = f.m;
        n = f.n;
        property_failures += !(f.property1 && f.property2);
      }
      property_failures += !nf.expansion_verified;
      auto best = oracle::normal_form_minimum(sigma == 1 ? w : oracle::inverse(w));
      ++checked;
      mismatched += !best || best->m != m || best->n != n;
    }
  double s = seconds_since(t0);
  v.pass = mismatched == 0 && property_failures == 0 && checked > 0 && s < normal_form_seconds;
  v.detail << " " << checked << " unimodular equations of length <= 6, " << mismatched
           << " (m, n) mismatches, " << property_failures << " property failures, " << s
           << " s (limit " << normal_form_seconds << " s)";
}

// 5

ElementSet random_set(const GroupId& g, std::mt19937& rng, int spread) {
  std::uniform_int_distribution<int> n(2, 5);
  size_t want = static_cast<size_t>(n(rng));
  if (auto order = g->size())
    want = std::min<size_t>(want, *order);
  ElementSet s{fixtures::random_element(g, rng, spread)};
  while (s.size() < want) {
    s.push_back(fixtures::random_element(g, rng, spread));
    s = normalized_set(s);
  }
  return s;
}

bool census_laws(const ElementSet& x, const ElementSet& y) {
  UPReport r = up_check(x, y);
  UPReport d = up_check(inverse_set(y), inverse_set(x));
  return r.multiplicity_total() == x.size() * y.size() &&
         static_cast<int>(r.unique_elements.size()) == oracle::unique_count(x, y) &&
         d.unique_elements == inverse_set(r.unique_elements);
}

void up_z2(Verdict& v) {
  std::mt19937 rng(505);
  GroupId z2 = free_abelian(2);
  int bound = 0, strong = 0;
  for (int i = 0; i < up_trials; ++i) {
    ElementSet x = random_set(z2, rng, 3), y = random_set(z2, rng, 3);
    StrojnowskiCheck s = strojnowski_check(x, y);
    bound += s.checked && s.bound_holds && s.unique_count >= 2 &&
             static_cast<int>(s.unique_count) == oracle::unique_count(x, y);
    strong += strong_up_check(x, y).holds;
  }
  v.pass = bound == up_trials && strong == up_trials;
  v.detail << " " << up_trials << " trials, bound held " << bound << ", strong UP held "
           << strong;
}

void up_klein(Verdict& v) {
  GroupId k = klein_four();
  ElementSet all = k->elements();
  UPReport r = up_check(all, all);
  UP4 u = up4_check(all, all, all, all);
  auto imp = verify_up4_implies_strong(all, all);
  v.pass = r.unique_elements.empty() && oracle::unique_count(all, all) == 0 && !u.holds &&
           u.quadruples == 256 && imp.status == ImplicationStatus::confirmed;
  v.detail << " unique elements " << r.unique_elements.size() << ", UP4 "
           << (u.holds ? "holds" : "fails") << " over " << u.quadruples << " quadruples, implication "
           << implication_name(imp.status);
}

void up_laws(Verdict& v) {
  std::mt19937 rng(507);
  std::vector<GroupId> groups = {free_abelian(2), free_group({"a", "b"}), dihedral_group(5),
                                 klein_four(), fours_group()};
  int trials = 0, ok = 0;
  for (const auto& g : groups)
    for (int i = 0; i < up_trials / 4; ++i) {
      ElementSet x = random_set(g, rng, 3), y = random_set(g, rng, 3);
      ++trials;
      ok += census_laws(x, y);
    }
  v.pass = ok == trials;
  v.detail << " " << ok << "/" << trials << " trials over Z^2, free(2), D5, Klein, fours";
}

// 6

void fours(Verdict& v) {
  GroupId f = fours_group();
  auto gens = f->generators();
  GroupElement a = gens[0], b = gens[1];
  bool rel1 = (inv(a) * b * b * a * b * b).is_identity();
  bool rel2 = (inv(b) * a * a * b * a * a).is_identity();
  // every square lies in the translation lattice Z^3, so an element of
  // finite order would have x^2 = 1
  auto elements = ball(f, torsion_radius, gens);
  int torsion = 0;
  for (const auto& x : elements) {
    if (x.is_identity())
      continue;
    GroupElement sq = x * x;
    const auto& p = sq.as<AffinePair>();
    bool translation = p.sign[0] == 1 && p.sign[1] == 1 && p.sign[2] == 1;
    torsion += sq.is_identity() || !translation || element_order(x).is_finite();
  }
  auto t0 = Clock::now();
  NonUPSearch s = search_nonup_witness(f, search_radius, search_max_size, search_budget_ms);
  double secs = seconds_since(t0);
  bool search_ok = true;
  v.detail << " relations " << (rel1 && rel2 ? "verify" : "FAIL") << ", " << elements.size()
           << " elements in the radius-" << torsion_radius << " ball with " << torsion
           << " torsion; search " << search_status_name(s.status) << " in " << secs << " s ("
           << s.nodes << " nodes, ball " << s.ball_size << ")";
  if (s.status == SearchStatus::found) {
    auto searched = ball(f, search_radius, gens);
    bool inside = std::all_of(s.witness.begin(), s.witness.end(), [&](const GroupElement& x) {
      return std::find(searched.begin(), searched.end(), x) != searched.end();
    });
    int unique = oracle::unique_count(s.witness, s.witness);
    search_ok = inside && unique == 0 && static_cast<int>(s.witness.size()) <= search_max_size;
    v.detail << ", witness of size " << s.witness.size() << " with " << unique
             << " unique products in S*S by naive census";
  } else {
    v.detail << ", no witness within radius " << search_radius << " and size "
             << search_max_size;
  }
  v.pass = rel1 && rel2 && torsion == 0 && search_ok;
}

// 7

void proper_powers(Verdict& v) {
  auto table = oracle::proper_power_table(2, power_max_len);
  int checked = 0, bad = 0, proper = 0;
  for (int len = 1; len <= power_max_len; ++len)
    for (const auto& w : oracle::reduced_words(2, len)) {
      auto it = table.find(w);
      int expected = it == table.end() ? 1 : it->second;
      auto d = proper_power(w);
      ++checked;
      proper += expected >= 2;
      bad += d.exponent != expected || power(d.conjugated_root, d.exponent) != w;
    }
  v.pass = bad == 0;
  v.detail << " " << checked << " reduced words of length <= " << power_max_len << ", " << proper
           << " proper powers, " << bad << " mismatches";
}

// 8

std::vector<GroupId> sweep_groups() {
  std::vector<GroupId> out;
  for (int n = 1; n <= 6; ++n) out.push_back(cyclic_group(n));
  out.push_back(klein_four());
  out.push_back(dihedral_group(3));
  return out;
}

void finite_solver(Verdict& v) {
  GroupId c = perm_group(3, {Permutation{{1, 2, 0}}});
  Equation root(c, {{c->parse("(1 3 2)"), 2}});
  FiniteSolve s = solve_over_finite(root, 3);
  bool first = s.certificate && s.certificate->degree == 3 && verify_certificate(*s.certificate, root) &&
               compose(s.certificate->solution, s.certificate->solution) == Permutation{{1, 2, 0}};
  v.detail << " t^2 = (1 2 3): "
           << (s.certificate ? format_cycles(s.certificate->solution) : std::string("none"))
           << (first ? " verified in S3" : " NOT verified");

  // all t-patterns of length 1 and 3 with exponent sum +-1
  std::vector<std::vector<int>> patterns = {{1}, {-1}};
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int d : {1, -1})
        if (std::abs(a + b + d) == 1)
          patterns.push_back({a, b, d});
  int equations = 0, solved = 0, failed_verify = 0, exhausted = 0, budget = 0, max_degree = 0;
  auto t0 = Clock::now();
  for (const auto& g : sweep_groups()) {
    auto els = g->elements();
    for (const auto& p : patterns) {
      std::vector<size_t> idx(p.size(), 0);
      for (;;) {
        std::vector<Term> terms;
        for (size_t i = 0; i < p.size(); ++i) terms.push_back({els[idx[i]], p[i]});
        Equation e(g, terms);
        FiniteSolve r = solve_over_finite(e, sweep_max_degree, sweep_budget_ms);
        ++equations;
        if (r.certificate) {
          ++solved;
          failed_verify += !verify_certificate(*r.certificate, e);
          max_degree = std::max(max_degree, r.certificate->degree);
        } else if (r.budget_hit) {
          ++budget;
        } else {
          ++exhausted;
        }
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == els.size()) idx[k++] = 0;
        if (k == idx.size())
          break;
      }
    }
  }
  v.pass = first && failed_verify == 0;
  v.detail << "; sweep over 8 groups of order <= 6: " << equations << " unimodular equations, "
           << solved << " solved (max degree " << max_degree << "), " << failed_verify
           << " certificates failing re-verification, " << exhausted
           << " exhausted through degree " << sweep_max_degree << ", " << budget
           << " stopped by the " << sweep_budget_ms << " ms budget, " << seconds_since(t0)
           << " s";
}

// 9

void cli_stability(Verdict& v) {
  int stable = 0, matching = 0, verified = 0;
  auto golden = cases::golden_cases();
  for (const auto& g : golden) {
    auto first = cases::run_case(g), second = cases::run_case(g);
    std::string text = cli::render_structured(first.report);
    stable += text == cli::render_structured(second.report) && first.exit_code == g.exit_code;
    matching += text == cases::slurp(cases::golden_path(g));
    verified += cli::run("verify", {}, {}, text).exit_code == cli::exit_ok;
  }
  cases::Fuzzer fz(9);
  int structured = 0, errors = 0;
  for (int i = 0; i < fuzz_inputs; ++i) {
    auto [command, script] = fz.next();
    auto o = cli::run(command, {}, {}, script);
    structured += cases::well_formed(o);
    errors += o.exit_code == cli::exit_error;
  }
  int n = static_cast<int>(golden.size());
  v.pass = stable == n && matching == n && verified == n && structured == fuzz_inputs;
  v.detail << " " << stable << "/" << n << " golden reports stable across two runs, " << matching
           << " match the stored files, " << verified << " re-verify; " << structured << "/"
           << fuzz_inputs << " fuzz inputs gave structured reports (" << errors << " errors)";
}

} // namespace

int main() {
  report("1", "coset-rewrite soundness", rewrite_soundness);
  report("2", "conjugation consistency", conjugation_consistency);
  report("3", "infinite cyclic coincidence", cyclic_coincidence);
  report("4", "normal form (m, n) minimality", normal_form);
  report("5a", "Z^2 unique products and strong UP", up_z2);
  report("5b", "Klein four full sets", up_klein);
  report("5c", "census conservation and inversion duality", up_laws);
  report("6", "fours group", fours);
  report("7", "proper powers", proper_powers);
  report("8", "finite solver", finite_solver);
  report("9", "CLI golden stability and fuzzing", cli_stability);
  return failures == 0 ? 0 : 1;
}
