#include "grpeq/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "grpeq/dsl.hpp"
#include "grpeq/finite_solver.hpp"

namespace grpeq::cli {

using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

// OPTIONS

struct Cap {
  const char* key;
  long long lo, hi;
};

constexpr Cap caps[] = {
    {"radius", 0, 6},      {"max_size", 1, 64},    {"max_len", 1, 12},
    {"window", 1, 64},     {"max_degree", 1, finite_solver_degree_cap},
    {"budget_ms", 1, 3600000},
};

void check_cap(const char* key, long long v) {
  for (const Cap& c : caps)
    if (std::string_view(c.key) == key && (v < c.lo || v > c.hi))
      throw ConfigError(std::string(key) + " must be in [" + std::to_string(c.lo) + ", " +
                        std::to_string(c.hi) + "], got " + std::to_string(v));
}

} // namespace

json Options::to_json() const {
  return json{{"radius", radius},       {"max_size", max_size},     {"max_len", max_len},
              {"window", window},       {"max_degree", max_degree}, {"budget_ms", budget_ms},
              {"h_factors", h_factors}};
}

Options Options::from_json(const json& j) { return from_json(j, Options{}); }

Options Options::from_json(const json& j, Options base) {
  if (!j.is_object())
    throw ConfigError("options must be a JSON object");
  auto get = [&](const char* key, auto& field) {
    if (!j.contains(key))
      return;
    const json& v = j.at(key);
    if (!v.is_number_integer())
      throw ConfigError(std::string("option ") + key + " must be an integer");
    field = v.get<std::decay_t<decltype(field)>>();
  };
  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known = {"radius", "max_size", "max_len", "window",
                                                "max_degree", "budget_ms", "h_factors"};
    if (!known.count(key))
      throw ConfigError("unknown option '" + key + "'");
  }
  get("radius", base.radius);
  get("max_size", base.max_size);
  get("max_len", base.max_len);
  get("window", base.window);
  get("max_degree", base.max_degree);
  get("budget_ms", base.budget_ms);
  if (j.contains("h_factors")) {
    const json& h = j.at("h_factors");
    if (!h.is_array() || !std::all_of(h.begin(), h.end(), [](const json& x) { return x.is_number_integer(); }))
      throw ConfigError("h_factors must be a list of integers");
    base.h_factors = h.get<std::vector<int>>();
  }
  base.validate();
  return base;
}

void Options::validate() const {
  check_cap("radius", radius);
  check_cap("max_size", max_size);
  check_cap("max_len", max_len);
  check_cap("window", window);
  check_cap("max_degree", max_degree);
  check_cap("budget_ms", budget_ms);
  for (int h : h_factors)
    if (h < 0 || h > 64)
      throw ConfigError("h_factors entry out of range: " + std::to_string(h));
}

Options config_from_env() {
  const char* path = std::getenv("GRPEQ_CONFIG");
  if (!path || !*path)
    return {};
  std::ifstream in(path);
  if (!in)
    throw ConfigError(std::string("cannot read config file ") + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config file ") + path + ": " + e.what());
  }
  return Options::from_json(j);
}

namespace {

// JSON HELPERS

std::string el(const GroupElement& x) { return x.to_string(); }

json els(const std::vector<GroupElement>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(el(x));
  return a;
}

json pair_list(const std::vector<std::pair<GroupElement, GroupElement>>& ps) {
  json a = json::array();
  for (const auto& [x, y] : ps) a.push_back(json::array({el(x), el(y)}));
  return a;
}

json presentation_json(const Presentation& p) {
  return json{{"structured", p.to_json()}, {"text", p.to_text()}};
}

std::string tri(Tri t) { return std::string(tri_name(t)); }

// ARGUMENTS

struct Context {
  const Session& session;
  const std::vector<std::string>& args;
  const Options& opt;
};

// Names of the declarations a command works on: explicit arguments, or the
// first declarations of the kind in script order.
std::vector<std::string> pick(const Context& c, DeclKind kind, size_t n, bool repeat_single = false) {
  std::vector<std::string> names;
  if (!c.args.empty()) {
    if (c.args.size() != n)
      throw UsageError("expected " + std::to_string(n) + " argument(s), got " +
                       std::to_string(c.args.size()));
    names = c.args;
  } else {
    names = c.session.names_of(kind);
    if (names.size() == 1 && repeat_single)
      names.resize(n, names.front());
    if (names.size() < n)
      throw UsageError("the script declares no " + std::string(decl_name(kind)) +
                       (n > 1 ? " pair" : "") + " to work on");
    names.resize(n);
  }
  return names;
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& name, DeclKind kind) {
  auto it = m.find(name);
  if (it == m.end())
    throw UsageError("no " + std::string(decl_name(kind)) + " named '" + name + "'");
  return it->second;
}

const Equation& equation_arg(const Context& c) {
  return lookup(c.session.equations, pick(c, DeclKind::equation, 1)[0], DeclKind::equation);
}

const GeneralizedEquation& generalized_arg(const Context& c) {
  return lookup(c.session.generalized, pick(c, DeclKind::generalized, 1)[0], DeclKind::generalized);
}

std::vector<ElementSet> set_args(const Context& c, size_t n) {
  std::vector<ElementSet> out;
  for (const auto& name : pick(c, DeclKind::set, n, true))
    out.push_back(lookup(c.session.sets, name, DeclKind::set));
  return out;
}

// RESULTS

struct Result {
  json body;
  bool falsified = false;
};

json equation_json(const Equation& e) {
  return json{{"text", e.to_string()}, {"group", e.group()->description()},
              {"variable", e.variable()}};
}

Result cmd_classify(const Context& c) {
  const Equation& e = equation_arg(c);
  Classification k = classify(e);
  return {json{{"equation", equation_json(e)},
               {"length", k.length},
               {"exponent_sum", k.exponent_sum},
               {"kind", std::string(kind_name(k.kind))},
               {"nontrivial", !k.trivial}}};
}

json rewritten_json(const RewrittenEquation& re) {
  json terms = json::array();
  for (const auto& t : re.terms)
    terms.push_back(json{{"g", el(t.g)}, {"coset", el(t.coset)}, {"k", t.k}});
  return json{{"label", el(re.label)},
              {"sign", re.sign},
              {"terms", terms},
              {"cosets", els(re.cosets())},
              {"expansion", el(re.expansion())}};
}

json generalized_json(const GeneralizedEquation& ge) {
  return json{{"text", ge.to_string()},
              {"group", ge.group()->description()},
              {"vargroup", ge.vargroup()->description()},
              {"total_product", el(total_product(ge))}};
}

Result cmd_rewrite(const Context& c) {
  const GeneralizedEquation& ge = generalized_arg(c);
  RewrittenEquation re = coset_rewrite(ge);
  bool ok = re.expansion() == ge.word();
  json r{{"equation", generalized_json(ge)}, {"rewritten", rewritten_json(re)},
         {"word", el(ge.word())}, {"expansion_verified", ok}};
  return {r, !ok};
}

// Coset labels: the cosets of the rewritten equation, then those of the
// generators of T and their inverses.
std::vector<GroupElement> coset_labels(const GeneralizedEquation& ge, const RewrittenEquation& re) {
  CosetSpace cs(ge.vargroup(), re.t);
  std::vector<GroupElement> out{ge.vargroup()->identity()};
  auto add = [&](const GroupElement& s) {
    GroupElement r = cs.rep(s);
    if (std::find(out.begin(), out.end(), r) == out.end())
      out.push_back(r);
  };
  for (const auto& x : re.cosets()) add(x);
  for (const auto& s : ge.vargroup()->generators()) {
    add(s);
    add(inv(s));
  }
  return out;
}

Result cmd_family(const Context& c) {
  const GeneralizedEquation& ge = generalized_arg(c);
  RewrittenEquation re = coset_rewrite(ge);
  auto labels = coset_labels(ge, re);
  auto fam = conjugate_family(re, labels);
  const auto& amb = as_free_product(*ge.ambient());
  json members = json::array();
  bool all = true;
  for (size_t i = 0; i < fam.size(); ++i) {
    json m = rewritten_json(fam[i]);
    bool ok = fam[i].expansion() == conj(re.expansion(), amb.inject(1, labels[i]));
    m["conjugation_verified"] = ok;
    all = all && ok;
    members.push_back(m);
  }
  return {json{{"equation", generalized_json(ge)}, {"family", members}, {"all_verified", all}},
          !all};
}

Result cmd_ky(const Context& c) {
  const GeneralizedEquation& ge = generalized_arg(c);
  RewrittenEquation re = coset_rewrite(ge);
  auto labels = coset_labels(ge, re);
  return {json{{"equation", generalized_json(ge)},
               {"labels", els(labels)},
               {"presentation", presentation_json(emit_KY(re, labels))}}};
}

Result cmd_solution_group(const Context& c) {
  const GeneralizedEquation& ge = generalized_arg(c);
  RewrittenEquation re = coset_rewrite(ge);
  auto labels = coset_labels(ge, re);
  return {json{{"equation", generalized_json(ge)},
               {"labels", els(labels)},
               {"window", c.opt.window},
               {"presentation", presentation_json(emit_solution_group(re, labels, c.opt.window))}}};
}

Result cmd_reduce(const Context& c) {
  const GeneralizedEquation& ge = generalized_arg(c);
  json modes = json::array(), skipped = json::array();
  bool all = true;
  for (AmbientChoice choice :
       {AmbientChoice::free_product, AmbientChoice::direct_product, AmbientChoice::cyclic}) {
    try {
      OrdinaryReduction r = reduce_to_ordinary(ge, choice);
      Classification k = classify(r.equation);
      modes.push_back(json{{"mode", std::string(ambient_name(choice))},
                           {"equation", equation_json(r.equation)},
                           {"kind", std::string(kind_name(k.kind))},
                           {"exponent_sum", k.exponent_sum},
                           {"source_nontrivial", r.source_nontrivial},
                           {"result_nontrivial", r.result_nontrivial},
                           {"source_in_conjugate_of_t", r.source_in_conjugate_of_t},
                           {"preserved", r.preserved()}});
      all = all && r.preserved();
    } catch (const PreconditionError& e) {
      skipped.push_back(json{{"mode", std::string(ambient_name(choice))}, {"reason", e.what()}});
    }
  }
  return {json{{"equation", generalized_json(ge)}, {"modes", modes}, {"skipped", skipped},
               {"all_preserved", all}},
          !all};
}

Result cmd_verdict(const Context& c) {
  const GeneralizedEquation& ge = generalized_arg(c);
  UnimodularVerdict v = unimodular_verdict(ge);
  json r{{"equation", generalized_json(ge)},
         {"order", v.order.to_string()},
         {"order_infinite", tri(v.order_infinite)},
         {"subgroup_normal", tri(v.subgroup_normal)},
         {"normal_witness", v.normal_witness ? json(el(*v.normal_witness)) : json(nullptr)},
         {"quotient_strong_up", tri(v.quotient_strong_up)},
         {"strong_up_reason", v.strong_up_reason},
         {"witness_x", els(v.witness_x)},
         {"witness_y", els(v.witness_y)},
         {"weak_torsion_free", tri(v.weak_torsion_free)},
         {"weak_reason", v.weak_reason},
         {"overall", tri(v.overall)}};
  return {r, v.overall == Tri::no};
}

std::set<int> h_set(const Options& o) { return {o.h_factors.begin(), o.h_factors.end()}; }

Result cmd_normal_form(const Context& c) {
  const Equation& e = equation_arg(c);
  NormalForm nf = normal_form_6(e, h_set(c.opt));
  const LevelWindow& w = nf.window;
  json r{{"equation", equation_json(e)},
         {"inverted", nf.inverted},
         {"h_factors", c.opt.h_factors},
         {"window", json{{"lo", w.lo}, {"hi", w.hi}}},
         {"conjugator", el(nf.conjugator)},
         {"rotation", nf.rotation},
         {"shift", nf.shift},
         {"span", nf.span},
         {"rotations_examined", nf.rotations_examined},
         {"expansion", el(nf.expansion())},
         {"expansion_verified", nf.expansion_verified},
         {"length_one", nf.length_one()}};
  bool ok = nf.expansion_verified;
  if (const auto* one = std::get_if<LengthOne>(&nf.form)) {
    r["c"] = w.format(one->c);
    r["u"] = w.format(one->u);
  } else {
    const Form6& f = std::get<Form6>(nf.form);
    json pairs = json::array();
    for (size_t i = 0; i < f.pairs.size(); ++i)
      pairs.push_back(json{{"b", w.format(f.pairs[i].first)},
                           {"a", w.format(f.pairs[i].second)},
                           {"b_outside", static_cast<bool>(f.b_outside[i])},
                           {"a_outside", static_cast<bool>(f.a_outside[i])}});
    r["m"] = f.m;
    r["n"] = f.n;
    r["c"] = w.format(f.c);
    r["pairs"] = pairs;
    r["property1"] = f.property1;
    r["property2"] = f.property2;
    r["property3_implied"] = f.property3_implied;
    ok = ok && f.property1 && f.property2;
  }
  // relations between G and the left-hand side, up to --max-len
  const auto& amb = as_free_product(*e.ambient());
  std::vector<GroupElement> a_gens;
  std::vector<std::string> a_names;
  for (const auto& g : e.group()->generators()) {
    a_gens.push_back(amb.inject(0, g));
    a_names.push_back(el(g));
  }
  RelationSearch probe = relation_falsifier(a_gens, e.word(), c.opt.max_len);
  r["relation_probe"] = json{{"max_len", probe.maxlen},
                             {"explored", probe.explored},
                             {"relation_found", probe.witness.has_value()},
                             {"detail", probe.describe(a_names)}};
  return {r, !ok};
}

Result cmd_system7(const Context& c) {
  const Equation& e = equation_arg(c);
  NormalForm nf = normal_form_6(e, h_set(c.opt));
  return {json{{"equation", equation_json(e)},
               {"window", c.opt.window},
               {"length_one", nf.length_one()},
               {"presentation", presentation_json(emit_system_7(nf, c.opt.window))}}};
}

json census_json(const UPReport& r) {
  json products = json::array();
  for (const auto& [p, f] : r.products)
    products.push_back(json{{"product", el(p)}, {"factorizations", pair_list(f)}});
  return json{{"products", products},
              {"unique_elements", els(r.unique_elements)},
              {"unique_count", r.unique_elements.size()},
              {"pair_count", r.pair_count},
              {"multiplicity_total", r.multiplicity_total()}};
}

Result cmd_up(const Context& c) {
  auto s = set_args(c, 2);
  UPReport r = up_check(s[0], s[1]);
  json j = census_json(r);
  j["X"] = els(s[0]);
  j["Y"] = els(s[1]);
  j["holds"] = r.holds();
  return {j, !r.holds()};
}

Result cmd_strong(const Context& c) {
  auto s = set_args(c, 2);
  StrongUP r = strong_up_check(s[0], s[1]);
  return {json{{"X", els(s[0])},
               {"Y", els(s[1])},
               {"holds", r.holds},
               {"witness", pair_list(r.witness)},
               {"unique_elements", els(r.report.unique_elements)}},
          !r.holds};
}

json up4_json(const UP4& u) {
  json w = nullptr;
  if (u.witness)
    w = els(std::vector<GroupElement>(u.witness->begin(), u.witness->end()));
  return json{{"holds", u.holds},
              {"product", u.product ? json(el(*u.product)) : json(nullptr)},
              {"witness", w},
              {"quadruples", u.quadruples},
              {"distinct_products", u.distinct_products},
              {"unique_count", u.unique_count}};
}

Result cmd_up4(const Context& c) {
  if (c.args.size() == 4 || (c.args.empty() && c.session.names_of(DeclKind::set).size() >= 4)) {
    auto s = set_args(c, 4);
    UP4 u = up4_check(s[0], s[1], s[2], s[3]);
    json j = up4_json(u);
    j["mode"] = "quadruple";
    return {j, !u.holds};
  }
  auto s = set_args(c, 2);
  UP4ImpliesStrong v = verify_up4_implies_strong(s[0], s[1]);
  json j{{"mode", "implication"},
         {"X", els(s[0])},
         {"Y", els(s[1])},
         {"strong_up", v.strong.holds},
         {"status", std::string(implication_name(v.status))},
         {"up4", v.up4 ? up4_json(*v.up4) : json(nullptr)}};
  return {j, v.status == ImplicationStatus::contradicted};
}

Result cmd_strojnowski(const Context& c) {
  auto s = set_args(c, 2);
  StrojnowskiCheck r = strojnowski_check(s[0], s[1]);
  return {json{{"X", els(s[0])},
               {"Y", els(s[1])},
               {"checked", r.checked},
               {"reason", r.reason},
               {"unique_count", r.unique_count},
               {"bound_holds", r.bound_holds}},
          r.checked && !r.bound_holds};
}

Result cmd_search(const Context& c) {
  GroupId g;
  if (c.args.size() > 1)
    throw UsageError("expected at most one group");
  if (!c.args.empty()) {
    auto it = c.session.groups.find(c.args[0]);
    g = it != c.session.groups.end() ? it->second : parse_group_expr(c.args[0], c.session);
  } else {
    auto names = c.session.names_of(DeclKind::group);
    if (names.empty())
      throw UsageError("no group to search; pass a group expression");
    g = c.session.groups.at(names.front());
  }
  NonUPSearch r = search_nonup_witness(g, c.opt.radius, c.opt.max_size, c.opt.budget_ms);
  json j{{"group", g->description()},
         {"radius", r.radius},
         {"max_size", r.max_size},
         {"ball_size", r.ball_size},
         {"search", std::string(search_status_name(r.status))},
         {"witness", els(r.witness)},
         {"witness_size", r.witness.size()}};
  if (r.status == SearchStatus::found) {
    UPReport census = up_check(r.witness, r.witness);
    j["witness_unique_count"] = census.unique_elements.size();
  }
  return {j, r.status == SearchStatus::found};
}

Result cmd_proper_power(const Context& c) {
  auto names = pick(c, DeclKind::element, 1);
  const GroupElement& x = lookup(c.session.elements, names[0], DeclKind::element);
  if (x.group().kind() != GroupKind::free)
    throw PreconditionError("proper-power needs an element of a free group");
  std::vector<std::string> gen_names;
  for (const auto& g : x.group().generators()) gen_names.push_back(el(g));
  const Word& w = x.as<FreeWord>().letters;
  PowerDecomposition d = proper_power(w);
  auto fw = [&](const Word& u) { return format_word(u, gen_names); };
  return {json{{"element", el(x)},
               {"group", x.group().description()},
               {"conjugator", fw(d.conjugator)},
               {"core", fw(d.core)},
               {"root", fw(d.root)},
               {"conjugated_root", fw(d.conjugated_root)},
               {"exponent", d.exponent},
               {"proper", d.proper()}}};
}

Result cmd_precheck(const Context& c) {
  const MultiEquation& m =
      lookup(c.session.multi, pick(c, DeclKind::multi, 1)[0], DeclKind::multi);
  CorollaryPrecheck p = corollary_precheck(m);
  return {json{{"equation", m.to_string()},
               {"group", m.group->description()},
               {"variables", m.variables},
               {"variable_word", format_word(p.variable_word, m.variables)},
               {"root", format_word(p.decomposition.root, m.variables)},
               {"exponent", p.decomposition.exponent},
               {"group_torsion_free", p.group_torsion_free},
               {"precheck", std::string(precheck_name(p.status))},
               {"detail", p.detail}},
          p.status != PrecheckStatus::applies};
}

Result cmd_solve(const Context& c) {
  const Equation& e = equation_arg(c);
  FiniteSolve s = solve_over_finite(e, c.opt.max_degree, c.opt.budget_ms);
  json cert = nullptr;
  if (s.certificate) {
    const auto& k = *s.certificate;
    json emb = json::array();
    for (size_t i = 0; i < k.elements.size(); ++i)
      emb.push_back(json::array({el(k.elements[i]), format_cycles(k.embedding[i])}));
    cert = json{{"degree", k.degree},
                {"embedding", emb},
                {"solution", format_cycles(k.solution)},
                {"residual", format_cycles(k.residual)},
                {"verified", verify_certificate(k, e)}};
  }
  return {json{{"equation", equation_json(e)},
               {"group_order", s.group_order},
               {"max_degree", s.max_degree},
               {"degrees_exhausted", s.degrees_exhausted},
               {"budget_hit", s.budget_hit},
               {"nodes", s.nodes},
               {"certificate", cert}},
          !s.certificate};
}

using Handler = std::function<Result(const Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"classify", cmd_classify},
      {"rewrite-coset", cmd_rewrite},
      {"conjugate-family", cmd_family},
      {"emit-ky", cmd_ky},
      {"emit-solution-group", cmd_solution_group},
      {"reduce", cmd_reduce},
      {"verdict", cmd_verdict},
      {"normal-form-6", cmd_normal_form},
      {"emit-system-7", cmd_system7},
      {"up-check", cmd_up},
      {"strong-up", cmd_strong},
      {"up4", cmd_up4},
      {"strojnowski", cmd_strojnowski},
      {"search-nonup", cmd_search},
      {"proper-power", cmd_proper_power},
      {"corollary-precheck", cmd_precheck},
      {"solve-finite", cmd_solve},
  };
  return h;
}

// ERRORS

json error_json(const std::string& type, const std::string& message, int line = 0, int column = 0) {
  json e{{"type", type}, {"message", message}};
  if (line > 0) {
    e["line"] = line;
    e["column"] = column;
  }
  return e;
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json base_report(const std::string& command, const std::vector<std::string>& args,
                 const Options& o, const std::string& script) {
  return json{{"schema", schema_name},
              {"version", schema_version},
              {"kind", command},
              {"status", "ok"},
              {"result", json::object()},
              {"input", json{{"command", command}, {"args", args}, {"options", o.to_json()},
                             {"script", script}}}};
}

Outcome error_outcome(json report, json error) {
  report["kind"] = "error";
  report["status"] = "error";
  report["result"] = json{{"error", error}};
  return {exit_error, report};
}

Outcome run_verify(json report, const std::string& script) {
  json original;
  try {
    original = json::parse(script);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(script, e.byte > 0 ? e.byte - 1 : 0);
    return error_outcome(report, error_json("parse", "report is not valid JSON", line, col));
  }
  if (!original.is_object() || original.value("schema", "") != schema_name ||
      !original.contains("version") || original["version"] != schema_version ||
      !original.contains("input") || !original["input"].is_object())
    return error_outcome(report, error_json("parse", "not a grpeq report of this version"));
  const json& in = original["input"];
  Options o;
  std::vector<std::string> args;
  std::string command, inner;
  try {
    command = in.at("command").get<std::string>();
    args = in.at("args").get<std::vector<std::string>>();
    inner = in.at("script").get<std::string>();
    o = Options::from_json(in.at("options"));
  } catch (const json::exception& e) {
    return error_outcome(report, error_json("parse", std::string("malformed report input: ") + e.what()));
  } catch (const ConfigError& e) {
    return error_outcome(report, error_json("config", e.what()));
  }
  if (command == "verify")
    return error_outcome(report, error_json("usage", "verify reports cannot be verified again"));
  Outcome again = run(command, args, o, inner);
  bool same = render_structured(again.report) == render_structured(original);
  report["result"] = json{{"verified_kind", original.value("kind", "")},
                          {"original_status", original.value("status", "")},
                          {"rerun_status", again.report["status"]},
                          {"identical", same}};
  report["status"] = same ? "ok" : "falsified";
  return {same ? exit_ok : exit_falsified, report};
}

} // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, h] : handlers()) v.push_back(k);
    v.push_back("verify");
    std::sort(v.begin(), v.end());
    return v;
  }();
  return names;
}

Outcome run(const std::string& command, const std::vector<std::string>& args,
            const Options& options, const std::string& script) {
  json report = base_report(command, args, options, script);
  try {
    options.validate();
    if (command == "verify")
      return run_verify(report, script);
    auto it = handlers().find(command);
    if (it == handlers().end())
      throw UsageError("unknown command '" + command + "'");
    Session session = parse_session(script);
    Context ctx{session, args, options};
    Result r = it->second(ctx);
    report["result"] = std::move(r.body);
    report["status"] = r.falsified ? "falsified" : "ok";
    return {r.falsified ? exit_falsified : exit_ok, report};
  } catch (const ParseError& e) {
    return error_outcome(report, error_json("parse", e.message, e.line, e.column));
  } catch (const ConfigError& e) {
    return error_outcome(report, error_json("config", e.what()));
  } catch (const UsageError& e) {
    return error_outcome(report, error_json("usage", e.what()));
  } catch (const CapExceeded& e) {
    return error_outcome(report, error_json("cap", e.what()));
  } catch (const GroupMismatch& e) {
    return error_outcome(report, error_json("group-mismatch", e.what()));
  } catch (const PreconditionError& e) {
    return error_outcome(report, error_json("precondition", e.what()));
  } catch (const Error& e) {
    return error_outcome(report, error_json("error", e.what()));
  } catch (const std::exception& e) {
    return error_outcome(report, error_json("internal", e.what()));
  }
}

// TEXT RENDERING

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string())
    return v.get<std::string>();
  if (v.is_null())
    return "-";
  return v.dump();
}

bool is_flat(const json& v) {
  if (!v.is_array())
    return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const json& x) {
    return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); }));
  });
}

std::string flat_text(const json& v) {
  if (!v.is_array())
    return scalar_text(v);
  std::string out;
  for (const auto& x : v) {
    if (!out.empty())
      out += ", ";
    if (x.is_array()) {
      std::string inner;
      for (const auto& y : x) inner += (inner.empty() ? "" : ", ") + scalar_text(y);
      out += "(" + inner + ")";
    } else {
      out += scalar_text(x);
    }
  }
  return out.empty() ? "(none)" : out;
}

void render(std::ostringstream& os, const json& v, int indent) {
  std::string pad(indent, ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      if (k == "text" && x.is_string() && x.get<std::string>().find('\n') != std::string::npos) {
        os << pad << k << ":\n";
        std::istringstream lines(x.get<std::string>());
        for (std::string line; std::getline(lines, line);) os << pad << "  " << line << "\n";
      } else if (k == "structured") {
        continue;
      } else if (is_flat(x)) {
        os << pad << k << ": " << flat_text(x) << "\n";
      } else {
        os << pad << k << ":\n";
        render(os, x, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size(); ++i) {
      if (is_flat(v[i])) {
        os << pad << "- " << flat_text(v[i]) << "\n";
      } else {
        os << pad << "[" << i << "]\n";
        render(os, v[i], indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(v) << "\n";
  }
}

} // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  os << report.value("kind", "?") << ": " << report.value("status", "?") << "\n";
  if (report.contains("result"))
    render(os, report["result"], 2);
  return os.str();
}

std::string render_structured(const json& report) { return report.dump(2) + "\n"; }

} // namespace grpeq::cli
