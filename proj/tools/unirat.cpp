// unirat: command-line front end for unirational field computations.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <unirat/unirat.hpp>

using namespace unirat;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kOther = 1, kNotAlgebraic = 2, kBudget = 3, kParse = 4 };

struct Job {
  std::string command;
  std::vector<std::string> vars, gens, relations;
  std::string element;
  std::uint32_t prime = 0;
  bool json = false, timings = false, dot = false, cross_check = false;
  std::string route = "auto";
  GroebnerOptions groebner;
  SubfieldOptions subfields;
};

// Output record: ordered key/value pairs printed as aligned text or JSON.
struct Report {
  Json result = Json::object();
  std::vector<std::pair<std::string, std::string>> text;
  std::vector<std::string> extra_lines;
  std::optional<std::string> dot;

  void add(const std::string& key, Json value, std::string shown) {
    result[key] = std::move(value);
    text.emplace_back(key, std::move(shown));
  }
  void add(const std::string& key, const std::string& value) { add(key, value, value); }
  void add(const std::string& key, long value) { add(key, value, std::to_string(value)); }
  void add_bool(const std::string& key, bool value) { add(key, value, value ? "true" : "false"); }
};

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

template <class T>
std::vector<std::string> strings(const std::vector<T>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

std::map<std::string, std::string> uppercase_aliases(const std::vector<std::string>& vars) {
  std::map<std::string, std::string> a;
  Universe u(vars);
  for (const auto& v : vars) {
    std::string up = v;
    for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up != v && !u.contains(up)) a[up] = v;
  }
  return a;
}

CoefField field_of(const Job& job) { return job.prime ? CoefField::prime(job.prime) : CoefField::rationals(); }

template <class C>
FieldPresentation<C> presentation(const Job& job) {
  return parse_presentation<C>(job.vars, job.gens, job.relations, field_of(job), uppercase_aliases(job.vars));
}

template <class C>
RatFunc<C> element(const Job& job, const FieldPresentation<C>& P) {
  if (job.element.empty()) fail(ErrorCode::InvalidArgument, "--element is required for " + job.command);
  return parse_expression<C>(job.element, P.ambient().vars(), field_of(job), uppercase_aliases(job.vars));
}

void require_rationals(const Job& job) {
  if (job.prime) fail(ErrorCode::Unsupported, job.command + " works over Q only");
}

// ---------------------------------------------------------------- commands

template <class C>
void cmd_trdeg(const Job& job, Report& r) {
  auto P = presentation<C>(job);
  auto T = tag_basis(P, job.groebner);
  r.add("trdeg", trdeg_groebner(T));
  r.add("ambient_trdeg", P.ambient().trdeg());
  auto rel = strings(T.tag_relations());
  r.add("tag_relations", rel, rel.empty() ? "none" : join(rel, "; "));
}

template <class C>
void cmd_degree(const Job& job, Report& r) {
  auto T = tag_basis(presentation<C>(job), job.groebner);
  auto d = algebraic_degree(T);
  if (!d) fail(ErrorCode::NotAlgebraic, "K(x) is transcendental over K(f): the degree is infinite");
  r.add("degree", static_cast<long>(*d));
}

template <class C>
void cmd_minpoly(const Job& job, Report& r) {
  auto P = presentation<C>(job);
  auto c = element(job, P);
  r.add("element", to_string(c));
  auto mp = minimal_polynomial(c, tag_basis(P, job.groebner), job.groebner);
  if (!mp) fail(ErrorCode::NotAlgebraic, to_string(c) + " is transcendental over K(f)");
  r.add("minpoly", to_string(*mp, "z"));
  r.add("degree", mp->degree());
}

template <class C>
void cmd_member(const Job& job, Report& r) {
  auto P = presentation<C>(job);
  auto c = element(job, P);
  r.add("element", to_string(c));
  auto e = membership_express(c, tag_basis(P, job.groebner), job.groebner);
  r.add_bool("member", e.has_value());
  if (e) r.add("expression", to_string(*e));
  else r.add("expression", nullptr, "none");
}

template <class C>
void cmd_sepbasis(const Job& job, Report& r) {
  auto P = presentation<C>(job);
  JacobianOptions opt{job.cross_check, job.groebner};
  auto rep = jacobian_trdeg(P, opt);
  r.add("rank", rep.rank);
  r.add("trdeg", rep.trdeg);
  r.add("ambient_trdeg", rep.ambient_trdeg);
  std::vector<std::string> names;
  for (auto i : rep.basis_vars) names.push_back(P.ambient().vars().name(i));
  r.add("basis", names, "{" + join(names) + "}");
  std::vector<std::string> valid;
  Json valid_json = Json::array();
  detail::for_each_subset(P.n(), static_cast<std::size_t>(rep.trdeg), [&](const std::vector<std::size_t>& s) {
    if (!is_separating_basis(P, s)) return false;
    std::vector<std::string> b;
    for (auto i : s) b.push_back(P.ambient().vars().name(i));
    valid_json.push_back(b);
    valid.push_back("{" + join(b) + "}");
    return false;
  });
  r.add("valid_bases", valid_json, valid.empty() ? "none" : join(valid, " "));
  r.add_bool("separable_certified", rep.separable_certified);
  if (rep.groebner_trdeg) r.add("groebner_trdeg", *rep.groebner_trdeg);
}

template <class C>
void cmd_witness(const Job& job, Report& r) {
  auto P = presentation<C>(job);
  auto w = infinite_family_witness(tag_basis(P, job.groebner), job.groebner);
  if (!w) {
    r.add("witness", nullptr, "none (algebraic extension)");
    return;
  }
  r.add("witness", Json{{"variable", w->var_name}, {"family", w->description}}, w->var_name);
  r.text.emplace_back("family", w->description);
}

void cmd_decompose(const Job& job, Report& r) {
  require_rationals(job);
  auto P = presentation<Rational>(job);
  std::vector<QPoly> ps;
  for (const auto& g : P.generators()) {
    if (!g.is_polynomial()) fail(ErrorCode::InvalidArgument, "decompose-uni takes polynomials, got " + to_string(g));
    ps.push_back(g.num());
  }
  auto d = uni_multivariate_decompose(ps);
  if (!d) {
    r.add("decomposition", nullptr, "none");
    return;
  }
  auto q = strings(d->q);
  r.add("decomposition", Json{{"f", to_string(d->f)}, {"q", q}}, "f = " + to_string(d->f));
  r.text.emplace_back("q", join(q, "; "));
}

void diagram_fields(const ExtensionDiagram& D, Report& r) {
  std::vector<std::string> basis;
  for (const auto& s : D.sep_basis) basis.push_back(to_string(s));
  r.add("separating_basis", basis, join(basis));
  r.add("alpha", to_string(D.alpha_ambient));
  r.add("p_alpha", to_string(D.p_alpha(), "z"));
  r.add("beta_minpoly", to_string(D.beta_minpoly, "z"));
  r.add("degree", static_cast<long>(D.degree));
}

void cmd_factor_ext(const Job& job, Report& r) {
  require_rationals(job);
  auto P = presentation<Rational>(job);
  auto D = rewrite_presentation(P, job.subfields);
  diagram_fields(D, r);
  bool trager = job.route == "trager" || (job.route == "auto" && !P.ambient().is_rational());
  if (job.route != "auto" && job.route != "trager" && job.route != "ambient")
    fail(ErrorCode::InvalidArgument, "--route must be auto, trager or ambient");
  auto F = trager ? factor_over_extension(embed(D.ext, D.p_alpha()), job.subfields.factor)
                  : D.factor_p_alpha(job.subfields.factor);
  r.add("route", trager ? "trager" : "ambient");
  Json fs = Json::array();
  std::vector<std::string> shown;
  for (const auto& [g, m] : F.factors) {
    auto s = to_string(g, "z");
    fs.push_back({{"factor", s}, {"degree", g.degree()}, {"multiplicity", m}});
    shown.push_back("(" + s + ")" + (m > 1 ? "^" + std::to_string(m) : ""));
  }
  r.add("factors", fs, join(shown, " "));
}

void cmd_subfields(const Job& job, Report& r) {
  require_rationals(job);
  auto P = presentation<Rational>(job);
  auto L = intermediate_fields(P, job.subfields);
  diagram_fields(L.diagram, r);
  Json fields = Json::array();
  for (std::size_t i = 0; i < L.fields.size(); ++i) {
    const auto& F = L.fields[i];
    auto gens = strings(F.generators_ambient);
    std::string role = i == L.bottom() ? "bottom" : i == L.top() ? "top" : "proper";
    fields.push_back({{"index", i},
                      {"role", role},
                      {"degree_over_base", F.degree_over_base},
                      {"index_in_top", F.index_in_top},
                      {"block", to_string(F.block_poly, "z")},
                      {"generators", gens}});
    r.extra_lines.push_back("field " + std::to_string(i) + " [" + role + ", degree " +
                            std::to_string(F.degree_over_base) + "]: Q(" + join(gens) + ")");
  }
  r.result["fields"] = fields;
  r.add("proper_fields", static_cast<long>(L.proper().size()));
  Json edges = Json::array();
  std::vector<std::string> shown;
  for (auto [a, b] : L.hasse_edges) {
    edges.push_back({a, b});
    shown.push_back(std::to_string(a) + " < " + std::to_string(b));
  }
  r.add("hasse_edges", edges, shown.empty() ? "none" : join(shown));
  if (job.dot) {
    std::ostringstream os;
    os << "digraph lattice {\n";
    for (std::size_t i = 0; i < L.fields.size(); ++i)
      os << "  f" << i << " [label=\"Q(" << join(strings(L.fields[i].generators_ambient)) << ")\"];\n";
    for (auto [a, b] : L.hasse_edges) os << "  f" << a << " -> f" << b << ";\n";
    os << "}\n";
    r.dot = os.str();
  }
}

void cmd_normality(const Job& job, Report& r) {
  require_rationals(job);
  auto P = presentation<Rational>(job);
  auto N = normality(P, job.subfields);
  r.add_bool("normal", N.normal);
  r.add("degree", static_cast<long>(N.degree));
  r.add("automorphisms", static_cast<long>(N.automorphisms));
  if (N.mobius) {
    auto G = monodromy_fix_group(P.generators()[0], job.subfields.factor);
    std::vector<std::string> maps;
    for (const auto& m : G) maps.push_back(to_string(m, P.ambient().vars().name(0)));
    r.add("mobius_group", maps, "{" + join(maps) + "}");
  }
}

void cmd_reduce_dim(const Job& job, Report& r) {
  require_rationals(job);
  auto P = presentation<Rational>(job);
  auto D = reduce_dimension(P, job.subfields);
  r.add("trdeg", D.trdeg);
  r.add_bool("identity", D.identity());
  r.add("vars", D.vars.names(), join(D.vars.names()));
  auto imgs = strings(D.images);
  r.add("images", imgs, join(imgs, "; "));
  Json steps = Json::array();
  for (const auto& s : D.steps) {
    steps.push_back({{"replaced", s.replaced}, {"by", s.by}, {"nu", s.nu}, {"trdeg", s.trdeg}});
    r.extra_lines.push_back("step: " + s.replaced + " -> " + s.by + "^" + std::to_string(s.nu) +
                            " (trdeg " + std::to_string(s.trdeg) + ")");
  }
  r.result["steps"] = steps;
}

template <class C>
void dispatch_generic(const Job& job, Report& r) {
  const auto& c = job.command;
  if (c == "trdeg") cmd_trdeg<C>(job, r);
  else if (c == "degree") cmd_degree<C>(job, r);
  else if (c == "minpoly") cmd_minpoly<C>(job, r);
  else if (c == "member") cmd_member<C>(job, r);
  else if (c == "sepbasis") cmd_sepbasis<C>(job, r);
  else if (c == "witness") cmd_witness<C>(job, r);
  else fail(ErrorCode::InvalidArgument, "unknown command " + c);
}

void dispatch(const Job& job, Report& r) {
  const auto& c = job.command;
  if (c == "decompose-uni") cmd_decompose(job, r);
  else if (c == "factor-ext") cmd_factor_ext(job, r);
  else if (c == "subfields") cmd_subfields(job, r);
  else if (c == "normality") cmd_normality(job, r);
  else if (c == "reduce-dim") cmd_reduce_dim(job, r);
  else if (job.prime) dispatch_generic<Fp>(job, r);
  else dispatch_generic<Rational>(job, r);
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotAlgebraic: return kNotAlgebraic;
    case ErrorCode::BudgetExceeded: return kBudget;
    case ErrorCode::ParseError:
    case ErrorCode::UnknownVariable: return kParse;
    default: return kOther;
  }
}

Json inputs(const Job& job) {
  Json in{{"vars", job.vars}, {"gens", job.gens}, {"relations", job.relations},
          {"field", field_of(job).name()}};
  if (!job.element.empty()) in["element"] = job.element;
  return in;
}

void print_text(const Job& job, const Report& r, double ms) {
  if (r.dot) {
    std::cout << *r.dot;
    return;
  }
  std::size_t w = 0;
  for (const auto& [k, v] : r.text) w = std::max(w, k.size());
  std::cout << "command" << std::string(w > 7 ? w - 7 : 0, ' ') << "  " << job.command << "\n";
  for (const auto& [k, v] : r.text) std::cout << k << std::string(w - k.size(), ' ') << "  " << v << "\n";
  for (const auto& l : r.extra_lines) std::cout << l << "\n";
  if (job.timings) std::cout << "time_ms" << std::string(w > 7 ? w - 7 : 0, ' ') << "  " << ms << "\n";
}

int run(const Job& job) {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  int code = kOk;
  std::optional<std::pair<std::string, std::string>> err;
  try {
    dispatch(job, r);
  } catch (const Error& e) {
    code = exit_code(e.code());
    err = {error_code_name(e.code()), e.what()};
  } catch (const std::exception& e) {
    code = kOther;
    err = {"INTERNAL", e.what()};
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (job.json) {
    Json out{{"command", job.command}, {"inputs", inputs(job)}, {"status", err ? "error" : "ok"}};
    if (err) out["error"] = {{"code", err->first}, {"message", err->second}};
    else out["result"] = r.result;
    if (job.timings) out["timings"] = {{"total_ms", ms}};
    std::cout << out.dump(2) << "\n";
  } else if (err) {
    std::cerr << "error: " << err->first << ": " << err->second << "\n";
  } else {
    print_text(job, r, ms);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Computations with unirational fields K(f_1, ..., f_m) inside K(x_1, ..., x_n)"};
  app.require_subcommand(1);
  Job job;
  std::vector<std::string> vars, gens, relations;
  std::uint64_t max_pairs = job.groebner.max_pairs;

  struct Spec {
    const char* name;
    const char* help;
    bool element;
  };
  const Spec specs[] = {
      {"trdeg", "transcendence degree of K(f) over K", false},
      {"degree", "degree [K(x) : K(f)] (exit 2 when infinite)", false},
      {"minpoly", "minimal polynomial of --element over K(f)", true},
      {"member", "decide whether --element lies in K(f) and express it in the generators", true},
      {"sepbasis", "Jacobian rank and a separating transcendence basis among the variables", false},
      {"subfields", "lattice of fields between K(f) and K(x)", false},
      {"factor-ext", "factor the minimal polynomial of a primitive element over E[alpha]", false},
      {"normality", "decide whether K(x)/K(f) is normal", false},
      {"decompose-uni", "write polynomials p_i = q_i(f) for one polynomial f", false},
      {"reduce-dim", "substitutions x_j -> x_i^nu reducing to trdeg many variables", false},
      {"witness", "infinitely many intermediate fields when K(x)/K(f) is transcendental", false},
  };
  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--vars", vars, "ambient variables, comma separated")->required();
    sub->add_option("--gens", gens, "generators f_1..f_m, comma separated");
    sub->add_option("--relations", relations, "relation polynomials (uppercase variable names accepted)");
    if (s.element) sub->add_option("--element", job.element, "element of K(x)")->required();
    sub->add_option("--prime", job.prime, "work over GF(p) instead of Q");
    sub->add_flag("--json", job.json, "machine-readable output");
    sub->add_flag("--timings", job.timings, "report elapsed time");
    sub->add_flag("--dot", job.dot, "print the lattice in dot format (subfields)");
    sub->add_flag("--cross-check", job.cross_check, "compare the Jacobian rank with the Groebner trdeg (sepbasis)");
    sub->add_option("--route", job.route, "factor-ext route: auto, trager or ambient");
    sub->add_option("--max-pairs", max_pairs, "Groebner pair budget (default from UNIRAT_BUDGET or 1000000)");
    sub->add_option("--max-subsets", job.subfields.max_subsets, "factor subsets examined by subfields")
        ->default_val(job.subfields.max_subsets);
    sub->callback([&job, &app, name = std::string(s.name)] { job.command = name; (void)app; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kOther;
  }
  for (const auto& v : vars)
    for (auto& x : split_list(v)) job.vars.push_back(x);
  for (const auto& g : gens)
    for (auto& x : split_list(g)) job.gens.push_back(x);
  for (const auto& g : relations)
    for (auto& x : split_list(g)) job.relations.push_back(x);
  job.groebner.max_pairs = max_pairs;
  job.subfields.groebner = job.groebner;
  return run(job);
}
