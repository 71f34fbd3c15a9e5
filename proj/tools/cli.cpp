#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

#include "cbs/closed.hpp"
#include "cbs/identity.hpp"
#include "cbs/registry.hpp"
#include "cbs/series.hpp"

namespace cbs::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kSignSplitSeed = 20240601;

struct Options {
  std::string family;
  std::string x, phi, p;
  std::optional<long> m, s, r;
  std::string seq;
  int digits = 30;
  std::string tol;
  long max_terms = kDefaultMaxTerms;
  std::optional<long> force_terms;
  std::string format = "text";
  std::string set = "all";
  std::string id;
  std::optional<long> n_max;
};

// Output: a list of flat records plus the JSON payload.
struct Output {
  std::vector<Json> records;
  Json result;
  bool pass = true;
};

std::string num(const Real& v, int digits) { return v.to_string(digits); }
Json num_or_null(const std::optional<Real>& v, int digits) {
  return v ? Json(num(*v, digits)) : Json(nullptr);
}

std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::vector<std::string> columns(const std::vector<Json>& records) {
  std::vector<std::string> cols;
  for (const auto& r : records)
    for (const auto& [k, v] : r.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

void render(const Output& o, const std::string& format, const Json& command, std::ostream& out) {
  if (format == "json") {
    Json doc;
    doc["schema_version"] = 1;
    doc["command"] = command;
    doc["result"] = o.result;
    out << doc.dump(2) << "\n";
    return;
  }
  const auto cols = columns(o.records);
  if (format == "csv") {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_escape(cols[i]);
    out << "\n";
    for (const auto& r : o.records) {
      for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << csv_escape(r.contains(cols[i]) ? cell(r[cols[i]]) : "");
      out << "\n";
    }
    return;
  }
  if (o.records.size() == 1) {
    std::size_t w = 0;
    for (const auto& c : cols) w = std::max(w, c.size());
    for (const auto& c : cols) out << c << std::string(w - c.size() + 2, ' ') << cell(o.records[0][c]) << "\n";
    return;
  }
  std::vector<std::size_t> widths;
  for (const auto& c : cols) {
    std::size_t w = c.size();
    for (const auto& r : o.records) w = std::max(w, r.contains(c) ? cell(r[c]).size() : 0);
    widths.push_back(w);
  }
  auto line = [&](auto get) {
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::string v = get(i);
      s += v;
      if (i + 1 < cols.size()) s += std::string(widths[i] - v.size() + 2, ' ');
    }
    out << s << "\n";
  };
  line([&](std::size_t i) { return cols[i]; });
  for (const auto& r : o.records) line([&](std::size_t i) { return r.contains(cols[i]) ? cell(r[cols[i]]) : ""; });
}

FamilySpec build_spec(const Options& o) {
  if (o.family.empty()) throw UsageError("--family is required");
  FamilySpec spec;
  spec.id = parse_family(o.family);
  if (!o.x.empty()) spec.x = parse_value(o.x);
  if (!o.phi.empty()) spec.phi = parse_value(o.phi);
  if (!o.p.empty()) spec.p = parse_value(o.p);
  if (o.m) spec.m = *o.m;
  if (o.s) spec.s = *o.s;
  if (o.r) spec.r = *o.r;
  if (!o.seq.empty()) {
    if (o.seq == "F") spec.seq = Sequence::Fibonacci;
    else if (o.seq == "L") spec.seq = Sequence::Lucas;
    else throw UsageError("--seq must be F or L");
  }
  return spec;
}

Real tolerance(const Options& o, const PrecisionContext& ctx) {
  if (o.tol.empty()) return ctx.pow10(-(o.digits - 5));
  Real t = parse_value(o.tol).eval(ctx);
  if (t.sign() <= 0) throw UsageError("--tol must be positive");
  return t;
}

Json report_json(const ComparisonReport& r, int d) {
  Json j;
  j["id"] = r.id;
  j["spec"] = r.spec;
  j["series"] = num(r.series, d);
  j["closed"] = num(r.closed, d);
  j["abs_diff"] = num(r.abs_diff, d);
  j["certified_bound"] = num_or_null(r.certified_bound, d);
  j["terms_used"] = r.terms_used;
  j["bound_mode"] = r.bound_mode;
  j["residue"] = num(r.residue, d);
  if (r.printed_value) {
    j["printed"] = num(*r.printed_value, d);
    j["printed_matches"] = *r.printed_matches;
  }
  j["pass"] = r.pass;
  j["note"] = r.note;
  return j;
}

Output cmd_constants(const Options& o, const PrecisionContext& ctx) {
  Constants k = constants(ctx);
  Output out;
  Json list = Json::array();
  for (auto [name, v] : {std::pair{"alpha", &k.alpha}, {"beta", &k.beta}, {"delta", &k.delta},
                         {"sqrt5", &k.sqrt5}, {"pi", &k.pi}}) {
    Json r;
    r["name"] = name;
    r["value"] = num(*v, o.digits);
    out.records.push_back(r);
    list.push_back(r);
  }
  out.result = list;
  return out;
}

Output cmd_eval(const Options& o, const PrecisionContext& ctx) {
  FamilySpec spec = build_spec(o);
  const Regime regime = validate(spec, ctx);
  EvalResult ev = o.force_terms ? sum_fixed(spec, *o.force_terms - 1, ctx)
                                : sum_adaptive(spec, tolerance(o, ctx), ctx, o.max_terms);
  Json r;
  r["spec"] = describe(spec);
  r["value"] = num(ev.value, o.digits);
  r["terms_used"] = ev.terms_used;
  r["truncation_bound"] = num_or_null(ev.truncation_bound, o.digits);
  r["rounding_bound"] = num(ev.rounding_bound, o.digits);
  r["certified"] = ev.truncation_bound.has_value();
  r["regime"] = regime == Regime::Certified ? "certified" : "boundary";
  return Output{{r}, r, true};
}

Output cmd_closed(const Options& o, const PrecisionContext& ctx) {
  FamilySpec spec = build_spec(o);
  ClosedValue cv = closed_value_detailed(spec, ctx);
  Real v = closed_value(spec, ctx);
  Json r;
  r["spec"] = describe(spec);
  r["value"] = num(v, o.digits);
  r["residue"] = num(cv.residue, o.digits);
  return Output{{r}, r, true};
}

Output cmd_compare(const Options& o, const PrecisionContext& ctx) {
  FamilySpec spec = build_spec(o);
  ComparisonReport rep = compare_family(spec, ctx, tolerance(o, ctx), o.max_terms, o.force_terms);
  Json r = report_json(rep, o.digits);
  return Output{{r}, r, rep.pass};
}

Json identity_json(const IdentityReport& rep) {
  Json j;
  j["id"] = rep.id;
  j["range"] = rep.range;
  j["pass"] = rep.pass;
  j["failures"] = rep.failures.size();
  Json fs = Json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(rep.failures.size(), 5); ++i)
    fs.push_back(Json{{"params", rep.failures[i].params}, {"lhs", rep.failures[i].lhs}, {"rhs", rep.failures[i].rhs}});
  j["first_failures"] = fs;
  std::string notes;
  for (const auto& n : rep.notes) notes += (notes.empty() ? "" : "; ") + n;
  j["notes"] = notes;
  return j;
}

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = {"convolution",     "weighted-convolution", "binomial-transform",
                                               "sign-split",      "arcsin-split",         "map-derivatives",
                                               "harmonic-integral"};
  return ids;
}

IdentityReport run_identity(const std::string& id, const Options& o, const PrecisionContext& ctx) {
  auto n = [&](long def) {
    long v = o.n_max.value_or(def);
    if (v < 0) throw UsageError("--n-max must be >= 0");
    return v;
  };
  if (id == "convolution") return check_convolution(n(300));
  if (id == "weighted-convolution") return check_weighted_convolution(n(300));
  if (id == "binomial-transform") return check_binomial_transform(n(60), {-3, -2, -1, 0, 1, 2, 3}, true);
  if (id == "sign-split") {
    int len = static_cast<int>(std::max(1L, n(64)));
    return check_sign_split(random_rational_sequences(200, len, kSignSplitSeed), len);
  }
  if (id == "arcsin-split" || id == "map-derivatives") {
    int count = static_cast<int>(std::max(1L, n(20)));
    auto xs = sample_points(Rational(-7, 10), Rational(7, 10), count, ctx);
    return id == "arcsin-split" ? check_arcsin_split(xs, ctx) : check_map_derivatives(xs, ctx);
  }
  if (id == "harmonic-integral") return check_harmonic_integral(n(100));
  throw UsageError("unknown identity id '" + id + "'");
}

Output cmd_identity(const Options& o, const PrecisionContext& ctx) {
  if (o.id.empty()) throw UsageError("--id is required (one of the identity ids or 'all')");
  std::vector<std::string> ids = o.id == "all" ? identity_ids() : std::vector<std::string>{o.id};
  Output out;
  out.result = Json::array();
  for (const auto& id : ids) {
    IdentityReport rep = run_identity(id, o, ctx);
    Json j = identity_json(rep);
    out.pass = out.pass && rep.pass;
    Json flat = j;
    flat["first_failures"] = j["first_failures"].dump();
    out.records.push_back(flat);
    out.result.push_back(j);
  }
  if (ids.size() == 1) out.result = out.result[0];
  return out;
}

Output cmd_examples(const Options& o, const PrecisionContext& ctx) {
  const auto sets = example_sets();
  if (o.set != "all" && std::find(sets.begin(), sets.end(), o.set) == sets.end())
    throw UsageError("unknown set '" + o.set + "'");
  Real tol = tolerance(o, ctx);
  Output out;
  out.result = Json::array();
  for (const auto& row : list_examples()) {
    if (o.set != "all" && row.set() != o.set) continue;
    ComparisonReport rep = run_row(row, ctx, tol, o.max_terms);
    Json j = report_json(rep, o.digits);
    j["anchor"] = row.anchor;
    out.pass = out.pass && rep.pass;
    out.records.push_back(j);
    out.result.push_back(j);
  }
  return out;
}

std::string family_params(Family f) {
  const std::string n(family_name(f));
  switch (n[0]) {
    case 'F': return "x, |x| <= 1 (|x| = 1 uncertified)";
    case 'T': return "phi, |phi| <= pi/4 (|phi| = pi/4 uncertified)";
    case 'C': return "x, |x| <= 1/2";
    case 'G': return "m, s, p, seq; p >= 4 alpha^|m|";
    case 'H': return "x, |x| <= 1 (|x| = 1 uncertified)";
    case 'I': return f == Family::I3 ? "none" : "r even (r != 0 for I2)";
    default: return "none";
  }
}

Output cmd_list_families(const Options&, const PrecisionContext&) {
  Output out;
  out.result = Json::array();
  for (Family f : all_families()) {
    Json j;
    j["id"] = std::string(family_name(f));
    j["summand"] = family_summary(f);
    j["parameters"] = family_params(f);
    out.records.push_back(j);
    out.result.push_back(j);
  }
  return out;
}

void add_family_options(CLI::App* sub, Options& o) {
  sub->add_option("--family", o.family, "Family id (F1..F6, T1..T6, C1, C2, G1..G12, H1..H4, I1..I3, J1)");
  sub->add_option("--x", o.x, "x as p/q or decimal");
  sub->add_option("--phi", o.phi, "phi as decimal or pi/K");
  sub->add_option("--m", o.m, "G: Fibonacci index stride m");
  sub->add_option("--s", o.s, "G: index shift s");
  sub->add_option("--p", o.p, "G: denominator base p");
  sub->add_option("--r", o.r, "I1/I2: even index r");
  sub->add_option("--seq", o.seq, "G: F or L");
  sub->add_option("--max-terms", o.max_terms, "Term cap for adaptive summation");
  sub->add_option("--force-terms", o.force_terms, "Sum exactly N terms (uncertified at endpoints)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Central-binomial series: certified evaluation, closed forms and identity checks", "cbseries"};
  app.require_subcommand(1);
  using Handler = Output (*)(const Options&, const PrecisionContext&);
  std::vector<std::pair<CLI::App*, Handler>> subs;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--digits", o.digits, "Significant digits (default 30)");
    sub->add_option("--tol", o.tol, "Tolerance (default 10^-(digits-5))");
    sub->add_option("--format", o.format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));
  };
  auto* constants_cmd = app.add_subcommand("constants", "alpha, beta, delta, sqrt5, pi");
  auto* eval_cmd = app.add_subcommand("eval", "Certified series value");
  auto* closed_cmd = app.add_subcommand("closed", "Closed-form value");
  auto* compare_cmd = app.add_subcommand("compare", "Series against closed form");
  auto* identity_cmd = app.add_subcommand("identity", "Exact and numeric identity sweeps");
  auto* examples_cmd = app.add_subcommand("examples", "Reproduce registry rows");
  auto* list_cmd = app.add_subcommand("list-families", "Series families and parameters");
  for (auto* s : {constants_cmd, eval_cmd, closed_cmd, compare_cmd, identity_cmd, examples_cmd, list_cmd}) common(s);
  for (auto* s : {eval_cmd, closed_cmd, compare_cmd}) add_family_options(s, o);
  identity_cmd->add_option("--id", o.id, "Identity id or 'all'");
  identity_cmd->add_option("--n-max", o.n_max, "Sweep bound (sample count for arcsin-split and map-derivatives)");
  examples_cmd->add_option("--set", o.set, "ex6 | trig | ex9 | ex10 | ex11 | thm15 | thm16 | all");
  examples_cmd->add_option("--max-terms", o.max_terms, "Term cap for adaptive summation");
  subs = {{constants_cmd, cmd_constants}, {eval_cmd, cmd_eval},         {closed_cmd, cmd_closed},
          {compare_cmd, cmd_compare},     {identity_cmd, cmd_identity}, {examples_cmd, cmd_examples},
          {list_cmd, cmd_list_families}};

  std::vector<std::string> argv_store{"cbseries"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsage;
  }

  try {
    if (o.digits < 1) throw UsageError("--digits must be >= 1");
    if (o.max_terms < 1) throw UsageError("--max-terms must be >= 1");
    if (o.force_terms && *o.force_terms < 1) throw UsageError("--force-terms must be >= 1");
    PrecisionContext ctx = make_context(o.digits);
    for (auto& [sub, handler] : subs) {
      if (!sub->parsed()) continue;
      Output result = handler(o, ctx);
      Json command;
      command["name"] = sub->get_name();
      command["args"] = args;
      std::ostringstream buf;
      render(result, o.format, command, buf);
      out << buf.str();
      return result.pass ? kOk : kVerificationFailure;
    }
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const DomainError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNumericFailure;
  }
}

}  // namespace cbs::cli
