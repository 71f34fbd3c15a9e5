#include "cbs/registry.hpp"

#include <algorithm>
#include <cctype>

#include "cbs/closed.hpp"

namespace cbs {

namespace detail {
extern const std::string_view kRegistryText;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

long parse_long(const std::string& v, const std::string& what) {
  try {
    std::size_t used = 0;
    long r = std::stol(v, &used);
    if (used == v.size()) return r;
  } catch (const std::exception&) {
  }
  throw UsageError("bad integer for " + what + ": '" + v + "'");
}

// key=value pairs separated by ';'. Values may contain '=' inside parentheses
// only in principle; the key is everything before the first '='.
std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& field, const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  if (field.empty()) return out;
  for (const std::string& item : split(field, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError(where + ": expected key=value, got '" + item + "'");
    out.emplace_back(trim(item.substr(0, eq)), trim(item.substr(eq + 1)));
  }
  return out;
}

Sequence parse_seq(const std::string& v) {
  if (v == "F") return Sequence::Fibonacci;
  if (v == "L") return Sequence::Lucas;
  throw UsageError("seq must be F or L, got '" + v + "'");
}

std::string params_string(const FamilySpec& s) {
  std::vector<std::string> parts;
  if (s.x) parts.push_back("x=" + s.x->to_string());
  if (s.phi) parts.push_back("phi=" + s.phi->to_string());
  if (s.p) {
    parts.push_back("m=" + std::to_string(s.m));
    parts.push_back("s=" + std::to_string(s.s));
    parts.push_back("p=" + s.p->to_string());
  }
  if (s.id == Family::I1 || s.id == Family::I2) parts.push_back("r=" + std::to_string(s.r));
  if (s.seq) parts.push_back(std::string("seq=") + (*s.seq == Sequence::Fibonacci ? "F" : "L"));
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

Real scaled_abs(const Real& v, const std::optional<Real>& scale) { return scale ? abs(v * *scale) : abs(v); }

}  // namespace

std::string ExampleRow::set() const { return id.substr(0, id.find('-')); }

std::vector<ExampleRow> parse_registry(std::string_view text) {
  std::vector<ExampleRow> rows;
  long line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "registry line " + std::to_string(line_no);
    auto f = split(line, '|');
    if (f.size() != 6) throw UsageError(where + ": expected 6 fields, got " + std::to_string(f.size()));
    ExampleRow row{f[0], FamilySpec{}, Expr::number(0), std::nullopt, std::nullopt, std::nullopt, f[5]};
    row.spec.id = parse_family(f[1]);
    for (const auto& [k, v] : parse_pairs(f[2], where)) {
      if (k == "x") row.spec.x = parse_value(v);
      else if (k == "phi") row.spec.phi = parse_value(v);
      else if (k == "p") row.spec.p = parse_value(v);
      else if (k == "m") row.spec.m = parse_long(v, "m");
      else if (k == "s") row.spec.s = parse_long(v, "s");
      else if (k == "r") row.spec.r = parse_long(v, "r");
      else if (k == "seq") row.spec.seq = parse_seq(v);
      else throw UsageError(where + ": unknown parameter '" + k + "'");
    }
    row.expected = Expr::parse(f[3]);
    for (const auto& [k, v] : parse_pairs(f[4], where)) {
      if (k == "terms") row.terms = parse_long(v, "terms");
      else if (k == "scale") row.scale = Expr::parse(v);
      else if (k == "printed") row.printed = Expr::parse(v);
      else throw UsageError(where + ": unknown option '" + k + "'");
    }
    if (std::any_of(rows.begin(), rows.end(), [&](const ExampleRow& r) { return r.id == row.id; }))
      throw UsageError(where + ": duplicate id '" + row.id + "'");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string serialize_registry(const std::vector<ExampleRow>& rows) {
  std::string out =
      "# id | family | params | expected | options | anchor\n"
      "# params: x, phi, m, s, p, r, seq (exact rationals or prefix expressions)\n"
      "# options: terms=N (fixed term count, bound mode); scale=E (series multiplied by E); printed=E (form as "
      "printed, compared too)\n";
  for (const auto& r : rows) {
    std::vector<std::string> opts;
    if (r.terms) opts.push_back("terms=" + std::to_string(*r.terms));
    if (r.scale) opts.push_back("scale=" + r.scale->to_string());
    if (r.printed) opts.push_back("printed=" + r.printed->to_string());
    std::string o;
    for (const auto& s : opts) o += (o.empty() ? "" : "; ") + s;
    out += r.id + " | " + std::string(family_name(r.spec.id)) + " | " + params_string(r.spec) + " | " +
           r.expected.to_string() + " | " + o + " | " + r.anchor + "\n";
  }
  return out;
}

std::string_view registry_text() { return detail::kRegistryText; }

const std::vector<ExampleRow>& list_examples() {
  static const std::vector<ExampleRow> rows = parse_registry(registry_text());
  return rows;
}

const ExampleRow& find_example(std::string_view id) {
  for (const auto& r : list_examples())
    if (r.id == id) return r;
  throw UsageError("unknown example id '" + std::string(id) + "'");
}

std::vector<std::string> example_sets() {
  std::vector<std::string> sets;
  for (const auto& r : list_examples())
    if (std::find(sets.begin(), sets.end(), r.set()) == sets.end()) sets.push_back(r.set());
  return sets;
}

Real closed_tolerance(const PrecisionContext& ctx) { return ctx.pow10(5 - ctx.working_digits()); }

ComparisonReport run_row(const ExampleRow& row, const PrecisionContext& ctx, const Real& tolerance, long max_terms) {
  ComparisonReport rep;
  rep.id = row.id;
  rep.spec = describe(row.spec);
  rep.residue = ctx.zero();
  const Regime regime = validate(row.spec, ctx);
  std::optional<Real> scale;
  if (row.scale) scale = row.scale->eval(ctx);

  EvalResult ev;
  std::vector<std::string> notes;
  if (row.terms) {
    rep.bound_mode = true;
    ev = sum_fixed(row.spec, *row.terms - 1, ctx);
    notes.push_back("fixed " + std::to_string(*row.terms) + " terms, bound mode");
  } else if (regime == Regime::Boundary) {
    ev = sum_fixed(row.spec, kEndpointTerms - 1, ctx);
    notes.push_back("parameter at the domain endpoint: no certified bound, " + std::to_string(kEndpointTerms) +
                    " terms summed for reference");
  } else {
    try {
      ev = sum_adaptive(row.spec, tolerance / 10L, ctx, max_terms);
    } catch (const ConvergenceError& e) {
      ev = e.best();
      ev.truncation_bound.reset();
      notes.push_back(e.what());
    }
  }

  rep.series = scale ? ev.value * *scale : ev.value;
  rep.terms_used = ev.terms_used;
  if (ev.truncation_bound) rep.certified_bound = scaled_abs(*ev.truncation_bound + ev.rounding_bound, scale);
  rep.closed = row.expected.eval(ctx);
  rep.abs_diff = abs(rep.series - rep.closed);

  const Real etol = closed_tolerance(ctx);
  rep.pass = rep.certified_bound && rep.abs_diff <= *rep.certified_bound + etol &&
             (rep.bound_mode || *rep.certified_bound <= tolerance);

  if (row.printed) {
    rep.printed_value = row.printed->eval(ctx);
    Real slack = (rep.certified_bound ? *rep.certified_bound : ctx.zero()) + tolerance;
    rep.printed_matches = abs(*rep.printed_value - rep.series) <= slack;
    if (!*rep.printed_matches) notes.push_back("printed form differs from the series by " +
                                               abs(*rep.printed_value - rep.series).to_string(6));
  }
  for (const auto& n : notes) rep.note += (rep.note.empty() ? "" : "; ") + n;
  return rep;
}

ComparisonReport run_example(std::string_view id, const PrecisionContext& ctx, const Real& tolerance, long max_terms) {
  return run_row(find_example(id), ctx, tolerance, max_terms);
}

ComparisonReport compare_family(const FamilySpec& spec, const PrecisionContext& ctx, const Real& tolerance,
                                long max_terms, std::optional<long> force_terms) {
  ComparisonReport rep;
  rep.id = std::string(family_name(spec.id));
  rep.spec = describe(spec);
  const Regime regime = validate(spec, ctx);
  ClosedValue cv = closed_value_detailed(spec, ctx);
  rep.residue = cv.residue;
  rep.closed = closed_value(spec, ctx);

  EvalResult ev;
  if (force_terms) {
    ev = sum_fixed(spec, *force_terms - 1, ctx);
    rep.bound_mode = true;
    rep.note = "fixed " + std::to_string(*force_terms) + " terms";
    if (regime == Regime::Boundary) rep.note += "; parameter at the domain endpoint, uncertified";
  } else {
    Real target = min(tolerance, ctx.pow10(-ctx.digits)) / 10L;
    ev = sum_adaptive(spec, target, ctx, max_terms);
  }
  rep.series = ev.value;
  rep.terms_used = ev.terms_used;
  if (ev.truncation_bound) rep.certified_bound = *ev.truncation_bound + ev.rounding_bound;
  rep.abs_diff = abs(rep.series - rep.closed);
  const Real etol = closed_tolerance(ctx);
  rep.pass = rep.certified_bound && rep.abs_diff <= *rep.certified_bound + etol &&
             (rep.bound_mode || *rep.certified_bound <= tolerance);
  return rep;
}

}  // namespace cbs
