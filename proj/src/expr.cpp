#include "cbs/expr.hpp"

#include <cctype>
#include <map>

#include "cbs/errors.hpp"

namespace cbs {

namespace {

const std::map<std::string, std::string, std::less<>>& op_table() {
  static const std::map<std::string, std::string, std::less<>> t = {
      {"+", "add"},         {"-", "sub"},         {"*", "mul"},       {"/", "div"},
      {"neg", "neg"},       {"sqrt", "sqrt"},     {"pow", "pow"},     {"ln", "ln"},
      {"exp", "exp"},       {"arctan", "arctan"}, {"artanh", "artanh"}, {"arccot", "arccot"},
      {"arccoth", "arccoth"}, {"sin", "sin"},     {"cos", "cos"},     {"tan", "tan"}};
  return t;
}

bool is_symbol(std::string_view s) { return s == "alpha" || s == "beta" || s == "delta" || s == "pi"; }

// Exact reading of "-12", "3/4", "0.125", "1.5e-3".
std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string t(s);
  if (auto slash = t.find('/'); slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(t.substr(0, slash), 10) != 0 || den.set_str(t.substr(slash + 1), 10) != 0) return std::nullopt;
    if (t[slash + 1] == '-' || t[slash + 1] == '+') return std::nullopt;
    if (den == 0) throw UsageError("zero denominator in '" + t + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  long exp10 = 0;
  if (auto e = t.find_first_of("eE"); e != std::string::npos) {
    try {
      std::size_t used = 0;
      exp10 = std::stol(t.substr(e + 1), &used);
      if (used != t.size() - e - 1) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    t = t.substr(0, e);
  }
  std::string digits;
  bool neg = false;
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) neg = t[i++] == '-';
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) --exp10;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  Rational q{Integer(digits, 10)};
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) q /= p10; else q *= p10;
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse_all() {
    Expr e = parse_one();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw UsageError("expression parse error at offset " + std::to_string(pos_) + ": " + why + " in '" +
                     std::string(s_) + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string_view token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected a token");
    return s_.substr(start, pos_ - start);
  }
  Expr parse_one() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (s_[pos_] == ')') fail("unexpected ')'");
    if (s_[pos_] == '(') {
      ++pos_;
      std::string_view op = token();
      if (!op_table().contains(op)) fail("unknown operator '" + std::string(op) + "'");
      std::vector<Expr> args;
      for (;;) {
        skip_ws();
        if (pos_ >= s_.size()) fail("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        args.push_back(parse_one());
      }
      return Expr::call(std::string(op), std::move(args));
    }
    std::string_view tok = token();
    if (is_symbol(tok)) return Expr::symbol(std::string(tok));
    if (auto q = parse_rational(tok)) return Expr::number(*q);
    fail("bad atom '" + std::string(tok) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void check_arity(const std::string& op, std::size_t n) {
  bool ok = true;
  if (op == "+" || op == "*") ok = n >= 1;
  else if (op == "-") ok = n == 1 || n == 2;
  else if (op == "/" || op == "pow") ok = n == 2;
  else ok = n == 1;
  if (!ok) throw UsageError("operator '" + op + "' given " + std::to_string(n) + " argument(s)");
}

}  // namespace

Expr Expr::parse(std::string_view text) { return Parser(text).parse_all(); }

Expr Expr::number(const Rational& q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = q;
  n->value.canonicalize();
  return Expr(std::move(n));
}

Expr Expr::symbol(std::string name) {
  if (!is_symbol(name)) throw UsageError("unknown symbol '" + name + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::call(std::string op, std::vector<Expr> args) {
  if (!op_table().contains(op)) throw UsageError("unknown operator '" + op + "'");
  check_arity(op, args.size());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->name = std::move(op);
  n->args = std::move(args);
  return Expr(std::move(n));
}

std::string Expr::to_string() const {
  switch (kind()) {
    case Kind::Number:
      return value().get_str();
    case Kind::Symbol:
      return name();
    case Kind::Call: {
      std::string s = "(" + name();
      for (const auto& a : args()) s += " " + a.to_string();
      return s + ")";
    }
  }
  return {};
}

std::optional<Rational> Expr::as_rational() const {
  switch (kind()) {
    case Kind::Number:
      return value();
    case Kind::Symbol:
      return std::nullopt;
    case Kind::Call:
      break;
  }
  std::vector<Rational> v;
  for (const auto& a : args()) {
    auto q = a.as_rational();
    if (!q) return std::nullopt;
    v.push_back(*q);
  }
  const std::string& op = name();
  if (op == "+") {
    Rational s = 0;
    for (auto& q : v) s += q;
    return s;
  }
  if (op == "*") {
    Rational s = 1;
    for (auto& q : v) s *= q;
    return s;
  }
  if (op == "-") return v.size() == 1 ? Rational(-v[0]) : Rational(v[0] - v[1]);
  if (op == "neg") return Rational(-v[0]);
  if (op == "/") {
    if (v[1] == 0) throw DomainError("division by zero");
    return Rational(v[0] / v[1]);
  }
  if (op == "pow" && v[1].get_den() == 1 && mpz_fits_slong_p(v[1].get_num_mpz_t())) {
    long k = v[1].get_num().get_si();
    if (v[0] == 0 && k < 0) throw DomainError("pow: zero to a negative power");
    Integer num, den;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_pow_ui(num.get_mpz_t(), v[0].get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), v[0].get_den_mpz_t(), e);
    Rational r = k < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
  }
  return std::nullopt;
}

Real Expr::eval(const PrecisionContext& ctx) const {
  switch (kind()) {
    case Kind::Number:
      return ctx.from(value());
    case Kind::Symbol: {
      if (name() == "pi") return pi(ctx.bits());
      Real s5 = sqrt(ctx.from(5));
      if (name() == "alpha") return (s5 + 1L) / 2L;
      if (name() == "beta") return (1L - s5) / 2L;
      return sqrt(ctx.from(2)) + 1L;
    }
    case Kind::Call:
      break;
  }
  if (auto q = as_rational()) return ctx.from(*q);
  if (name() == "pow") {
    auto e = args()[1].as_rational();
    if (!e) throw UsageError("pow exponent must be rational: " + args()[1].to_string());
    return pow(args()[0].eval(ctx), *e);
  }
  std::vector<Real> v;
  v.reserve(args().size());
  for (const auto& a : args()) v.push_back(a.eval(ctx));
  std::string op = op_table().find(name())->second;
  if (op == "sub" && v.size() == 1) op = "neg";
  return elementary_real(op, v, ctx);
}

Expr parse_value(std::string_view text) {
  std::string t(text);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (t.empty()) throw UsageError("empty value");
  if (t.front() == '(') return Expr::parse(t);
  // pi forms: pi, -pi, pi/K, -pi/K, K*pi/M is not accepted.
  std::string_view v = t;
  bool neg = false;
  if (!v.empty() && v.front() == '-') {
    neg = true;
    v.remove_prefix(1);
  }
  if (v.starts_with("pi")) {
    Expr e = Expr::symbol("pi");
    std::string_view rest = v.substr(2);
    if (!rest.empty()) {
      if (rest.front() != '/') throw UsageError("bad angle '" + t + "' (use pi/K)");
      auto k = parse_rational(rest.substr(1));
      if (!k || *k == 0) throw UsageError("bad angle '" + t + "' (use pi/K)");
      e = Expr::call("/", {e, Expr::number(*k)});
    }
    return neg ? Expr::call("neg", {e}) : e;
  }
  if (auto q = parse_rational(t)) return Expr::number(*q);
  throw UsageError("not a number: '" + t + "'");
}

}  // namespace cbs
