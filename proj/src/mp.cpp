#include "cbs/mp.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "cbs/errors.hpp"

namespace cbs {

namespace {

[[noreturn]] void domain_fail(std::string_view fn, const Real& a) {
  throw DomainError(std::string(fn) + ": argument " + a.to_string(20) + " outside domain");
}

void check_finite(std::string_view fn, mpfr_srcptr v) {
  if (!mpfr_number_p(v)) throw DomainError(std::string(fn) + ": result not finite");
}

template <class F>
Real apply1(std::string_view fn, const Real& a, F f) {
  Real r(a.precision());
  f(r.raw(), a.raw(), MPFR_RNDN);
  check_finite(fn, r.raw());
  return r;
}

mpfr_prec_t max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

// ---------------------------------------------------------------------------
// PrecisionContext

mpfr_prec_t PrecisionContext::bits() const {
  // log2(10) = 3.3219...; four spare bits keep 2^-bits strictly under 10^-working.
  return static_cast<mpfr_prec_t>(std::ceil(working_digits() * 3.32192809488736234787)) + 4;
}

Real PrecisionContext::zero() const { return Real(bits()); }

Real PrecisionContext::from(long v) const { return Real(v, bits()); }

Real PrecisionContext::from(const mpz_class& v) const {
  Real r(bits());
  mpfr_set_z(r.raw(), v.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real PrecisionContext::from(const mpq_class& v) const {
  Real r(bits());
  mpfr_set_q(r.raw(), v.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real PrecisionContext::parse(std::string_view text) const {
  Real r(bits());
  std::string s(text);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(r.raw(), s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size()) throw UsageError("not a decimal number: '" + s + "'");
  return r;
}

Real PrecisionContext::pow10(long e) const {
  Real r(bits());
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
  return r;
}

Real PrecisionContext::unit_roundoff() const {
  Real r(bits());
  mpfr_set_ui_2exp(r.raw(), 1, 1 - bits(), MPFR_RNDN);
  return r;
}

PrecisionContext make_context(int digits, int guard_digits) {
  if (digits < 1) throw UsageError("digits must be >= 1 (got " + std::to_string(digits) + ")");
  if (guard_digits < 0) throw UsageError("guard digits must be >= 0");
  return PrecisionContext{digits, guard_digits};
}

// ---------------------------------------------------------------------------
// Real

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

std::string Real::to_string(int digits) const {
  if (is_zero()) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real& Real::operator+=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long k) {
  mpfr_mul_si(v_, v_, k, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long k) {
  if (k == 0) throw DomainError("division by zero");
  mpfr_div_si(v_, v_, k, MPFR_RNDN);
  return *this;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  Real r(max_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long k) {
  Real r(a.precision());
  mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}
Real operator*(long k, const Real& a) { return a * k; }
Real operator/(const Real& a, long k) {
  if (k == 0) throw DomainError("division by zero");
  Real r(a.precision());
  mpfr_div_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, long k) {
  Real r(a.precision());
  mpfr_add_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, long k) {
  Real r(a.precision());
  mpfr_sub_si(r.v_, a.v_, k, MPFR_RNDN);
  return r;
}
Real operator-(long k, const Real& a) {
  Real r(a.precision());
  mpfr_si_sub(r.v_, k, a.v_, MPFR_RNDN);
  return r;
}
Real operator/(long k, const Real& a) {
  if (a.is_zero()) throw DomainError("division by zero");
  Real r(a.precision());
  mpfr_si_div(r.v_, k, a.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, long k) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.v_, k);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

// ---------------------------------------------------------------------------
// Functions

Real abs(const Real& a) { return apply1("abs", a, mpfr_abs); }

Real sqrt(const Real& a) {
  if (a.sign() < 0) domain_fail("sqrt", a);
  return apply1("sqrt", a, mpfr_sqrt);
}

Real log(const Real& a) {
  if (a.sign() <= 0) domain_fail("ln", a);
  return apply1("ln", a, mpfr_log);
}

Real exp(const Real& a) { return apply1("exp", a, mpfr_exp); }

Real atan(const Real& a) { return apply1("arctan", a, mpfr_atan); }

Real atan2(const Real& y, const Real& x) {
  if (x.is_zero() && y.is_zero()) throw DomainError("atan2: both arguments zero");
  Real r(max_prec(x, y));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real atanh(const Real& a) {
  if (mpfr_cmpabs_ui(a.raw(), 1) >= 0) domain_fail("artanh", a);
  return apply1("artanh", a, mpfr_atanh);
}

Real acot(const Real& a) {
  if (a.is_zero()) domain_fail("arccot", a);
  return atan(1L / a);
}

Real acoth(const Real& a) {
  if (mpfr_cmpabs_ui(a.raw(), 1) <= 0) domain_fail("arccoth", a);
  return atanh(1L / a);
}

Real sin(const Real& a) { return apply1("sin", a, mpfr_sin); }
Real cos(const Real& a) { return apply1("cos", a, mpfr_cos); }

Real tan(const Real& a) {
  Real c = cos(a);
  if (c.is_zero()) domain_fail("tan", a);
  return apply1("tan", a, mpfr_tan);
}

Real lngamma(const Real& a) {
  if (a.sign() <= 0) domain_fail("lngamma", a);
  return apply1("lngamma", a, mpfr_lngamma);
}

Real pow(const Real& a, long k) {
  if (a.is_zero() && k < 0) domain_fail("pow", a);
  Real r(a.precision());
  mpfr_pow_si(r.raw(), a.raw(), k, MPFR_RNDN);
  check_finite("pow", r.raw());
  return r;
}

Real pow(const Real& a, const mpq_class& e) {
  mpq_class q = e;
  q.canonicalize();
  if (q.get_den() == 1) return pow(a, q.get_num().get_si());
  bool odd_root = mpz_odd_p(q.get_den().get_mpz_t()) != 0;
  if (a.sign() < 0 && !odd_root) domain_fail("pow", a);
  if (a.is_zero()) {
    if (q < 0) domain_fail("pow", a);
    return Real(a.precision());
  }
  // |a|^(p/q) via root then power keeps the sign rule for odd q explicit.
  Real root(a.precision());
  mpfr_rootn_ui(root.raw(), abs(a).raw(), q.get_den().get_ui(), MPFR_RNDN);
  Real r = pow(root, q.get_num().get_si());
  if (a.sign() < 0 && mpz_odd_p(q.get_num().get_mpz_t())) r = -r;
  return r;
}

int sgn(const Real& a) { return a.sign() > 0 ? 1 : a.sign() < 0 ? -1 : 0; }

Real pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real elementary_real(std::string_view op, std::span<const Real> args, const PrecisionContext& ctx) {
  auto want = [&](std::size_t n) {
    if (args.size() != n) {
      throw UsageError(std::string(op) + " expects " + std::to_string(n) + " argument(s), got " +
                       std::to_string(args.size()));
    }
  };
  auto at = [&](std::size_t i) {
    Real r = args[i];
    if (r.precision() < ctx.bits()) mpfr_prec_round(r.raw(), ctx.bits(), MPFR_RNDN);
    return r;
  };
  if (op == "add" || op == "mul") {
    if (args.empty()) throw UsageError(std::string(op) + " expects at least one argument");
    Real acc = at(0);
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (op == "add") acc += args[i]; else acc *= args[i];
    }
    return acc;
  }
  if (op == "sub") { want(2); return at(0) - at(1); }
  if (op == "div") { want(2); return at(0) / at(1); }
  if (op == "neg") { want(1); return -at(0); }
  if (op == "pow") {
    want(2);
    // Exponent must be an exact rational; we recover it from the value, which
    // the expression layer always produces from integer or p/q literals.
    Real e = at(1);
    if (mpfr_integer_p(e.raw())) return pow(at(0), mpfr_get_si(e.raw(), MPFR_RNDN));
    if (at(0).sign() <= 0) domain_fail("pow", at(0));
    return exp(e * log(at(0)));
  }
  if (op == "sqrt") { want(1); return sqrt(at(0)); }
  if (op == "ln") { want(1); return log(at(0)); }
  if (op == "exp") { want(1); return exp(at(0)); }
  if (op == "arctan") { want(1); return atan(at(0)); }
  if (op == "artanh") { want(1); return atanh(at(0)); }
  if (op == "arccot") { want(1); return acot(at(0)); }
  if (op == "arccoth") { want(1); return acoth(at(0)); }
  if (op == "sin") { want(1); return sin(at(0)); }
  if (op == "cos") { want(1); return cos(at(0)); }
  if (op == "tan") { want(1); return tan(at(0)); }
  if (op == "abs") { want(1); return abs(at(0)); }
  if (op == "sgn") { want(1); return ctx.from(sgn(at(0))); }
  throw UsageError("unknown function '" + std::string(op) + "'");
}

Constants constants(const PrecisionContext& ctx) {
  Real s5 = sqrt(ctx.from(5));
  Real alpha = (s5 + 1L) / 2L;
  Real beta = -1L / alpha;
  Real delta = sqrt(ctx.from(2)) + 1L;
  return Constants{alpha, beta, delta, s5, pi(ctx.bits())};
}

}  // namespace cbs
