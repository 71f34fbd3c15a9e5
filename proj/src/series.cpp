#include "cbs/series.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "cbs/exact.hpp"

namespace cbs {

namespace {

enum class Group { F, T, C, G, H, I, J };
enum class Weight { Odd, Plain, N };

struct Info {
  Family id;
  const char* name;
  Group group;
  SignPattern pattern;
  Weight weight;
  Sequence native;
};

constexpr SignPattern kCeil = SignPattern::CeilHalf;
constexpr SignPattern kFloor = SignPattern::FloorHalf;
constexpr SignPattern kAlt = SignPattern::Alternating;
constexpr SignPattern kPlus = SignPattern::Plus;
constexpr Sequence kFib = Sequence::Fibonacci;
constexpr Sequence kLuc = Sequence::Lucas;

constexpr std::array<Info, 34> kInfo = {{
    {Family::F1, "F1", Group::F, kCeil, Weight::Odd, kFib},
    {Family::F2, "F2", Group::F, kFloor, Weight::Odd, kFib},
    {Family::F3, "F3", Group::F, kCeil, Weight::Plain, kFib},
    {Family::F4, "F4", Group::F, kFloor, Weight::Plain, kFib},
    {Family::F5, "F5", Group::F, kCeil, Weight::N, kFib},
    {Family::F6, "F6", Group::F, kFloor, Weight::N, kFib},
    {Family::T1, "T1", Group::T, kCeil, Weight::Odd, kFib},
    {Family::T2, "T2", Group::T, kFloor, Weight::Odd, kFib},
    {Family::T3, "T3", Group::T, kCeil, Weight::Plain, kFib},
    {Family::T4, "T4", Group::T, kFloor, Weight::Plain, kFib},
    {Family::T5, "T5", Group::T, kCeil, Weight::N, kFib},
    {Family::T6, "T6", Group::T, kFloor, Weight::N, kFib},
    {Family::C1, "C1", Group::C, kAlt, Weight::Plain, kFib},
    {Family::C2, "C2", Group::C, kAlt, Weight::Plain, kFib},
    {Family::G1, "G1", Group::G, kCeil, Weight::Odd, kFib},
    {Family::G2, "G2", Group::G, kCeil, Weight::Odd, kLuc},
    {Family::G3, "G3", Group::G, kFloor, Weight::Odd, kFib},
    {Family::G4, "G4", Group::G, kFloor, Weight::Odd, kLuc},
    {Family::G5, "G5", Group::G, kCeil, Weight::Plain, kFib},
    {Family::G6, "G6", Group::G, kCeil, Weight::Plain, kLuc},
    {Family::G7, "G7", Group::G, kFloor, Weight::Plain, kFib},
    {Family::G8, "G8", Group::G, kFloor, Weight::Plain, kLuc},
    {Family::G9, "G9", Group::G, kFloor, Weight::N, kFib},
    {Family::G10, "G10", Group::G, kFloor, Weight::N, kLuc},
    {Family::G11, "G11", Group::G, kCeil, Weight::N, kFib},
    {Family::G12, "G12", Group::G, kCeil, Weight::N, kLuc},
    {Family::H1, "H1", Group::H, kAlt, Weight::Plain, kFib},
    {Family::H2, "H2", Group::H, kPlus, Weight::Plain, kFib},
    {Family::H3, "H3", Group::H, kAlt, Weight::Plain, kFib},
    {Family::H4, "H4", Group::H, kPlus, Weight::Plain, kFib},
    {Family::I1, "I1", Group::I, kPlus, Weight::Plain, kLuc},
    {Family::I2, "I2", Group::I, kPlus, Weight::Plain, kLuc},
    {Family::I3, "I3", Group::I, kPlus, Weight::Plain, kLuc},
    {Family::J1, "J1", Group::J, kPlus, Weight::Plain, kFib},
}};

const Info& info(Family f) { return kInfo[static_cast<std::size_t>(f)]; }

bool is_h34(Family f) { return f == Family::H3 || f == Family::H4; }

// |a - b| small relative to the working precision: used to detect domain endpoints.
bool near(const Real& a, const Real& b, const PrecisionContext& ctx) {
  Real d = abs(a - b);
  Real scale = max(abs(b), ctx.from(1));
  Real eps(ctx.bits());
  mpfr_set_ui_2exp(eps.raw(), 1, 24 - ctx.bits(), MPFR_RNDN);
  return d <= eps * scale;
}

const Expr& need(const std::optional<Expr>& e, const char* what, const FamilySpec& spec) {
  if (!e) throw UsageError(std::string(family_name(spec.id)) + " needs parameter " + what);
  return *e;
}

Real param_x(const FamilySpec& spec, const PrecisionContext& ctx) { return need(spec.x, "x", spec).eval(ctx); }
Real param_phi(const FamilySpec& spec, const PrecisionContext& ctx) { return need(spec.phi, "phi", spec).eval(ctx); }
Real param_p(const FamilySpec& spec, const PrecisionContext& ctx) { return need(spec.p, "p", spec).eval(ctx); }

Integer seq_value(Sequence q, long k) {
  FibLucas fl = fib_lucas(k);
  return q == Sequence::Fibonacci ? fl.fib : fl.lucas;
}

// Bound inflation covering rounding in the bound's own evaluation.
Real inflate(const Real& v) {
  Real f(v.precision());
  mpfr_set_ui_2exp(f.raw(), 1, -20, MPFR_RNDN);
  return v * (f + 1L);
}

// ---------------------------------------------------------------------------
// Term stream: running products over small exact integer ratios.

class TermStream {
 public:
  TermStream(const FamilySpec& spec, const PrecisionContext& ctx) : spec_(spec), ctx_(ctx), inf_(info(spec.id)) {
    const long bits = ctx.bits();
    P_ = Real(1L, bits);
    base_ = Real(1L, bits);
    H_ = Real(1L, bits);
    t_ = Real(bits);
    switch (inf_.group) {
      case Group::F: {
        Real x = param_x(spec, ctx);
        if (inf_.weight == Weight::Odd) {
          P_ = x;
          base_ = x * x;
        } else {
          base_ = x;
        }
        break;
      }
      case Group::T:
        base_ = tan(param_phi(spec, ctx));
        break;
      case Group::C: {
        Real x = param_x(spec, ctx);
        base_ = pow(x, 4L);
        P_ = spec.id == Family::C1 ? x : 2L * pow(x, 3L);
        break;
      }
      case Group::G: {
        base_ = 4L / param_p(spec, ctx);
        Sequence q = effective_sequence(spec);
        w_prev_ = seq_value(q, spec.s - spec.m);
        w_cur_ = seq_value(q, spec.s);
        lm_ = fib_lucas(spec.m).lucas;
        step_odd_ = (spec.m % 2) != 0;
        break;
      }
      case Group::H:
        base_ = param_x(spec, ctx);
        if (is_h34(spec.id)) P_ = Real(bits);
        break;
      case Group::I: {
        long r = std::labs(spec.r);
        if (spec.id == Family::I1) {
          Integer lr = fib_lucas(r).lucas;
          base_ = 1L / ctx.from(lr);
          w_prev_ = fib_lucas(-r).lucas;
          w_cur_ = 2;
          lm_ = lr;
          step_odd_ = false;
        } else if (spec.id == Family::I2) {
          Integer lr = fib_lucas(r).lucas;
          base_ = ctx.from(Rational(Integer(4), lr * lr));
        } else {
          base_ = ctx.from(Rational(4, 5));
        }
        break;
      }
      case Group::J:
        break;
    }
    compute_term();
  }

  long n() const { return n_; }
  const Real& term() const { return t_; }
  const Real& base() const { return base_; }

  /// Upper bound on |t_n| that follows the geometric model's ratio.
  Real majorant() const {
    if (inf_.group != Group::G) return abs(t_);
    Constants c = constants(ctx_);
    long k = std::labs(spec_.m * n_ + spec_.s);
    Real ak = pow(c.alpha, k);
    Real m = abs(P_) * (ak + 1L / ak);
    if (inf_.weight == Weight::Odd) m /= (2 * n_ + 1);
    if (inf_.weight == Weight::N) m *= n_;
    return m;
  }

  void advance() {
    const unsigned long n = static_cast<unsigned long>(n_);
    mpfr_ptr P = P_.raw();
    switch (inf_.group) {
      case Group::F:
      case Group::T:
      case Group::G:
        mpfr_mul_ui(P, P, 2 * n + 1, MPFR_RNDN);
        mpfr_div_ui(P, P, 2 * n + 2, MPFR_RNDN);
        mpfr_mul(P, P, base_.raw(), MPFR_RNDN);
        break;
      case Group::C:
        if (spec_.id == Family::C1) {
          mpfr_mul_ui(P, P, 4 * (4 * n + 1) * (4 * n + 3), MPFR_RNDN);
          mpfr_div_ui(P, P, (2 * n + 1) * (2 * n + 2), MPFR_RNDN);
        } else {
          mpfr_mul_ui(P, P, 4 * (4 * n + 3) * (4 * n + 5), MPFR_RNDN);
          mpfr_div_ui(P, P, (2 * n + 2) * (2 * n + 3), MPFR_RNDN);
        }
        mpfr_mul(P, P, base_.raw(), MPFR_RNDN);
        break;
      case Group::H:
        if (is_h34(spec_.id)) {
          if (n == 0) {
            mpfr_div_ui(P, base_.raw(), 2, MPFR_RNDN);
          } else {
            mpfr_mul_ui(P, P, (4 * n - 1) * (4 * n + 1), MPFR_RNDN);
            mpfr_div_ui(P, P, (4 * n) * (4 * n + 2), MPFR_RNDN);
            mpfr_mul(P, P, base_.raw(), MPFR_RNDN);
          }
          break;
        }
        [[fallthrough]];
      case Group::I:
      case Group::J:
        mpfr_mul_ui(P, P, (4 * n + 1) * (4 * n + 3), MPFR_RNDN);
        mpfr_div_ui(P, P, (4 * n + 2) * (4 * n + 4), MPFR_RNDN);
        if (inf_.group != Group::J) mpfr_mul(P, P, base_.raw(), MPFR_RNDN);
        break;
    }
    if (inf_.group == Group::G || spec_.id == Family::I1) {
      Integer next = lm_ * w_cur_;
      if (step_odd_) next += w_prev_;
      else next -= w_prev_;
      w_prev_ = std::move(w_cur_);
      w_cur_ = std::move(next);
    }
    if (inf_.group == Group::J) add_harmonic(n + 2);  // H_{n+2} for the next index
    ++n_;
    compute_term();
  }

 private:
  void add_harmonic(unsigned long k) {
    Real inv(ctx_.bits());
    mpfr_ui_div(inv.raw(), 1, Real(static_cast<long>(k), ctx_.bits()).raw(), MPFR_RNDN);
    H_ += inv;
  }

  void compute_term() {
    mpfr_ptr t = t_.raw();
    mpfr_set(t, P_.raw(), MPFR_RNDN);
    const unsigned long n = static_cast<unsigned long>(n_);
    switch (inf_.group) {
      case Group::F:
      case Group::T:
      case Group::G:
        if (inf_.group == Group::G) {
          Real w(ctx_.bits());
          mpfr_set_z(w.raw(), w_cur_.get_mpz_t(), MPFR_RNDN);
          mpfr_mul(t, t, w.raw(), MPFR_RNDN);
        }
        if (inf_.weight == Weight::Odd) mpfr_div_ui(t, t, 2 * n + 1, MPFR_RNDN);
        if (inf_.weight == Weight::N) mpfr_mul_ui(t, t, n, MPFR_RNDN);
        break;
      case Group::C:
        mpfr_div_ui(t, t, spec_.id == Family::C1 ? 4 * n + 1 : 4 * n + 3, MPFR_RNDN);
        break;
      case Group::H:
        break;
      case Group::I:
        if (spec_.id == Family::I1) {
          Real w(ctx_.bits());
          mpfr_set_z(w.raw(), w_cur_.get_mpz_t(), MPFR_RNDN);
          mpfr_mul(t, t, w.raw(), MPFR_RNDN);
        }
        break;
      case Group::J:
        mpfr_mul(t, t, H_.raw(), MPFR_RNDN);
        mpfr_div_ui(t, t, n + 1, MPFR_RNDN);
        break;
    }
    if (sign(inf_.pattern, n_) < 0) mpfr_neg(t, t, MPFR_RNDN);
  }

  const FamilySpec& spec_;
  const PrecisionContext& ctx_;
  const Info& inf_;
  long n_ = 0;
  Real P_, base_, H_, t_;
  Integer w_prev_, w_cur_, lm_;
  bool step_odd_ = false;
};

// ---------------------------------------------------------------------------
// Tail models.

enum class TailKind { Geometric, Leibniz, Integral };

struct TailModel {
  TailKind kind = TailKind::Geometric;
  Real q;               // sup of the majorant ratio (before the n-dependent factor)
  bool n_factor = false;  // multiply q by (2n+1)/(2n) at the first omitted index
  double q_limit = 0;   // asymptotic ratio, used only for fail-fast projection
  long m = 0, s = 0;    // G: |mn+s| must be nondecreasing from the first omitted index

  // Bound on the tail starting at the stream's current index.
  std::optional<Real> tail(const TermStream& st, const PrecisionContext& ctx) const {
    const long n = st.n();
    if (kind == TailKind::Integral) {
      long N = n - 1;
      if (N < 1) return std::nullopt;
      Real lnN = log(ctx.from(N));
      Real b = 2L * (lnN + 4L) / (sqrt(ctx.from(N)) * sqrt(2L * pi(ctx.bits())));
      return inflate(b);
    }
    if (kind == TailKind::Leibniz) return inflate(abs(st.term()));
    if (m != 0 && (m * n + s) * m < 0) return std::nullopt;
    Real qq = q;
    if (n_factor) {
      if (n == 0) return std::nullopt;
      qq = qq * (2 * n + 1) / (2 * n);
    }
    if (qq >= 1L) return std::nullopt;
    return inflate(st.majorant() / (1L - qq));
  }

  // Optimistic estimate of the bound after `cap` terms; used only to give up early.
  double projected_log10(const TermStream& st, long cap, const PrecisionContext& ctx) const {
    const double n = static_cast<double>(st.n());
    const double c = static_cast<double>(cap);
    if (kind == TailKind::Integral) return std::log10(2.0 * (std::log(c) + 4.0) / (std::sqrt(c) * std::sqrt(2 * M_PI)));
    Real mj = st.majorant();
    if (mj.is_zero()) return -1e9;
    double lm = log(abs(mj)).to_double() / std::log(10.0);
    if (kind == TailKind::Leibniz) {
      double geo = q_limit > 0 ? (c - n) * std::log10(q_limit) : -1e9;
      return lm + 1.5 * std::log10(n / c) + geo - std::log10(2.0);
    }
    (void)ctx;
    if (q_limit <= 0) return -1e9;
    return lm + (c - n) * std::log10(q_limit) - std::log10(1.0 - q_limit);
  }
};

TailModel make_model(const FamilySpec& spec, const PrecisionContext& ctx) {
  const Info& inf = info(spec.id);
  TailModel t;
  t.q = ctx.from(0);
  switch (inf.group) {
    case Group::F: {
      Real ax = abs(param_x(spec, ctx));
      t.q = inf.weight == Weight::Odd ? ax * ax : ax;
      t.n_factor = inf.weight == Weight::N;
      break;
    }
    case Group::T:
      t.q = abs(tan(param_phi(spec, ctx)));
      t.n_factor = inf.weight == Weight::N;
      break;
    case Group::C:
      t.kind = TailKind::Leibniz;
      t.q = 16L * pow(param_x(spec, ctx), 4L);
      break;
    case Group::G: {
      Constants c = constants(ctx);
      t.q = 4L * pow(c.alpha, std::labs(spec.m)) / param_p(spec, ctx);
      t.n_factor = inf.weight == Weight::N;
      t.m = spec.m;
      t.s = spec.s;
      break;
    }
    case Group::H:
      t.q = abs(param_x(spec, ctx));
      break;
    case Group::I: {
      long r = std::labs(spec.r);
      if (spec.id == Family::I1) t.q = pow(constants(ctx).alpha, r) / ctx.from(fib_lucas(r).lucas);
      else if (spec.id == Family::I2) t.q = 4L / pow(ctx.from(fib_lucas(r).lucas), 2L);
      else t.q = ctx.from(Rational(4, 5));
      break;
    }
    case Group::J:
      t.kind = TailKind::Integral;
      break;
  }
  t.q_limit = t.q.to_double();
  return t;
}

// ---------------------------------------------------------------------------
// Rounding tally: every term carries relative error <= (16 + 16n)u from the
// running product; the partial sums add u|S_n| each. Accumulated upward at 64 bits.

class RoundingTally {
 public:
  RoundingTally() : a_(64), an_(64), s_(64), tmp_(64) {}

  void add(const Real& t, long n, const Real& S) {
    mpfr_abs(tmp_.raw(), t.raw(), MPFR_RNDU);
    mpfr_add(a_.raw(), a_.raw(), tmp_.raw(), MPFR_RNDU);
    mpfr_mul_ui(tmp_.raw(), tmp_.raw(), static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_add(an_.raw(), an_.raw(), tmp_.raw(), MPFR_RNDU);
    mpfr_abs(tmp_.raw(), S.raw(), MPFR_RNDU);
    mpfr_add(s_.raw(), s_.raw(), tmp_.raw(), MPFR_RNDU);
  }

  Real bound(const PrecisionContext& ctx) const {
    Real b(64), t(64);
    mpfr_add(t.raw(), a_.raw(), an_.raw(), MPFR_RNDU);
    mpfr_mul_ui(t.raw(), t.raw(), 16, MPFR_RNDU);
    mpfr_add(b.raw(), t.raw(), s_.raw(), MPFR_RNDU);
    mpfr_mul_d(b.raw(), b.raw(), 1.01, MPFR_RNDU);
    mpfr_mul_2si(b.raw(), b.raw(), 1 - ctx.bits(), MPFR_RNDU);
    Real out(ctx.bits());
    mpfr_set(out.raw(), b.raw(), MPFR_RNDU);
    return out;
  }

 private:
  Real a_, an_, s_, tmp_;
};

[[noreturn]] void refuse_endpoint(const FamilySpec& spec) {
  throw UncertifiedError(describe(spec) +
                         ": parameter at the domain endpoint; no certified tail bound (use a fixed term count)");
}

}  // namespace

// ---------------------------------------------------------------------------

int sign(SignPattern pattern, long n) {
  switch (pattern) {
    case SignPattern::CeilHalf:
      return ceil_half(n) % 2 == 0 ? 1 : -1;
    case SignPattern::FloorHalf:
      return floor_half(n) % 2 == 0 ? 1 : -1;
    case SignPattern::Alternating:
      return n % 2 == 0 ? 1 : -1;
    case SignPattern::Plus:
      return 1;
  }
  return 1;
}

std::string_view family_name(Family f) { return info(f).name; }

Family parse_family(std::string_view name) {
  std::string up(name);
  for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const Info& i : kInfo)
    if (up == i.name) return i.id;
  throw UsageError("unknown family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> v = [] {
    std::vector<Family> out;
    for (const Info& i : kInfo) out.push_back(i.id);
    return out;
  }();
  return v;
}

SignPattern sign_pattern(Family f) { return info(f).pattern; }

std::string family_summary(Family f) {
  const Info& i = info(f);
  std::string sg = i.pattern == kCeil ? "(-1)^ceil(n/2) " : i.pattern == kFloor ? "(-1)^floor(n/2) "
                   : i.pattern == kAlt ? "(-1)^n " : "";
  std::string wt = i.weight == Weight::Odd ? " / (2n+1)" : i.weight == Weight::N ? " * n" : "";
  switch (i.group) {
    case Group::F:
      return sg + (i.weight == Weight::Odd ? "C(2n,n) x^(2n+1) / 4^n" : "C(2n,n) x^n / 4^n") + wt + "; |x| <= 1";
    case Group::T:
      return sg + "C(2n,n) tan(phi)^n / 4^n" + wt + "; |phi| <= pi/4";
    case Group::C:
      return f == Family::C1 ? "(-1)^n C(4n,2n) x^(4n+1) / (4n+1); |x| <= 1/2"
                             : "(-1)^n C(4n+2,2n+1) x^(4n+3) / (4n+3); |x| <= 1/2";
    case Group::G:
      return sg + "C(2n,n) " + (i.native == kFib ? "F" : "L") + "_(mn+s) / p^n" + wt + "; p >= 4 alpha^|m|";
    case Group::H:
      return is_h34(f) ? sg + "C(4n-2,2n-1) x^n / 2^(4n-2), n=0 term 0; |x| < 1" : sg + "C(4n,2n) x^n / 16^n; |x| < 1";
    case Group::I:
      if (f == Family::I1) return "C(4n,2n) L_(rn) / (16^n L_r^n); r even";
      if (f == Family::I2) return "C(4n,2n) / (4^n L_r^(2n)); r even, r != 0";
      return "C(4n,2n) / 20^n";
    case Group::J:
      return "C(4n,2n) H_(n+1) / (16^n (n+1))";
  }
  return {};
}

Sequence effective_sequence(const FamilySpec& spec) { return spec.seq.value_or(info(spec.id).native); }

std::string describe(const FamilySpec& spec) {
  const Info& i = info(spec.id);
  std::string d(i.name);
  switch (i.group) {
    case Group::F:
    case Group::C:
    case Group::H:
      if (spec.x) d += " x=" + spec.x->to_string();
      break;
    case Group::T:
      if (spec.phi) d += " phi=" + spec.phi->to_string();
      break;
    case Group::G:
      d += " m=" + std::to_string(spec.m) + " s=" + std::to_string(spec.s);
      if (spec.p) d += " p=" + spec.p->to_string();
      d += std::string(" seq=") + (effective_sequence(spec) == Sequence::Fibonacci ? "F" : "L");
      break;
    case Group::I:
      if (spec.id != Family::I3) d += " r=" + std::to_string(spec.r);
      break;
    case Group::J:
      break;
  }
  return d;
}

Regime validate(const FamilySpec& spec, const PrecisionContext& ctx) {
  const Info& inf = info(spec.id);
  const std::string who = describe(spec);
  switch (inf.group) {
    case Group::F:
    case Group::H: {
      Real ax = abs(param_x(spec, ctx));
      Real one = ctx.from(1);
      if (near(ax, one, ctx)) return Regime::Boundary;
      if (ax > one) throw UsageError(who + ": requires |x| <= 1");
      return Regime::Certified;
    }
    case Group::T: {
      Real aphi = abs(param_phi(spec, ctx));
      Real lim = pi(ctx.bits()) / 4L;
      if (near(aphi, lim, ctx)) return Regime::Boundary;
      if (aphi > lim) throw UsageError(who + ": requires |phi| <= pi/4");
      return Regime::Certified;
    }
    case Group::C: {
      Real ax = abs(param_x(spec, ctx));
      Real half = ctx.from(Rational(1, 2));
      if (ax > half && !near(ax, half, ctx)) throw UsageError(who + ": requires |x| <= 1/2");
      return Regime::Certified;
    }
    case Group::G: {
      Real p = param_p(spec, ctx);
      if (std::labs(spec.m) > 100000 || std::labs(spec.s) > 100000) throw UsageError(who + ": |m|, |s| too large");
      Real lim = 4L * pow(constants(ctx).alpha, std::labs(spec.m));
      if (near(p, lim, ctx)) return Regime::Boundary;
      if (p < lim) throw UsageError(who + ": requires p >= 4 alpha^|m|");
      return Regime::Certified;
    }
    case Group::I:
      if (spec.id == Family::I3) return Regime::Certified;
      if (spec.r % 2 != 0) throw UsageError(who + ": r must be even");
      if (spec.id == Family::I2 && spec.r == 0) throw UsageError(who + ": r must be nonzero");
      if (std::labs(spec.r) > 1000) throw UsageError(who + ": |r| too large");
      return Regime::Certified;
    case Group::J:
      return Regime::Certified;
  }
  return Regime::Certified;
}

Real term(const FamilySpec& spec, long n, const PrecisionContext& ctx) {
  if (n < 0) throw UsageError("term index must be >= 0");
  validate(spec, ctx);
  const Info& inf = info(spec.id);
  const int sg = sign(inf.pattern, n);
  auto pow4 = [](long e) {
    Integer v;
    mpz_ui_pow_ui(v.get_mpz_t(), 4, static_cast<unsigned long>(e));
    return v;
  };
  Rational c;  // exact coefficient
  Real v = ctx.from(1);
  switch (inf.group) {
    case Group::F:
    case Group::T: {
      c = Rational(central_binomial(n), pow4(n));
      Real base = inf.group == Group::F ? param_x(spec, ctx) : tan(param_phi(spec, ctx));
      if (inf.group == Group::F && inf.weight == Weight::Odd) v = pow(base, 2 * n + 1);
      else v = n == 0 ? ctx.from(1) : pow(base, n);
      if (inf.weight == Weight::Odd) c /= (2 * n + 1);
      if (inf.weight == Weight::N) c *= n;
      break;
    }
    case Group::C: {
      Real x = param_x(spec, ctx);
      if (spec.id == Family::C1) {
        c = Rational(binomial(4 * n, 2 * n), 4 * n + 1);
        v = pow(x, 4 * n + 1);
      } else {
        c = Rational(binomial(4 * n + 2, 2 * n + 1), 4 * n + 3);
        v = pow(x, 4 * n + 3);
      }
      break;
    }
    case Group::G: {
      c = Rational(central_binomial(n) * seq_value(effective_sequence(spec), spec.m * n + spec.s));
      v = n == 0 ? ctx.from(1) : pow(param_p(spec, ctx), -n);
      if (inf.weight == Weight::Odd) c /= (2 * n + 1);
      if (inf.weight == Weight::N) c *= n;
      break;
    }
    case Group::H: {
      Real x = param_x(spec, ctx);
      if (is_h34(spec.id)) {
        if (n == 0) return ctx.from(0);
        c = Rational(binomial(4 * n - 2, 2 * n - 1), pow4(2 * n - 1));
      } else {
        c = Rational(binomial(4 * n, 2 * n), pow4(2 * n));
      }
      v = n == 0 ? ctx.from(1) : pow(x, n);
      break;
    }
    case Group::I: {
      long r = std::labs(spec.r);
      Integer num = binomial(4 * n, 2 * n);
      if (spec.id == Family::I1) {
        Integer lr = fib_lucas(r).lucas, lrn;
        mpz_pow_ui(lrn.get_mpz_t(), lr.get_mpz_t(), static_cast<unsigned long>(n));
        c = Rational(num * fib_lucas(r * n).lucas, pow4(2 * n) * lrn);
      } else if (spec.id == Family::I2) {
        Integer lr = fib_lucas(r).lucas, l2n;
        mpz_pow_ui(l2n.get_mpz_t(), lr.get_mpz_t(), static_cast<unsigned long>(2 * n));
        c = Rational(num, pow4(n) * l2n);
      } else {
        Integer d;
        mpz_ui_pow_ui(d.get_mpz_t(), 20, static_cast<unsigned long>(n));
        c = Rational(num, d);
      }
      break;
    }
    case Group::J:
      c = Rational(binomial(4 * n, 2 * n), pow4(2 * n)) * harmonic(n + 1) / (n + 1);
      break;
  }
  c.canonicalize();
  Real out = ctx.from(c) * v;
  return sg < 0 ? -out : out;
}

EvalResult sum_fixed(const FamilySpec& spec, long N, const PrecisionContext& ctx) {
  if (N < 0) throw UsageError("term count must be >= 0");
  Regime regime = validate(spec, ctx);
  TermStream st(spec, ctx);
  RoundingTally tally;
  Real S = ctx.zero();
  for (long n = 0; n <= N; ++n) {
    S += st.term();
    tally.add(st.term(), n, S);
    st.advance();
  }
  EvalResult r{S, N + 1, std::nullopt, tally.bound(ctx), false};
  if (regime == Regime::Certified) r.truncation_bound = make_model(spec, ctx).tail(st, ctx);
  return r;
}

std::optional<Real> tail_bound(const FamilySpec& spec, long N, const PrecisionContext& ctx) {
  if (N < 0) throw UsageError("term count must be >= 0");
  if (validate(spec, ctx) == Regime::Boundary) refuse_endpoint(spec);
  TailModel model = make_model(spec, ctx);
  if (model.kind == TailKind::Integral) {
    if (N < 1) return std::nullopt;
    Real b = 2L * (log(ctx.from(N)) + 4L) / (sqrt(ctx.from(N)) * sqrt(2L * pi(ctx.bits())));
    return inflate(b);
  }
  TermStream st(spec, ctx);
  for (long n = 0; n <= N; ++n) st.advance();
  return model.tail(st, ctx);
}

EvalResult sum_adaptive(const FamilySpec& spec, const Real& target, const PrecisionContext& ctx, long max_terms) {
  if (target.sign() <= 0) throw UsageError("target error must be > 0");
  if (max_terms < 1) throw UsageError("max terms must be >= 1");
  if (validate(spec, ctx) == Regime::Boundary) refuse_endpoint(spec);
  TailModel model = make_model(spec, ctx);
  TermStream st(spec, ctx);
  RoundingTally tally;
  Real S = ctx.zero();
  std::optional<Real> last_tail;
  const double target_log10 = log(target).to_double() / std::log(10.0);
  const long probe = std::min<long>(1024, max_terms);

  for (;;) {
    const long n = st.n();
    S += st.term();
    tally.add(st.term(), n, S);
    st.advance();
    const long used = n + 1;

    bool try_now;
    if (model.kind == TailKind::Integral) {
      const double N = static_cast<double>(n);
      try_now = n >= 1 && 2.0 * (std::log(N) + 4.0) / (std::sqrt(N) * std::sqrt(2 * M_PI)) <= 1.001 * target.to_double();
    } else {
      try_now = mpfr_cmpabs(st.term().raw(), target.raw()) <= 0;
    }
    if (try_now) {
      last_tail = model.tail(st, ctx);
      if (last_tail) {
        Real rb = tally.bound(ctx);
        if (*last_tail + rb <= target) return EvalResult{S, used, last_tail, rb, true};
      }
    }
    if (used == probe || used >= max_terms) {
      bool hopeless = used >= max_terms;
      if (!hopeless && model.projected_log10(st, max_terms, ctx) > target_log10) hopeless = true;
      if (hopeless) {
        EvalResult best{S, used, model.tail(st, ctx), tally.bound(ctx), false};
        throw ConvergenceError(describe(spec) + ": cannot reach error " + target.to_string(6) + " within " +
                                   std::to_string(max_terms) + " terms",
                               std::move(best));
      }
    }
  }
}

}  // namespace cbs
