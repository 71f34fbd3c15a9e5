#include "cbs/closed.hpp"

#include "cbs/exact.hpp"

namespace cbs {

namespace {

Complex cx(const Real& r) { return Complex(r); }

ClosedValue real_only(Real v) {
  Real zero(v.precision());
  return ClosedValue{std::move(v), std::move(zero)};
}

ClosedValue from_complex(const Complex& z) { return ClosedValue{z.re(), abs(z.im())}; }

Real tolerance_residue(const PrecisionContext& ctx) { return ctx.pow10(3 - ctx.digits); }

// A = p^2 + 16 z^(2m) and z^m.
struct MapParts {
  Complex zm;
  Complex A;
  Complex sqrtA;
};

MapParts parts(const Complex& z, long m, const Real& p) {
  if (p.sign() <= 0) throw DomainError("p must be > 0");
  Complex zm = pow(z, m);
  Complex A = Complex(p * p) + zm * zm * 16L;
  if (A.is_zero()) throw DomainError("p^2 + 16 z^(2m) = 0");
  return MapParts{zm, A, sqrt(A)};
}

ClosedValue closed_f(Family id, const Real& x) {
  Real one(1L, x.precision());
  Real s = sqrt(one + x * x);  // sqrt(1+x^2)
  Real q = one + x * x;
  switch (id) {
    case Family::F1:
    case Family::F2: {
      Real u = x / sqrt(one + sqrt(one + pow(x, 4L)));
      Real f = id == Family::F1 ? atan(u) : atanh(u);
      return real_only(sqrt(Real(2L, x.precision())) * f);
    }
    case Family::F3:
      return real_only(sqrt((s - x) / q));
    case Family::F4:
      return real_only(sqrt((s + x) / q));
    case Family::F5:
      return real_only(-(x / 2L) * (s + 2L * x) * sqrt((s - x) / pow(q, 3L)));
    case Family::F6:
      return real_only((x / 2L) * (s - 2L * x) * sqrt((s + x) / pow(q, 3L)));
    default:
      break;
  }
  throw UsageError("not an F family");
}

ClosedValue closed_t(Family id, const Real& phi, const PrecisionContext& ctx) {
  Real quarter_pi = pi(ctx.bits()) / 4L;
  Real c = cos(phi), s = sin(phi);
  switch (id) {
    case Family::T1:
    case Family::T2: {
      if (phi.is_zero()) return real_only(ctx.from(1));
      // sgn(phi) sqrt(2 cot phi) f(sqrt(tan(phi/2))); complex for phi < 0.
      Complex a = sqrt(cx(2L * c / s));
      Complex b = sqrt(cx(tan(phi / 2L)));
      Complex f = id == Family::T1 ? atan(b) : atanh(b);
      Complex v = a * f;
      if (phi.sign() < 0) v = -v;
      return from_complex(v);
    }
    case Family::T3:
      return real_only(sqrt(2L * c) * cos(phi / 2L + quarter_pi));
    case Family::T4:
      return real_only(sqrt(2L * c) * cos(phi / 2L - quarter_pi));
    case Family::T5:
      return real_only((1L + 2L * s) / (2L * sqrt(2L * c)) * sin(2L * phi) * sin(phi / 2L - quarter_pi));
    case Family::T6: {
      Real sq = sin(phi / 2L + quarter_pi);
      Real poly = cos(2L * phi) - sin(2L * phi) + c + 3L * s - 2L;
      return real_only(cos(phi / 2L) * sq * sq / sqrt(c) * poly);
    }
    default:
      break;
  }
  throw UsageError("not a T family");
}

ClosedValue closed_g(const FamilySpec& spec, const PrecisionContext& ctx) {
  Constants k = constants(ctx);
  Real p = spec.p->eval(ctx);
  const long m = spec.m, s = spec.s;
  const bool fib = effective_sequence(spec) == Sequence::Fibonacci;
  const int id = static_cast<int>(spec.id) - static_cast<int>(Family::G1) + 1;
  const bool ceil_sign = id == 1 || id == 2 || id == 5 || id == 6 || id == 11 || id == 12;

  auto part = [&](const Complex& z) -> Complex {
    if (id <= 4) {
      Complex h = h_map(z, m, p, ctx);
      Complex f = ceil_sign ? atan(h) : atanh(h);
      return pow(z, s) / sqrt(pow(z, m)) * f;
    }
    if (id <= 8) return pow(z, s) * r_map(z, m, p, ceil_sign ? -1 : 1, ctx);
    return pow(z, m + s) * t_map(z, m, p, ceil_sign ? -1 : 1, ctx);
  };

  Complex a = part(cx(k.alpha));
  Complex b = part(cx(k.beta));
  Complex comb = fib ? (a - b) * (1L / k.sqrt5) : a + b;
  Real pre = id <= 4 ? sqrt(p / 2L) : id <= 8 ? sqrt(p) : -2L * sqrt(p);
  return from_complex(comb * pre);
}

ClosedValue closed_h(Family id, const Real& x, const PrecisionContext& ctx) {
  Real one = ctx.from(1);
  Real inv_sqrt2 = 1L / sqrt(ctx.from(2));
  switch (id) {
    case Family::H1:
      return real_only(inv_sqrt2 * sqrt(one + sqrt(one + x)) / sqrt(one + x));
    case Family::H2:
      return real_only(inv_sqrt2 * sqrt(one + sqrt(one - x)) / sqrt(one - x));
    case Family::H3: {
      Complex z = cx(x);
      Complex v = sqrt(z / 2L) * sqrt(sqrt(z + 1L) + (-1L)) / sqrt(z + 1L);
      return from_complex(-v);
    }
    case Family::H4: {
      Complex z = cx(x);
      Complex v = sqrt(z / 2L) * sqrt(1L - sqrt(1L - z)) / sqrt(1L - z);
      return from_complex(v);
    }
    default:
      break;
  }
  throw UsageError("not an H family");
}

ClosedValue closed_i(const FamilySpec& spec, const PrecisionContext& ctx) {
  Constants k = constants(ctx);
  const long r = std::labs(spec.r);
  switch (spec.id) {
    case Family::I1: {
      Real L = ctx.from(fib_lucas(r).lucas);
      Real h = pow(k.alpha, r / 2);
      Real M = h + 1L / h;  // alpha^(r/2) + alpha^(-r/2)
      Real sL = sqrt(L);
      Real inner = pow(L, Rational(3, 2)) + M + 2L * sqrt(1L + L + sL * M);
      return real_only(pow(L, Rational(1, 4)) / sqrt(ctx.from(2)) * sqrt(inner));
    }
    case Family::I2: {
      Real L = ctx.from(fib_lucas(r).lucas);
      Real F = ctx.from(fib_lucas(r).fib);
      return real_only(sqrt(5L * pow(k.alpha, r) * L) / (5L * F));
    }
    case Family::I3:
      return real_only(sqrt(k.alpha * k.sqrt5));
    default:
      break;
  }
  throw UsageError("not an I family");
}

}  // namespace

Complex h_map(const Complex& z, long m, const Real& p, const PrecisionContext& ctx) {
  (void)ctx;
  MapParts q = parts(z, m, p);
  Complex den = sqrt(q.sqrtA + Complex(p));
  if (den.is_zero()) throw DomainError("h: zero denominator");
  return sqrt(q.zm) * 2L / den;
}

Complex r_map(const Complex& z, long m, const Real& p, int sign, const PrecisionContext& ctx) {
  (void)ctx;
  MapParts q = parts(z, m, p);
  Complex num = sign > 0 ? q.sqrtA + q.zm * 4L : q.sqrtA - q.zm * 4L;
  return sqrt(num / q.A);
}

Complex t_map(const Complex& z, long m, const Real& p, int sign, const PrecisionContext& ctx) {
  (void)ctx;
  MapParts q = parts(z, m, p);
  Complex lead = sign > 0 ? q.zm * 8L - q.sqrtA : q.zm * 8L + q.sqrtA;
  Complex num = sign > 0 ? q.sqrtA + q.zm * 4L : q.sqrtA - q.zm * 4L;
  return lead * sqrt(num / (q.A * q.A * q.A));
}

ClosedValue closed_value_detailed(const FamilySpec& spec, const PrecisionContext& ctx) {
  validate(spec, ctx);
  switch (spec.id) {
    case Family::F1: case Family::F2: case Family::F3:
    case Family::F4: case Family::F5: case Family::F6:
      return closed_f(spec.id, spec.x->eval(ctx));
    case Family::T1: case Family::T2: case Family::T3:
    case Family::T4: case Family::T5: case Family::T6:
      return closed_t(spec.id, spec.phi->eval(ctx), ctx);
    case Family::C1:
    case Family::C2: {
      Real x = spec.x->eval(ctx);
      Real u = 2L * x / sqrt(1L + sqrt(1L + 16L * pow(x, 4L)));
      Real v = spec.id == Family::C1 ? atanh(u) + atan(u) : atanh(u) - atan(u);
      return real_only(sqrt(ctx.from(2)) / 4L * v);
    }
    case Family::H1: case Family::H2: case Family::H3: case Family::H4:
      return closed_h(spec.id, spec.x->eval(ctx), ctx);
    case Family::I1: case Family::I2: case Family::I3:
      return closed_i(spec, ctx);
    case Family::J1: {
      Real s2 = sqrt(ctx.from(2));
      Real v = ctx.from(Rational(80, 9)) - 32L * s2 / 9L - 8L * s2 / 3L * log((1L + s2) / 2L);
      return real_only(v);
    }
    default:
      return closed_g(spec, ctx);
  }
}

Real closed_value(const FamilySpec& spec, const PrecisionContext& ctx) {
  ClosedValue v = closed_value_detailed(spec, ctx);
  if (v.residue > tolerance_residue(ctx)) {
    throw NumericFailure(describe(spec) + ": closed form has imaginary residue " + v.residue.to_string(6));
  }
  return v.value;
}

}  // namespace cbs
