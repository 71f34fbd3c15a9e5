#include "cbs/complex.hpp"

#include <string>

#include "cbs/errors.hpp"

namespace cbs {

Complex operator*(const Complex& a, const Complex& b) {
  return Complex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
}

Complex operator/(const Complex& a, const Complex& b) {
  if (b.is_zero()) throw DomainError("complex division by zero");
  Real d = b.re_ * b.re_ + b.im_ * b.im_;
  return Complex((a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d);
}

Complex mul_i(const Complex& a) { return Complex(-a.im(), a.re()); }

Real abs(const Complex& a) {
  Real r(a.precision());
  mpfr_hypot(r.raw(), a.re().raw(), a.im().raw(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& a) {
  if (a.is_zero()) throw DomainError("arg: complex zero");
  Real im = a.im();
  if (im.is_zero()) mpfr_set_zero(im.raw(), 1);
  return atan2(im, a.re());
}

Complex sqrt(const Complex& a) {
  mpfr_prec_t prec = a.precision();
  if (a.is_zero()) return Complex(Real(prec), Real(prec));
  if (a.im().is_zero()) {
    if (a.re().sign() > 0) return Complex(sqrt(a.re()), Real(prec));
    return Complex(Real(prec), sqrt(-a.re()));
  }
  Real r = abs(a);
  if (a.re().sign() >= 0) {
    Real t = sqrt((r + a.re()) / 2L);
    return Complex(t, a.im() / (2L * t));
  }
  Real t = sqrt((r - a.re()) / 2L);
  Real im = a.im().sign() < 0 ? -t : t;
  return Complex(abs(a.im()) / (2L * t), im);
}

Complex log(const Complex& a) {
  if (a.is_zero()) throw DomainError("ln: complex zero");
  return Complex(log(abs(a)), arg(a));
}

Complex pow(const Complex& a, long k) {
  Complex base = a;
  if (k < 0) {
    base = Complex(Real(1L, a.precision())) / a;
    k = -k;
  }
  Complex acc(Real(1L, a.precision()));
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

Complex asin(const Complex& a) {
  Complex one(Real(1L, a.precision()));
  Complex w = mul_i(a) + sqrt(one - a * a);
  Complex l = log(w);
  return Complex(l.im(), -l.re());
}

Complex atan(const Complex& a) {
  Complex one(Real(1L, a.precision()));
  Complex iz = mul_i(a);
  Complex d = log(one - iz) - log(one + iz);
  return Complex(-d.im() / 2L, d.re() / 2L);
}

Complex atanh(const Complex& a) {
  Complex one(Real(1L, a.precision()));
  return (log(one + a) - log(one - a)) / 2L;
}

Complex complex_elementary(std::string_view op, std::span<const Complex> args, const PrecisionContext& ctx) {
  auto want = [&](std::size_t n) {
    if (args.size() != n) throw UsageError(std::string(op) + " expects " + std::to_string(n) + " argument(s)");
  };
  auto at = [&](std::size_t i) {
    Complex z = args[i];
    if (z.precision() < ctx.bits()) {
      Real re = z.re(), im = z.im();
      mpfr_prec_round(re.raw(), ctx.bits(), MPFR_RNDN);
      mpfr_prec_round(im.raw(), ctx.bits(), MPFR_RNDN);
      z = Complex(re, im);
    }
    return z;
  };
  if (op == "add") { want(2); return at(0) + at(1); }
  if (op == "sub") { want(2); return at(0) - at(1); }
  if (op == "mul") { want(2); return at(0) * at(1); }
  if (op == "div") { want(2); return at(0) / at(1); }
  if (op == "neg") { want(1); return -at(0); }
  if (op == "sqrt") { want(1); return sqrt(at(0)); }
  if (op == "ln") { want(1); return log(at(0)); }
  if (op == "arcsin") { want(1); return asin(at(0)); }
  if (op == "arctan") { want(1); return atan(at(0)); }
  if (op == "artanh") { want(1); return atanh(at(0)); }
  throw UsageError("unknown complex function '" + std::string(op) + "'");
}

}  // namespace cbs
