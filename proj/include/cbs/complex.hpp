#pragma once

// Complex numbers over Real with principal branches.
//   sqrt: Re >= 0; for a negative real axis point the result is +i*sqrt|a|.
//   ln:   Im in (-pi, pi]; a signed-zero imaginary part counts as +0.

#include <algorithm>
#include <span>
#include <string_view>

#include "cbs/mp.hpp"

namespace cbs {

class Complex {
 public:
  Complex() = default;
  explicit Complex(const Real& re) : re_(re), im_(re.precision()) {}
  Complex(const Real& re, const Real& im) : re_(re), im_(im) {}

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  mpfr_prec_t precision() const { return std::max(re_.precision(), im_.precision()); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }
  friend Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re_ + b.re_, a.im_ + b.im_); }
  friend Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re_ - b.re_, a.im_ - b.im_); }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(const Complex& a, const Real& k) { return Complex(a.re_ * k, a.im_ * k); }
  friend Complex operator*(const Real& k, const Complex& a) { return a * k; }
  friend Complex operator*(const Complex& a, long k) { return Complex(a.re_ * k, a.im_ * k); }
  friend Complex operator/(const Complex& a, long k) { return Complex(a.re_ / k, a.im_ / k); }
  friend Complex operator+(const Complex& a, long k) { return Complex(a.re_ + k, a.im_); }
  friend Complex operator-(long k, const Complex& a) { return Complex(k - a.re_, -a.im_); }

 private:
  Real re_;
  Real im_;
};

Complex mul_i(const Complex& a);
Real abs(const Complex& a);
Real arg(const Complex& a);
Complex sqrt(const Complex& a);
Complex log(const Complex& a);
Complex pow(const Complex& a, long k);
/// arcsin(z) = -i ln(iz + sqrt(1 - z^2)).
Complex asin(const Complex& a);
/// arctan(z) = (i/2)(ln(1 - iz) - ln(1 + iz)).
Complex atan(const Complex& a);
/// artanh(z) = (ln(1 + z) - ln(1 - z))/2.
Complex atanh(const Complex& a);

/// op is one of add sub mul div neg sqrt ln arcsin arctan artanh.
Complex complex_elementary(std::string_view op, std::span<const Complex> args, const PrecisionContext& ctx);

}  // namespace cbs
