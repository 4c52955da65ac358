#pragma once

#include <gmpxx.h>

#include <string>

namespace supergerbe {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_integer(const Rational& q);
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

// Exact complex number with rational parts.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long v) : re_(v) {}
  Gaussian(const Rational& re) : re_(re) { re_.canonicalize(); }
  Gaussian(const Rational& re, const Rational& im) : re_(re), im_(im) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  // Printed with a leading minus: negative real or negative imaginary.
  bool prints_negative() const { return sgn(im_) == 0 ? sgn(re_) < 0 : sgn(re_) == 0 && sgn(im_) < 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  Gaussian conj() const { return Gaussian(re_, -im_); }
  Rational norm() const { return re_ * re_ + im_ * im_; }
  Gaussian inverse() const;

  Gaussian& operator+=(const Gaussian& o);
  Gaussian& operator-=(const Gaussian& o);
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  Gaussian operator-() const { return Gaussian(-re_, -im_); }

  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  // Literal form accepted back by the expression parser.
  std::string str() const;

 private:
  Rational re_;
  Rational im_;
};

}  // namespace supergerbe
