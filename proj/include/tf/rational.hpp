#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tf {

// Exact rational number. mpq_class keeps denominators positive and in
// lowest terms after canonicalize(); all construction paths below go
// through canonical form.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Gaussian rational a + b*i. Closed under +,-,*,/ and contains the four
// fourth roots of unity needed for x = i specializations.
struct GR {
  Rat re{0};
  Rat im{0};

  GR() = default;
  GR(long n) : re(n) {}                       // NOLINT(google-explicit-constructor)
  GR(Rat r) : re(std::move(r)) {}             // NOLINT(google-explicit-constructor)
  GR(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GR i() { return GR(Rat(0), Rat(1)); }

  bool isZero() const { return re == 0 && im == 0; }
  bool isReal() const { return im == 0; }

  GR operator-() const { return GR(-re, -im); }
  GR conj() const { return GR(re, -im); }

  friend GR operator+(const GR& a, const GR& b) { return GR(a.re + b.re, a.im + b.im); }
  friend GR operator-(const GR& a, const GR& b) { return GR(a.re - b.re, a.im - b.im); }
  friend GR operator*(const GR& a, const GR& b) {
    return GR(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GR operator/(const GR& a, const GR& b) {
    Rat n = b.re * b.re + b.im * b.im;
    if (n == 0) throw std::domain_error("division by zero Gaussian rational");
    return GR((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
  }
  GR& operator+=(const GR& b) { re += b.re; im += b.im; return *this; }
  GR& operator-=(const GR& b) { re -= b.re; im -= b.im; return *this; }
  GR& operator*=(const GR& b) { *this = *this * b; return *this; }

  friend bool operator==(const GR& a, const GR& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GR& a, const GR& b) { return !(a == b); }

  GR inverse() const { return GR(1) / *this; }

  // Integer powers (negative allowed for nonzero values).
  GR pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    GR acc(1), base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  // True if this is one of the units 1, -1, i, -i.
  bool isUnit() const {
    return (im == 0 && (re == 1 || re == -1)) || (re == 0 && (im == 1 || im == -1));
  }

  std::string str() const {
    if (im == 0) return re.get_str();
    if (re == 0) return im == 1 ? "i" : (im == -1 ? "-i" : im.get_str() + "*i");
    std::string s = re.get_str();
    if (im > 0) s += "+";
    s += (im == 1 ? "" : (im == -1 ? "-" : im.get_str() + "*")) + std::string("i");
    return s;
  }
};

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// floor division for possibly negative operands
inline long fdiv(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline long fmod(long a, long b) { return a - fdiv(a, b) * b; }

}  // namespace tf
