#pragma once

#include "tf/xseries.hpp"

#include <string>
#include <vector>

namespace tf {

// Evaluation context: exponent grid q^(1/D), truncation at q-order N
// (in integer q-units).
struct Ctx {
  long D = 1;
  long N = 40;
  long ord() const { return N * D; }  // truncation bound in 1/D units
};

// u * q^r * x^s with u a unit or general Gaussian rational scalar.
struct Monomial {
  GR u{1};
  Rat r{0};
  long s = 0;

  static Monomial q(long num = 1, long den = 1) { return Monomial{GR(1), rat(num, den), 0}; }
  static Monomial xpow(long s) { return Monomial{GR(1), Rat(0), s}; }
  Monomial negated() const { return Monomial{-u, r, s}; }
  Monomial timesQ(const Rat& e) const { return Monomial{u, r + e, s}; }
  Monomial inverse() const { return Monomial{u.inverse(), -r, -s}; }
  bool isZero() const { return u.isZero(); }
  // q-exponent as num/den with positive den
  long rnum() const { return static_cast<long>(r.get_num().get_si()); }
  long rden() const { return static_cast<long>(r.get_den().get_si()); }

  XSeries toX(const Ctx& c) const { return XSeries::monomial(u, rnum(), rden(), s, c.D, c.ord()); }
  QSeries toQ(const Ctx& c) const {
    if (s != 0) throw std::invalid_argument("monomial is not x-free");
    return QSeries::monomial(u, rnum(), rden(), c.D);
  }
  // alpha^n as a monomial
  Monomial pow(long n) const { return Monomial{u.pow(n), r * n, s * n}; }
};

// A Laurent polynomial in x with monomial coefficients: the symmetry factor f.
struct XPolySpec {
  std::vector<Monomial> terms;  // distinct x-exponents

  long degree() const;
  Monomial coeffAt(long s) const;  // zero monomial if absent
  XSeries toX(const Ctx& c) const;
};

// --- infinite/finite products ------------------------------------------------

// (arg; q^m)_n extended to n < 0 via the reciprocal convention: for n < 0 the
// *returned polynomial* is (q^{mn} arg; q^m)_{-n}, i.e. 1/(arg;q^m)_n.
XSeries pochFinite(const Monomial& arg, long m, long n, const Ctx& c);
// x-free version returning the honest value for every n (inverts for n < 0).
QSeries pochFiniteQ(const Monomial& arg, long m, long n, const Ctx& c);

// (arg; q^m) = prod_{k>=0} (1 - arg q^{mk})
XSeries pochInf(const Monomial& arg, long m, const Ctx& c);
QSeries pochInfQ(const Monomial& arg, long m, const Ctx& c);

// <arg; q^m> = (arg; q^m)(q^m/arg; q^m)
XSeries doubleProduct(const Monomial& arg, long m, const Ctx& c);
QSeries doubleProductQ(const Monomial& arg, long m, const Ctx& c);

// [alpha x^d; k] = sum_n alpha^n q^{d n(n-1)/2 + kn} x^{dn+k}
XSeries thetaVector(const Monomial& alpha, long d, long k, const Ctx& c);

// G = prod_{n>=1} g(-z + n tau), i.e. each factor substitutes x -> q^n / x.
// g must have free coefficient 1 and only nonnegative x-exponents.
XSeries gTwistProduct(const XPolySpec& g, const Ctx& c);

// eta(m tau) = q^{m/24} (q^m; q^m); requires 24 | D*... (D enlarged as needed)
QSeries etaQ(long m, const Ctx& c);
// E_g(m tau) at the given level: q^{m*level*B(g/level)/2} <q^{gm}; q^{level*m}>,
// with g reduced via E_g = E_{g+2*level}, E_{g+level} = -E_g, E_0 = 0.
QSeries genEtaQ(long g, long m, long level, const Ctx& c);

// Named one-variable series (mock theta functions, Rogers-Ramanujan sums).
QSeries namedSeries(const std::string& name, const Ctx& c);

// Convenience: (q^a; q^b) and <q^a; q^b> as q-series.
QSeries pq(long a, long b, const Ctx& c);
QSeries dpq(long a, long b, const Ctx& c);

// Helper shared with other modules: n(n-1)/2
inline long binom2(long n) { return n * (n - 1) / 2; }

}  // namespace tf
