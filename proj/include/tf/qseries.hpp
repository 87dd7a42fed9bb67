#pragma once

#include "tf/rational.hpp"

#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

// Truncated Laurent series in q^(1/D).
//
// Stored exponents are integers in units of 1/D. Coefficients are exact on
// [lo, hi] and identically zero below lo. Above hi the series is unknown,
// unless poly == true, in which case it is known to be exactly zero there
// as well (the series is a Laurent polynomial, fully known).
class QSeries {
 public:
  long D = 1;
  long lo = 0;
  long hi = -1;
  bool poly = false;
  std::vector<GR> c;  // c[k] = coefficient of q^((lo+k)/D); size hi-lo+1

  QSeries() = default;

  static QSeries zero(long D, long hi, bool poly = false) {
    QSeries s;
    s.D = D;
    s.lo = 0;
    s.hi = hi;
    s.poly = poly;
    s.c.assign(static_cast<size_t>(hi + 1), GR());
    return s;
  }

  // The constant/monomial u * q^(num/den), known exactly everywhere.
  static QSeries monomial(const GR& u, long num, long den, long D) {
    long d2 = lcm_long(D, den);
    QSeries s;
    s.D = d2;
    s.lo = num * (d2 / den);
    s.hi = s.lo;
    s.poly = true;
    s.c = {u};
    return s;
  }

  static QSeries one(long D) { return monomial(GR(1), 0, 1, D); }

  long size() const { return hi - lo + 1; }

  const GR& at(long e) const {  // exponent in 1/D units
    static const GR kZero{};
    if (e < lo || e > hi) {
      if (e < lo || poly) return kZero;
      throw std::out_of_range("coefficient beyond known order");
    }
    return c[static_cast<size_t>(e - lo)];
  }

  // Coefficient of q^(num/den); exponent must land on the 1/D grid.
  const GR& atRat(long num, long den) const {
    static const GR kZero{};
    if ((num * D) % den != 0) return kZero;
    return at(num * D / den);
  }

  bool knownZero() const {
    for (const auto& x : c)
      if (!x.isZero()) return false;
    return true;
  }

  // First exponent carrying a nonzero coefficient. For an all-zero series:
  // +inf when poly (true zero), hi+1 otherwise (first unknown slot).
  long firstNonzero() const {
    for (long e = lo; e <= hi; ++e)
      if (!at(e).isZero()) return e;
    return poly ? kInf : hi + 1;
  }
  long lastNonzero() const {  // only meaningful for poly series
    for (long e = hi; e >= lo; --e)
      if (!at(e).isZero()) return e;
    return -kInf;
  }

  QSeries rescaled(long newD) const {
    if (newD == D) return *this;
    if (newD % D != 0) newD = lcm_long(newD, D);
    long f = newD / D;
    QSeries r;
    r.D = newD;
    r.lo = lo * f;
    r.hi = hi * f + (f - 1);
    r.poly = poly;
    r.c.assign(static_cast<size_t>(r.hi - r.lo + 1), GR());
    for (long e = lo; e <= hi; ++e) r.c[static_cast<size_t>((e - lo) * f)] = at(e);
    return r;
  }

  // Restrict knowledge to exponents <= newHi (drops poly claim if it cuts).
  QSeries truncated(long newHi) const {
    if (poly ? newHi >= lastNonzero() : newHi >= hi) {
      if (!poly && newHi == hi) return *this;
      if (poly) {  // still fully known: nothing above newHi anyway
        return *this;
      }
      return *this;
    }
    QSeries r;
    r.D = D;
    r.poly = false;
    if (newHi < lo) {
      r.lo = newHi;
      r.hi = newHi - 1;
      r.c.clear();
      return r;
    }
    r.lo = lo;
    r.hi = newHi;
    r.c.assign(c.begin(), c.begin() + (newHi - lo + 1));
    return r;
  }

  // Cap claimed knowledge at exponent hiU (1/D units): demotes a polynomial
  // claim to "exact through hiU". Used by truncated infinite products, whose
  // stored coefficients are only valid up to the truncation order.
  QSeries capped(long hiU) const {
    QSeries s = truncated(hiU);
    if (s.poly) {
      if (s.lo > hiU) {
        s.lo = hiU;
        s.hi = hiU - 1;
        s.c.clear();
      } else {
        s.c.resize(static_cast<size_t>(hiU - s.lo + 1), GR());
        s.hi = hiU;
      }
      s.poly = false;
    }
    return s;
  }

  // Multiply by q^(e/D-units).
  QSeries shifted(long e) const {
    QSeries r = *this;
    r.lo += e;
    r.hi += e;
    return r;
  }

  QSeries scaled(const GR& u) const {
    QSeries r = *this;
    for (auto& x : r.c) x = x * u;
    return r;
  }

  // Substitute q -> q^m.
  QSeries qPower(long m) const {
    if (m < 1) throw std::invalid_argument("qPower requires m >= 1");
    if (m == 1) return *this;
    QSeries r;
    r.D = D;
    r.lo = lo * m;
    r.hi = poly ? hi * m : hi * m + (m - 1);
    r.poly = poly;
    r.c.assign(static_cast<size_t>(r.hi - r.lo + 1), GR());
    for (long e = lo; e <= hi; ++e) r.c[static_cast<size_t>((e - lo) * m)] = at(e);
    return r;
  }

  QSeries operator-() const {
    QSeries r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }

  friend QSeries addsub(const QSeries& A, const QSeries& B, bool sub) {
    long d = lcm_long(A.D, B.D);
    QSeries a = A.rescaled(d), b = B.rescaled(d);
    QSeries r;
    r.D = d;
    r.lo = std::min(a.lo, b.lo);
    r.poly = a.poly && b.poly;
    r.hi = r.poly ? std::max(a.hi, b.hi)
                  : std::min(a.poly ? kInf : a.hi, b.poly ? kInf : b.hi);
    if (r.hi >= kInf / 2) r.hi = std::max(a.hi, b.hi);
    if (r.hi < r.lo) {  // no commonly-known coefficients: empty-known marker
      r.hi = r.lo - 1;
      r.c.clear();
      return r;
    }
    r.c.assign(static_cast<size_t>(r.hi - r.lo + 1), GR());
    for (long e = r.lo; e <= r.hi; ++e) {
      GR v = (e <= a.hi ? a.at(e) : GR()) ;
      GR w = (e <= b.hi ? b.at(e) : GR());
      r.c[static_cast<size_t>(e - r.lo)] = sub ? v - w : v + w;
    }
    return r;
  }
  friend QSeries operator+(const QSeries& a, const QSeries& b) { return addsub(a, b, false); }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return addsub(a, b, true); }

  // Product, with exactness bookkeeping. cap limits the stored order (pass
  // kInf for no cap; required when both factors are infinite-knowledge).
  friend QSeries mulTrunc(const QSeries& A, const QSeries& B, long cap) {
    long d = lcm_long(A.D, B.D);
    QSeries a = A.rescaled(d), b = B.rescaled(d);
    // cap is interpreted in 1/d units of the result.
    long capD = cap >= kInf / 2 ? kInf : cap;
    long sa = a.firstNonzero(), sb = b.firstNonzero();
    if (sa >= kInf / 2 || sb >= kInf / 2) {  // a known-zero polynomial factor
      return QSeries::zero(d, 0, true);
    }
    long exactHi = std::min(a.poly ? kInf : a.hi + sb, b.poly ? kInf : b.hi + sa);
    bool rpoly = a.poly && b.poly;
    if (rpoly) exactHi = a.lastNonzero() + b.lastNonzero();
    if (exactHi > capD) {
      exactHi = capD;
      rpoly = false;
    }
    QSeries r;
    r.D = d;
    r.lo = sa + sb;
    r.hi = exactHi;
    r.poly = rpoly;
    if (r.hi < r.lo) {  // no exactly-known coefficients; keep an empty-known marker
      r.hi = r.lo - 1;
      r.c.clear();
      return r;
    }
    r.c.assign(static_cast<size_t>(r.hi - r.lo + 1), GR());
    long ahiEff = std::min(a.hi, a.poly ? a.lastNonzero() : a.hi);
    for (long i = sa; i <= ahiEff; ++i) {
      const GR& ai = a.at(i);
      if (ai.isZero()) continue;
      long jmax = std::min(b.poly ? b.lastNonzero() : b.hi, r.hi - i);
      for (long j = sb; j <= jmax; ++j) {
        const GR& bj = b.at(j);
        if (bj.isZero()) continue;
        r.c[static_cast<size_t>(i + j - r.lo)] += ai * bj;
      }
    }
    return r;
  }
  friend QSeries operator*(const QSeries& a, const QSeries& b) { return mulTrunc(a, b, kInf); }

  // Laurent inverse: b with a*b = 1 exactly mod the returned knowledge bound.
  // upTo: requested exact order of the result (1/D units of this series).
  QSeries invert(long upTo) const {
    long v = firstNonzero();
    if (v >= kInf / 2 || (v > hi))
      throw std::domain_error("not invertible: series has no known nonzero coefficient");
    long known = poly ? kInf : hi;
    long resHi = std::min(upTo, known >= kInf / 2 ? kInf : known - 2 * v);
    if (resHi >= kInf / 2)
      throw std::invalid_argument("invert: unbounded request on a polynomial; pass a finite order");
    QSeries r;
    r.D = D;
    r.lo = -v;
    r.hi = resHi;
    r.poly = false;
    if (r.hi < r.lo) { r.hi = r.lo - 1; return r; }
    r.c.assign(static_cast<size_t>(r.hi - r.lo + 1), GR());
    GR c0inv = at(v).inverse();
    r.c[0] = c0inv;
    // b_k = -c0^{-1} * sum_{j=1..k} a_{v+j} b_{k-j}, where b_k = coeff of q^{-v+k}
    long n = r.hi - r.lo;
    if (!poly && v + n > hi) throw std::logic_error("invert range");
    // Iterate only over the divisor's nonzero offsets; the series handled here
    // are often sparse on a fine exponent grid.
    std::vector<long> support;
    for (long j = 1; j <= n && v + j <= hi; ++j)
      if (!at(v + j).isZero()) support.push_back(j);
    for (long k = 1; k <= n; ++k) {
      GR s;
      for (long j : support) {
        if (j > k) break;
        s += at(v + j) * r.c[static_cast<size_t>(k - j)];
      }
      r.c[static_cast<size_t>(k)] = -(c0inv * s);
    }
    return r;
  }

  // Exact equality of the known-in-common part; returns first mismatching
  // exponent (in 1/lcm-D units) if any, comparing up to min knowledge.
  friend std::optional<long> firstDiff(const QSeries& A, const QSeries& B) {
    long d = lcm_long(A.D, B.D);
    QSeries a = A.rescaled(d), b = B.rescaled(d);
    long loC = std::min(a.lo, b.lo);
    long hiC = std::min(a.poly ? kInf : a.hi, b.poly ? kInf : b.hi);
    if (hiC >= kInf / 2) hiC = std::max(a.hi, b.hi);
    for (long e = loC; e <= hiC; ++e) {
      GR va = (e <= a.hi) ? a.at(e) : GR();
      GR vb = (e <= b.hi) ? b.at(e) : GR();
      if (va != vb) return e;
    }
    return std::nullopt;
  }

  std::string str(long maxTerms = 100) const {
    std::ostringstream os;
    bool first = true;
    long shown = 0;
    for (long e = lo; e <= hi && shown < maxTerms; ++e) {
      const GR& v = at(e);
      if (v.isZero()) continue;
      if (!first) os << " + ";
      os << "(" << v.str() << ")";
      if (e != 0) {
        os << "*q";
        if (D == 1) {
          if (e != 1) os << "^" << e;
        } else {
          os << "^(" << e << "/" << D << ")";
        }
      }
      first = false;
      ++shown;
    }
    if (first) os << "0";
    return os.str();
  }
};

}  // namespace tf
