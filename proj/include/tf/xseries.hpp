#pragma once

#include "tf/qseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tf {

// Support-knowledge mode of a bivariate series. "Win*" flags name the
// direction(s) in which x-coefficients beyond the stored window are unknown;
// in the unflagged direction(s) the series is known to vanish beyond the
// window (up to the q-truncation order).
enum class XMode { Compact, WinBelow, WinAbove, WinBoth };

struct Mismatch {
  long x = 0;        // x-exponent
  long qnum = 0;     // q-exponent numerator (in 1/qden units)
  long qden = 1;
  GR lhs, rhs;
  std::string str() const;
};

// Bivariate series: Laurent in x, truncated in q^(1/D).
//
// cols[m - L] is the q-expansion of the x^m coefficient. Every stored column
// is exact up to q-order N (in 1/D units) or is a fully-known polynomial.
class XSeries {
 public:
  long D = 1;
  long N = 0;  // certified q-order, in 1/D units
  long L = 0, U = -1;
  XMode mode = XMode::Compact;
  std::vector<QSeries> cols;

  bool knownBelow() const { return mode == XMode::Compact || mode == XMode::WinAbove; }
  bool knownAbove() const { return mode == XMode::Compact || mode == XMode::WinBelow; }

  static XSeries zero(long D, long N);
  // u * q^(qnum/qden) * x^xexp
  static XSeries monomial(const GR& u, long qnum, long qden, long xexp, long D, long N);
  static XSeries one(long D, long N) { return monomial(GR(1), 0, 1, 0, D, N); }

  // x^m coefficient; known-zero outside the window in known directions.
  const QSeries& col(long m) const;
  bool inWindow(long m) const { return m >= L && m <= U; }
  // Coefficient of x^m q^(qnum/qden).
  GR coeff(long m, long qnum, long qden = 1) const;

  XSeries rescaled(long newD) const;
  XSeries truncatedOrder(long newN) const;  // newN in current 1/D units
  // Cap every column's claimed knowledge at order hiU (1/D units); see
  // QSeries::capped. Required after truncating an infinite product.
  XSeries capKnowledge(long hiU) const;
  // Drop all-zero boundary columns (support tightening; window claims kept sound).
  XSeries trimmed() const;

  XSeries operator-() const;
  friend XSeries addsub(const XSeries& a, const XSeries& b, bool sub);
  friend XSeries operator+(const XSeries& a, const XSeries& b) { return addsub(a, b, false); }
  friend XSeries operator-(const XSeries& a, const XSeries& b) { return addsub(a, b, true); }
  friend XSeries operator*(const XSeries& a, const XSeries& b);

  // Multiply by an x-free series / by a single monomial u q^(qnum/qden) x^xexp.
  XSeries scaledQ(const QSeries& f) const;
  XSeries mulMonomial(const GR& u, long qnum, long qden, long xexp) const;

  // Substitutions.
  XSeries scaleX(long u) const;                 // x -> x^u (u != 0; negative flips)
  XSeries shiftX(long cnum, long cden) const;   // x -> q^c x
  XSeries flipX() const;                        // x -> 1/x
  XSeries qPow(long m) const;                   // q -> q^m

  // Graded inversion: requires *this compact and equal to c(1-g) with a
  // unique minimal monomial c (unit coefficient) under val(x^a q^b) =
  // wq*b - wx*a (b measured in integer q-units scaled by D) and val(g) >= 1.
  // Returns the inverse, windowed on [Lw, Uw].
  XSeries invertGraded(long wq, long wx, long Lw, long Uw) const;

  // x = u * q^(rnum/rden).
  QSeries specialize(const GR& u, long rnum, long rden) const;

  XSeries truncateBelow(long j) const;
  QSeries tailLimit() const;

  bool isKnownZero() const;
  std::string str(long maxCols = 50) const;

  // Compare the two series where both are known; nullopt = equal.
  friend std::optional<Mismatch> compare(const XSeries& a, const XSeries& b);

  // Recompute N as the min knowledge of the stored columns and clip columns.
  void settleOrder();
};

}  // namespace tf
