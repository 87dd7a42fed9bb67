#pragma once

#include "tf/canon.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace tf {

// ---------------------------------------------------------------------------
// Matrices over series entries. Entries share the grid/truncation discipline
// of their element type; bivariate entries reuse the x slot for the formal
// second variable y.
// ---------------------------------------------------------------------------
template <typename T>
struct Mat {
  long rows = 0, cols = 0;
  std::vector<T> e;

  Mat() = default;
  Mat(long r, long c) : rows(r), cols(c), e(static_cast<size_t>(r * c)) {}
  T& at(long i, long j) { return e[static_cast<size_t>(i * cols + j)]; }
  const T& at(long i, long j) const { return e[static_cast<size_t>(i * cols + j)]; }
};

using QMatrix = Mat<QSeries>;
using XMatrix = Mat<XSeries>;

template <typename T>
Mat<T> matMul(const Mat<T>& A, const Mat<T>& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matMul: dimension mismatch");
  Mat<T> R(A.rows, B.cols);
  for (long i = 0; i < A.rows; ++i)
    for (long j = 0; j < B.cols; ++j) {
      T acc = A.at(i, 0) * B.at(0, j);
      for (long k = 1; k < A.cols; ++k) acc = acc + A.at(i, k) * B.at(k, j);
      R.at(i, j) = acc;
    }
  return R;
}

template <typename T>
T matDet(const Mat<T>& A) {
  if (A.rows != A.cols || A.rows == 0) throw std::invalid_argument("matDet: not square");
  if (A.rows == 1) return A.at(0, 0);
  // Laplace expansion along the first row (sizes here are at most 4).
  T acc;
  bool first = true;
  for (long j = 0; j < A.cols; ++j) {
    Mat<T> m(A.rows - 1, A.cols - 1);
    for (long i = 1; i < A.rows; ++i)
      for (long jj = 0, t = 0; jj < A.cols; ++jj) {
        if (jj == j) continue;
        m.at(i - 1, t++) = A.at(i, jj);
      }
    T term = A.at(0, j) * matDet(m);
    if (first) {
      acc = (j % 2 == 0) ? term : -term;
      first = false;
    } else {
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Multiplication coefficients: the product of two substituted theta vectors
// [alpha x^a; k](x -> x^u) * [beta x^b; j](x -> x^v) expands over the basis of
// the target space with factor targetFactor(...) * x^(a u^2 + b v^2), with
// x-free series coefficients M_ell indexed by a complete residue system
// modulo a u^2 + b v^2. pivotShift offsets the Bezout solution (n0, m0) ->
// (n0 + shift*b', m0 - shift*a'); the coefficients are invariant under it.
// ---------------------------------------------------------------------------
std::map<long, QSeries> mCoeffs(const Monomial& alpha, const Monomial& beta,
                                long a, long b, long u, long v, long k, long j,
                                const Ctx& c, long pivotShift = 0);

// alpha^u beta^v q^{a C(u,2) + b C(v,2)} (x-free part of the target factor).
Monomial mTargetFactor(const Monomial& alpha, const Monomial& beta,
                       long a, long b, long u, long v);

// ---------------------------------------------------------------------------
// Symbolic expansion of <alpha x^{ua}; q^a> <beta x^{vb}; q^b>: each residue
// ell divisible by d = gcd(au, bv) receives the coefficient
//   gamma * (q^c; q^c) <y; q^c> / ((q^a; q^a)(q^b; q^b)),
// with c = a b'^2 + b a'^2 and y normalized so its q-exponent lies in
// [0, c/2] (using <y> = -y <q^c y> = <q^c / y>).
// ---------------------------------------------------------------------------
struct Type1Term {
  long ell = 0;
  Monomial gamma;  // x-free prefactor (unit times q-power)
  Monomial y;      // x-free argument of the double product <y; q^c>
};

struct Type1Expansion {
  Monomial targetAlpha;  // x-free part of the basis factor
  long targetD = 0;      // a u^2 + b v^2
  long cMod = 0;         // modulus c of the coefficient products
  long a = 1, b = 1;
  std::vector<Type1Term> terms;
};

Type1Expansion type1Expand(const Monomial& alpha, const Monomial& beta,
                           long a, long b, long u, long v);

// Evaluates one coefficient gamma (q^c;q^c)<y;q^c>/((q^a;q^a)(q^b;q^b)).
QSeries type1Coeff(const Type1Expansion& rec, const Type1Term& t, const Ctx& c);

// ---------------------------------------------------------------------------
// Character expansion of (q; q) <x^u; q> <x^v; q> for coprime u, v with u + v
// odd: paired basis vectors ell, u+v-ell with coefficients
// gamma * chi_{chiIndex} where chi_j = (q;q)^{-1} (q^c;q^c) <q^j; q^c> and
// c = u^2 + v^2; chiIndex normalized into [1, (c-1)/2]. Each index in that
// range appears exactly once.
// ---------------------------------------------------------------------------
struct CharTerm {
  long ell = 0, pairEll = 0;
  Monomial gamma;  // of the form (+/-1) q^(integer)
  long chiIndex = 0;
};

struct CharExpansion {
  long u = 0, v = 0, cMod = 0;
  Monomial targetAlpha;  // -q^{C(u,2)+C(v,2)}
  long targetD = 0;      // c
  std::vector<CharTerm> terms;
};

CharExpansion characterExpand(long u, long v);

// chi_j = (q;q)^{-1} (q^c; q^c) <q^j; q^c>.
QSeries chiCharacter(long jIdx, long cMod, const Ctx& c);

// ---------------------------------------------------------------------------
// Twisted sums: [alpha x^d; k] with each term multiplied by the twist factor
// (q^{san} x^{sa} y; q^a), for s = +/-1 and a | d. The result decomposes over
// the canonical vectors [alpha x^d; ell] with coefficients W_{k,ell}; the
// coefficients vanish unless ell = k (mod a). y may carry an x-power (used by
// the fixed substitutions where the twist argument becomes x-free), in which
// case the coefficients are windowed x-series on [L, U].
// ---------------------------------------------------------------------------
struct TwistParams {
  Monomial alpha;
  int s = 1;
  long d = 1, a = 1, k = 0;
  Monomial y;
};

// Coefficient W_{k,ell} as a (possibly windowed) series; window [L, U] applies
// only when y has an x-power.
XSeries wCoeff(const TwistParams& p, long ell, const Ctx& c, long L, long U);

// All coefficients for x-free y, as plain q-series.
std::map<long, QSeries> wCoeffsQ(const TwistParams& p, const Ctx& c);

// The twisted sum itself, windowed on [L, U].
XSeries twistedTheta(const TwistParams& p, const Ctx& c, long L, long U);

// ---------------------------------------------------------------------------
// The 2x2 product-side matrix attached to the twisted Rogers-Ramanujan pair:
//   (q^10;q^10)/(q;q) * ( <q;q^10><q^8;q^20>   -q<q^4;q^10><q^2;q^20> )
//                       ( -<q^3;q^10><q^4;q^20>  <q^2;q^10><q^6;q^20> )
// and the matching matrix of sum sides (Slater-type series).
// ---------------------------------------------------------------------------
QMatrix slaterMatrix(const Ctx& c);
QMatrix slaterSums(const Ctx& c);

// The bivariate 2x2 matrix of y-series whose y = 1 value is slaterSums:
//   (  sum q^{n(n+1)}/(q;q)_{2n} y^{2n}    -sum q^{(n+1)^2}/(q;q)_{2n+1} y^{2n+1} )
//   ( -sum q^{n(n+1)}/(q;q)_{2n+1} y^{2n+1}  sum q^{n^2}/(q;q)_{2n} y^{2n}        )
// (y occupies the x slot).
XMatrix pairSumMatrix(const Ctx& c);

// ---------------------------------------------------------------------------
// Change-of-basis matrices for d >= 2 (y occupies the x slot; entries are
// y-polynomials modulo q^{N+1}):
//   U_{k,l} = sum_{n >= [l>k]} alpha^n q^{d C(n,2) + kn} y^{dn+k-l}/(q;q)_{dn+k-l}
//   W_{k,l} = sum_{n >= [l>k]} alpha^n q^{C(d,2)n^2 + (d(k-l-1)+l)n + C(k-l,2)}
//             (-y)^{dn+k-l}/(q;q)_{dn+k-l}
// Satisfy det U = det W = 1, W U = corner matrix, W = prod_n interp(q^n y).
// ---------------------------------------------------------------------------
XMatrix changeBasisU(const Monomial& alpha, long d, const Ctx& c);
XMatrix changeBasisW(const Monomial& alpha, long d, const Ctx& c);

// One interpolation step M(q^shift y): identity except for
//   row 0: alpha y^2 q^{-1} (col d-2), -alpha y q^{-1} (col d-1)  [merged at d=2]
//   rows k >= 1: -y at col k-1.
XMatrix interpMatrix(const Monomial& alpha, long d, long shift, const Ctx& c);

// Truncated product prod_{n=0..} interpMatrix(alpha, d, n) (factors beyond the
// truncation order are indistinguishable from the identity).
XMatrix interpProduct(const Monomial& alpha, long d, const Ctx& c);

// Identity with -alpha y q^{-1} in the upper-right corner (the value of W U).
XMatrix cornerMatrix(const Monomial& alpha, long d, const Ctx& c);

XMatrix xIdentity(long d, const Ctx& c);
QMatrix qIdentity(long d, const Ctx& c);

}  // namespace tf
