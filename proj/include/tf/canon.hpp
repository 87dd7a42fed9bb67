#pragma once

#include "tf/constructors.hpp"

#include <optional>
#include <vector>

namespace tf {

// Request for a canonical basis vector of the space attached to the symmetry
// factor f (degree d): the unique F with F-hat(j) = delta_{jk} for 0 <= j < d
// satisfying F = f * (F with x -> qx).
struct CanonicalBasisRequest {
  XPolySpec f;
  long k = 0;
  Ctx ctx;
  long L = 0, U = 0;  // requested x-window
};

// Dimension of the space attached to the monomial factor alpha*x^d:
// d for d > 0; for d = 0, 1 iff alpha is an integer power of q; 0 for d < 0.
long dimTMonomial(const Monomial& alpha, long d);

// Dimension of the intersection space parameterized by signs s, t and
// integers c, d: max(1 + floor(d/2) - [2|d][t=-1] - [st=-1], 0).
long dimTsIntersection(int s, long c, long d, int t);

// Canonical basis vector via the Fourier-coefficient recursion: seeds
// F-hat(j) = delta_{jk} on 0..d-1, extends upward by inverting the pivot
// 1 - q^n f-hat(0) and downward by dividing by the unit monomial q^n f-hat(d).
XSeries canonRecursion(const CanonicalBasisRequest& req);

// Closed form for f = alpha*x^d + beta (beta x-free, possibly zero):
// sum_n alpha^n q^{d n(n-1)/2 + kn} x^{dn+k} / (beta q^{d+k}; q^d)_n.
XSeries canonKind1(const Monomial& alpha, const Monomial& beta, long d, long k,
                   const Ctx& c, long L, long U);

// Equivalent product form of the same vector:
// theta(alpha,d,k) / ((beta q^{d+k}; q^d) (-alpha^{-1} beta x^{-d} q^d; q^d)).
XSeries canonKind1Product(const Monomial& alpha, const Monomial& beta, long d, long k,
                          const Ctx& c, long L, long U);

// Closed form for f with vanishing free coefficient, written as
// f = alpha*x^d * g with g a polynomial in x^{-1}, free coefficient 1:
// sum_n alpha^n q^{d n(n-1)/2 + kn} x^{dn+k} * (ratio of twisted g-products)
// * (degree-<=k truncation of g, shifted).
XSeries canonKind2(const XPolySpec& f, long k, const Ctx& c, long L, long U);

// Coefficients c_k with F = sum_k c_k * theta(alpha,d,k), read off the
// x^0..x^{d-1} columns of F and verified by reconstruction; throws with the
// first mismatch if F does not lie in the claimed space.
std::vector<QSeries> decompose(const XSeries& F, const Monomial& alpha, long d, const Ctx& c);

// Checks F - f*(F with x -> qx) = 0 on the comparable window; nullopt = pass.
std::optional<Mismatch> functionalEqCheck(const XSeries& F, const XPolySpec& f);

}  // namespace tf
