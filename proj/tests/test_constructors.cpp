#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tf/constructors.hpp"

#include <vector>

using namespace tf;

namespace {

const Ctx C12{1, 12};

// Sum of compact single-column terms q^{e}(coef) x^{xe} * f.
XSeries xterm(const Ctx& c, const GR& u, long e, long xe, const QSeries& f) {
  return XSeries::monomial(u, e, 1, xe, c.D, c.ord()).scaledQ(f);
}

}  // namespace

TEST_CASE("finite Pochhammer products") {
  // (x;q)_2 = 1 - (1+q)x + q x^2
  XSeries p2 = pochFinite(Monomial::xpow(1), 1, 2, C12);
  CHECK(p2.coeff(0, 0) == GR(1));
  CHECK(p2.coeff(1, 0) == GR(-1));
  CHECK(p2.coeff(1, 1) == GR(-1));
  CHECK(p2.coeff(2, 1) == GR(1));
  CHECK(p2.L == 0);
  CHECK(p2.U == 2);

  // (x;q)_0 = 1
  XSeries p0 = pochFinite(Monomial::xpow(1), 1, 0, C12);
  CHECK_FALSE(compare(p0, XSeries::one(1, C12.ord())).has_value());

  // 1/(x;q)_{-1} = (q^{-1}x;q)_1 = 1 - q^{-1}x
  XSeries pm1 = pochFinite(Monomial::xpow(1), 1, -1, C12);
  CHECK(pm1.coeff(0, 0) == GR(1));
  CHECK(pm1.coeff(1, -1) == GR(1) * GR(-1));
  CHECK(pm1.U == 1);

  // extension property: (arg;q)_{n+1} = (1-arg) * (q*arg;q)_n for all n
  Monomial arg{GR(-1), rat(1, 2), 1};  // -q^{1/2} x
  XSeries fac = XSeries::one(1, C12.ord()) - arg.toX(C12);
  for (long n = 0; n <= 3; ++n) {
    XSeries lhs = pochFinite(arg, 1, n + 1, C12);
    XSeries rhs = fac * pochFinite(arg.timesQ(Rat(1)), 1, n, C12);
    CHECK_FALSE(compare(lhs, rhs).has_value());
  }
  // For n <= -1 both sides are reciprocal-convention polynomials; the
  // identity becomes (q*arg;q)_n^{recip} = (1-arg) * (arg;q)_{n+1}^{recip}.
  for (long n = -3; n <= -1; ++n) {
    XSeries lhs = pochFinite(arg.timesQ(Rat(1)), 1, n, C12);
    XSeries rhs = fac * pochFinite(arg, 1, n + 1, C12);
    CHECK_FALSE(compare(lhs, rhs).has_value());
  }

  // x-free version: honest value for n < 0: (q^3;q)_{-2} = 1/(q;q)_2
  QSeries neg = pochFiniteQ(Monomial::q(3), 1, -2, C12);
  QSeries prodBack = neg * pochFiniteQ(Monomial::q(1), 1, 2, C12);
  CHECK_FALSE(firstDiff(prodBack, QSeries::one(1)).has_value());
}

TEST_CASE("infinite Pochhammer products") {
  // (qx;q): coefficient of x^1 is -(q + q^2 + ...)
  XSeries p = pochInf(Monomial{GR(1), Rat(1), 1}, 1, C12);
  for (long e = 1; e <= C12.N; ++e) CHECK(p.coeff(1, e) == GR(-1));
  CHECK(p.coeff(1, 0) == GR(0));

  // (0-monomial; m) = 1
  XSeries one = pochInf(Monomial{GR(0), Rat(0), 0}, 1, C12);
  CHECK_FALSE(compare(one, XSeries::one(1, C12.ord())).has_value());

  // eq:basic1: (x;q) = sum_n q^{C(n,2)} (-x)^n / (q;q)_n
  XSeries lhs = pochInf(Monomial::xpow(1), 1, C12);
  XSeries rhs = XSeries::zero(1, C12.ord());
  for (long n = 0; binom2(n) <= C12.N; ++n) {
    QSeries inv = pochFiniteQ(Monomial::q(1), 1, n, C12).invert(C12.ord());
    rhs = rhs + xterm(C12, n % 2 ? GR(-1) : GR(1), binom2(n), n, inv);
  }
  CHECK_FALSE(compare(lhs, rhs).has_value());
}

TEST_CASE("double products") {
  // (q;q)<x;q> coefficient of x^n is (-1)^n q^{C(n,2)} (Jacobi triple product)
  XSeries trip = doubleProduct(Monomial::xpow(1), 1, C12).scaledQ(pq(1, 1, C12));
  for (long n = -3; n <= 4; ++n) {
    for (long e = 0; e <= C12.N; ++e) {
      GR want = (e == binom2(n)) ? (n % 2 ? GR(-1) : GR(1)) : GR(0);
      CHECK(trip.coeff(n, e) == want);
    }
  }

  // <q^m/arg; q^m> = <arg; q^m>
  Monomial a{GR(-1), rat(1, 3), 2};
  XSeries d1 = doubleProduct(a, 2, C12);
  XSeries d2 = doubleProduct(a.inverse().timesQ(Rat(2)), 2, C12);
  CHECK_FALSE(compare(d1, d2).has_value());
}

TEST_CASE("theta vectors") {
  // [-x;0] = sum (-1)^n q^{C(n,2)} x^n
  XSeries th = thetaVector(Monomial{GR(-1), Rat(0), 0}, 1, 0, C12);
  for (long n = -3; n <= 4; ++n) CHECK(th.coeff(n, binom2(n)) == (n % 2 ? GR(-1) : GR(1)));
  XSeries trip = doubleProduct(Monomial::xpow(1), 1, C12).scaledQ(pq(1, 1, C12));
  CHECK_FALSE(compare(th, trip).has_value());

  // [qx^2;0] coefficient of x^{2n} is q^{n^2}
  XSeries t2 = thetaVector(Monomial::q(1), 2, 0, C12);
  for (long n = -3; n <= 3; ++n) {
    CHECK(t2.coeff(2 * n, n * n) == GR(1));
    CHECK(t2.coeff(2 * n + 1, 0) == GR(0));
  }

  // eq:canonical-formula: [a x^d; k] = (q^d;q^d) <-a q^k x^d; q^d> x^k
  struct Case {
    Monomial alpha;
    long d, k;
  };
  std::vector<Case> cases = {
      {Monomial{GR(-1), Rat(1), 0}, 2, 1},
      {Monomial{GR(1), Rat(2), 0}, 3, 2},
      {Monomial{GR::i(), rat(1, 2), 0}, 2, 0},
      {Monomial{GR(-1), Rat(0), 0}, 1, -1},
  };
  for (const auto& cs : cases) {
    Ctx c = C12;
    XSeries lhs = thetaVector(cs.alpha, cs.d, cs.k, c);
    Monomial arg = cs.alpha.negated().timesQ(Rat(cs.k));
    arg.s = cs.d;
    XSeries rhs = doubleProduct(arg, cs.d, c)
                      .scaledQ(pq(cs.d, cs.d, c))
                      .mulMonomial(GR(1), 0, 1, cs.k);
    CHECK_FALSE(compare(lhs, rhs).has_value());
  }
}

TEST_CASE("g twist product") {
  // g = 1 - x: G = (q x^{-1}; q)
  XPolySpec g{{Monomial{GR(1), Rat(0), 0}, Monomial{GR(-1), Rat(0), 1}}};
  XSeries G = gTwistProduct(g, C12);
  XSeries want = pochInf(Monomial{GR(1), Rat(1), -1}, 1, C12);
  CHECK_FALSE(compare(G, want).has_value());

  // g = 1 -> 1
  XPolySpec gone{{Monomial{GR(1), Rat(0), 0}}};
  CHECK_FALSE(compare(gTwistProduct(gone, C12), XSeries::one(1, C12.ord())).has_value());

  // free coefficient must be 1
  XPolySpec bad{{Monomial{GR(2), Rat(0), 0}, Monomial{GR(-1), Rat(0), 1}}};
  CHECK_THROWS(gTwistProduct(bad, C12));
}

TEST_CASE("eta and generalized eta") {
  Ctx c{1, 8};
  // eta^24 = q - 24q^2 + ...
  QSeries e = etaQ(1, c);
  QSeries e24 = QSeries::one(e.D);
  for (int i = 0; i < 24; ++i) {
    e24 = e24 * e;
    e24 = e24.truncated(4 * e24.D);
  }
  CHECK(e24.atRat(1, 1) == GR(1));
  CHECK(e24.atRat(2, 1) == GR(-24));
  CHECK(e24.atRat(0, 1) == GR(0));

  // level 7: E_1 E_2 E_3 = eta(t)/eta(7t)
  QSeries prod = genEtaQ(1, 1, 7, c) * genEtaQ(2, 1, 7, c) * genEtaQ(3, 1, 7, c);
  QSeries ratio = etaQ(1, c) * etaQ(7, c).invert(c.N * 24);
  CHECK_FALSE(firstDiff(prod, ratio).has_value());

  // symmetries: E_{N-g} = E_g, E_{g+N} = -E_g, E_0 = 0
  for (long g = 1; g <= 3; ++g) {
    CHECK_FALSE(firstDiff(genEtaQ(7 - g, 1, 7, c), genEtaQ(g, 1, 7, c)).has_value());
    CHECK_FALSE(firstDiff(genEtaQ(g + 7, 1, 7, c), -genEtaQ(g, 1, 7, c)).has_value());
  }
  CHECK(genEtaQ(0, 1, 7, c).knownZero());
  CHECK(genEtaQ(14, 1, 7, c).knownZero());
}

TEST_CASE("named series") {
  Ctx c{1, 14};
  // rr0 = 1/<q;q^5>, rr1 = 1/<q^2;q^5>
  CHECK_FALSE(firstDiff(namedSeries("rr0", c), dpq(1, 5, c).invert(c.N)).has_value());
  CHECK_FALSE(firstDiff(namedSeries("rr1", c), dpq(2, 5, c).invert(c.N)).has_value());

  // (q;q)^2 (q;q^2) = 1 - 3q + q^2 + 2q^3 + 2q^4 - q^5 + ...
  QSeries s = pq(1, 1, c) * pq(1, 1, c) * pq(1, 2, c);
  std::vector<long> w1{1, -3, 1, 2, 2, -1};
  for (long e = 0; e <= 5; ++e) CHECK(s.at(e) == GR(w1[static_cast<size_t>(e)]));

  // f0 + 2 psi0 = 1 + 3q - q^2 + 3q^3 + 2q^4 + 0q^5 + q^6 + ...
  QSeries a = namedSeries("f0", c) + namedSeries("psi0", c) + namedSeries("psi0", c);
  std::vector<long> w2{1, 3, -1, 3, 2, 0, 1};
  for (long e = 0; e <= 6; ++e) CHECK(a.at(e) == GR(w2[static_cast<size_t>(e)]));

  // f1 + 2 psi1 = 3 + 2q + 3q^2 + q^3 + 3q^4 + q^5 + ...
  QSeries b = namedSeries("f1", c) + namedSeries("psi1", c) + namedSeries("psi1", c);
  std::vector<long> w3{3, 2, 3, 1, 3, 1};
  for (long e = 0; e <= 5; ++e) CHECK(b.at(e) == GR(w3[static_cast<size_t>(e)]));

  // Rogers-Ramanujan variation pair (eq:rog-ram-var)
  CHECK_FALSE(firstDiff(namedSeries("rrvar0", c), pochInfQ(Monomial{GR(-1), Rat(1), 0}, 2, c))
                  .has_value());
  CHECK_FALSE(firstDiff(namedSeries("rrvar1", c), pochInfQ(Monomial{GR(-1), Rat(2), 0}, 2, c))
                  .has_value());

  CHECK_THROWS(namedSeries("nope", c));
}
