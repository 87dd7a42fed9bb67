#include "tf/mw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tf {

namespace {

long ratNumL(const Rat& r) { return static_cast<long>(r.get_num().get_si()); }
long ratDenL(const Rat& r) { return static_cast<long>(r.get_den().get_si()); }

long ratFloor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return static_cast<long>(q.get_si());
}
long ratCeil(const Rat& r) { return -ratFloor(Rat(-r)); }

Monomial mulMono(const Monomial& a, const Monomial& b) {
  return Monomial{a.u * b.u, a.r + b.r, a.s + b.s};
}

// Extended gcd: returns (x, y) with a*x + b*y = gcd(a, b), for a, b > 0.
std::pair<long, long> extGcd(long a, long b) {
  long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    long q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  return {x0, y0};
}

QSeries zeroPolyQ(long D) {
  QSeries z;
  z.D = D;
  z.lo = 0;
  z.hi = -1;
  z.poly = true;
  return z;
}

// Packs a finite collection of q-monomials (all with exponent <= N) into a
// series exact through order N.
QSeries packQ(const std::map<Rat, GR>& terms, const Ctx& c) {
  long D = c.D;
  for (const auto& [e, u] : terms) D = lcm_long(D, ratDenL(e));
  QSeries r;
  r.D = D;
  r.hi = c.N * D;
  r.lo = 0;
  if (!terms.empty()) r.lo = std::min(0L, ratNumL(terms.begin()->first) * (D / ratDenL(terms.begin()->first)));
  r.c.assign(static_cast<size_t>(r.hi - r.lo + 1), GR());
  for (const auto& [e, u] : terms) {
    long ee = ratNumL(e) * (D / ratDenL(e));
    r.c[static_cast<size_t>(ee - r.lo)] += u;
  }
  return r;
}

// Sum over n in Z of unit(n) q^{expo(n)} truncated at order N, for a strictly
// convex quadratic exponent; scans outward from the vertex.
QSeries thetaTypeSum(const Ctx& c, const Rat& quad, const Rat& lin,
                     const std::function<GR(long)>& unit, const Rat& cnst) {
  if (quad <= 0) throw std::logic_error("theta-type sum requires a convex exponent");
  auto expo = [&](long n) -> Rat { return quad * n * n + lin * n + cnst; };
  double vtx = -lin.get_d() / (2.0 * quad.get_d());
  long n0 = static_cast<long>(std::llround(vtx));
  std::map<Rat, GR> terms;
  for (long n = n0; expo(n) <= c.N; ++n) terms[expo(n)] += unit(n);
  for (long n = n0 - 1; expo(n) <= c.N; --n) terms[expo(n)] += unit(n);
  return packQ(terms, c);
}

// Assembles columns (x-exponent -> q-series) into an XSeries. If a window is
// imposed, missing columns inside it are zero and the mode reflects which
// sides lost knowledge; otherwise the result is compact on the column hull.
XSeries packX(std::map<long, QSeries> cols, const Ctx& c, bool windowed, long L, long U,
              bool droppedBelow, bool droppedAbove) {
  long D = c.D;
  for (const auto& [m, q] : cols) D = lcm_long(D, q.D);
  XSeries r;
  r.D = D;
  r.N = c.N * D;
  if (windowed) {
    r.L = L;
    r.U = U;
    r.mode = droppedBelow ? (droppedAbove ? XMode::WinBoth : XMode::WinBelow)
                          : (droppedAbove ? XMode::WinAbove : XMode::Compact);
  } else {
    if (cols.empty()) {
      r.L = 0;
      r.U = -1;
      r.mode = XMode::Compact;
      return r;
    }
    r.L = cols.begin()->first;
    r.U = cols.rbegin()->first;
    r.mode = XMode::Compact;
  }
  if (r.U < r.L) return r;
  r.cols.assign(static_cast<size_t>(r.U - r.L + 1), zeroPolyQ(D));
  for (auto& [m, q] : cols) {
    if (m < r.L || m > r.U) continue;
    r.cols[static_cast<size_t>(m - r.L)] = q.rescaled(D);
  }
  return r.capKnowledge(c.N * D);
}

}  // namespace

Monomial mTargetFactor(const Monomial& alpha, const Monomial& beta,
                       long a, long b, long u, long v) {
  return Monomial{alpha.u.pow(u) * beta.u.pow(v),
                  alpha.r * u + beta.r * v + rat(a) * binom2(u) + rat(b) * binom2(v), 0};
}

std::map<long, QSeries> mCoeffs(const Monomial& alpha, const Monomial& beta,
                                long a, long b, long u, long v, long k, long j,
                                const Ctx& c, long pivotShift) {
  if (a < 1 || b < 1 || u < 1 || v < 1)
    throw std::invalid_argument("mCoeffs: a, b, u, v must be positive");
  long d = std::gcd(a * u, b * v);
  long a2 = a * u / d, b2 = b * v / d;
  long dim = a * u * u + b * v * v;
  auto [n0, m0] = extGcd(a2, b2);  // a2*n0 + b2*m0 = 1
  n0 += pivotShift * b2;
  m0 -= pivotShift * a2;
  Rat quad = rat(a * b2 * b2 + b * a2 * a2, 2);
  GR baseU = alpha.u.pow(b2) * beta.u.pow(-a2);
  std::map<long, QSeries> out;
  for (long ell = 0; ell < dim; ++ell) {
    long num = ell - u * k - v * j;
    if (((num % d) + d) % d != 0) {
      out[ell] = zeroPolyQ(c.D);
      continue;
    }
    long lp = num / d;
    GR gammaU = (alpha.u.pow(n0) * beta.u.pow(m0)).pow(lp);
    Rat gammaR = rat(a) * binom2(n0 * lp) + rat(b) * binom2(m0 * lp) +
                 rat(k * n0 + j * m0) * lp + alpha.r * (n0 * lp) + beta.r * (m0 * lp);
    Rat delta = rat(a * b2 * n0 - b * a2 * m0) * lp - rat(a * b2 - b * a2, 2) +
                rat(k * b2 - j * a2) + alpha.r * b2 - beta.r * a2;
    out[ell] = thetaTypeSum(c, quad, delta,
                            [&](long n) -> GR { return gammaU * baseU.pow(n); }, gammaR);
  }
  return out;
}

Type1Expansion type1Expand(const Monomial& alpha, const Monomial& beta,
                           long a, long b, long u, long v) {
  if (a < 1 || b < 1 || u < 1 || v < 1)
    throw std::invalid_argument("type1Expand: a, b, u, v must be positive");
  Monomial na = alpha.negated(), nb = beta.negated();
  long d = std::gcd(a * u, b * v);
  long a2 = a * u / d, b2 = b * v / d;
  Type1Expansion rec;
  rec.targetD = a * u * u + b * v * v;
  rec.cMod = a * b2 * b2 + b * a2 * a2;
  rec.a = a;
  rec.b = b;
  rec.targetAlpha = mTargetFactor(na, nb, a, b, u, v);
  auto [n0, m0] = extGcd(a2, b2);
  long c2 = rec.cMod;
  for (long ell = 0; ell < rec.targetD; ++ell) {
    if (((ell % d) + d) % d != 0) continue;  // k = j = 0: only multiples of d
    long lp = ell / d;
    Monomial gamma{(na.u.pow(n0) * nb.u.pow(m0)).pow(lp),
                   rat(a) * binom2(n0 * lp) + rat(b) * binom2(m0 * lp) +
                       na.r * (n0 * lp) + nb.r * (m0 * lp),
                   0};
    Rat delta = rat(a * b2 * n0 - b * a2 * m0) * lp - rat(a * b2 - b * a2, 2) +
                na.r * b2 - nb.r * a2;
    Monomial y{-(na.u.pow(b2) * nb.u.pow(-a2)), delta + rat(c2, 2), 0};
    // Normalize the q-exponent of y into [0, c/2] via
    // <y> = -y <q^c y> = <q^c / y>, folding the corrections into gamma.
    while (y.r < 0) {
      gamma = mulMono(gamma, y.negated());
      y.r += c2;
    }
    while (y.r >= c2) {
      y.r -= c2;
      gamma = mulMono(gamma, y.negated().inverse());
    }
    if (2 * y.r > c2) {
      y = Monomial{y.u.inverse(), rat(c2) - y.r, 0};
    }
    rec.terms.push_back(Type1Term{ell, gamma, y});
  }
  return rec;
}

QSeries type1Coeff(const Type1Expansion& rec, const Type1Term& t, const Ctx& c) {
  Ctx cs = c;
  cs.N = c.N + std::max(0L, ratCeil(-t.gamma.r));  // keep order N after the gamma shift
  QSeries num = pq(rec.cMod, rec.cMod, cs) * doubleProductQ(t.y, rec.cMod, cs);
  QSeries den = pq(rec.a, rec.a, cs) * pq(rec.b, rec.b, cs);
  QSeries r = t.gamma.toQ(c) * num * den.invert(cs.N * den.D);
  return r.capped(c.N * r.D);
}

QSeries chiCharacter(long jIdx, long cMod, const Ctx& c) {
  QSeries qq = pq(1, 1, c);
  QSeries r = qq.invert(c.N * qq.D) * pq(cMod, cMod, c) * dpq(jIdx, cMod, c);
  return r.capped(c.N * r.D);
}

CharExpansion characterExpand(long u, long v) {
  if (u < 1 || v < 1 || std::gcd(u, v) != 1 || (u + v) % 2 == 0)
    throw std::invalid_argument("characterExpand: need coprime u, v with u + v odd");
  CharExpansion rec;
  rec.u = u;
  rec.v = v;
  long c2 = u * u + v * v;
  rec.cMod = c2;
  rec.targetD = c2;
  rec.targetAlpha = Monomial{GR(-1), rat(binom2(u) + binom2(v)), 0};
  auto [n0, m0] = extGcd(u, v);  // u*n0 + v*m0 = 1
  long p = v * n0 - u * m0;
  long r0 = (u - v + c2) / 2;
  std::vector<bool> seen(static_cast<size_t>((c2 - 1) / 2 + 1), false);
  for (long ell = (u + v - c2 + 2) / 2; ell <= (u + v - 1) / 2; ++ell) {
    Monomial gamma{GR(((n0 + m0) * ell) % 2 == 0 ? 1 : -1),
                   rat(binom2(n0 * ell) + binom2(m0 * ell)), 0};
    long idx = p * ell + r0;
    // Normalize the character index into [1, (c-1)/2] using
    // chi_j = -q^j chi_{j+c} = chi_{c-j}.
    while (idx < 0) {
      gamma = mulMono(gamma, Monomial{GR(-1), rat(idx), 0});
      idx += c2;
    }
    while (idx >= c2) {
      idx -= c2;
      gamma = mulMono(gamma, Monomial{GR(-1), rat(-idx), 0});
    }
    if (idx == 0) throw std::logic_error("characterExpand: index 0 should not occur");
    if (2 * idx > c2) idx = c2 - idx;
    if (seen[static_cast<size_t>(idx)])
      throw std::logic_error("characterExpand: repeated character index");
    seen[static_cast<size_t>(idx)] = true;
    rec.terms.push_back(CharTerm{ell, u + v - ell, gamma, idx});
  }
  for (long i = 1; i <= (c2 - 1) / 2; ++i)
    if (!seen[static_cast<size_t>(i)])
      throw std::logic_error("characterExpand: character index not covered");
  return rec;
}

XSeries wCoeff(const TwistParams& p, long ell, const Ctx& c, long L, long U) {
  if (p.d < 1 || p.a < 1 || p.d % p.a != 0 || (p.s != 1 && p.s != -1))
    throw std::invalid_argument("wCoeff: need a | d and s = +/-1");
  if (p.k < 0 || p.k >= p.d || ell < 0 || ell >= p.d)
    throw std::invalid_argument("wCoeff: k, ell must lie in [0, d)");
  long b = p.d / p.a;
  if ((((ell - p.k) % p.a) + p.a) % p.a != 0) return XSeries::zero(c.D, c.ord());
  long jj = (ell - p.k) / (p.s * p.a);
  long nFrom = (p.s * ell < p.s * p.k) ? 1 : 0;
  Rat A2 = rat(p.a) * binom2(b);
  Rat A1 = rat(p.s) * (rat(b) * (ell - p.k) - ell) + rat(((p.s - 1) / 2) * p.d) -
           p.alpha.r * p.s + p.y.r * b;
  Rat A0 = rat(p.a) * binom2(jj) + p.y.r * jj;
  if (A2 == 0 && A1 <= 0 && p.y.s == 0)
    throw std::domain_error("wCoeff: twist modulus condition fails (divergent sum)");
  long colDir = p.y.s * b;
  std::map<long, QSeries> cols;
  bool droppedBelow = false, droppedAbove = false;
  for (long n = nFrom;; ++n) {
    if (n > nFrom + 200000) throw std::logic_error("wCoeff: term scan did not terminate");
    Rat e = A2 * n * n + A1 * n + A0;
    long col = p.y.s * (b * n + jj);
    bool qOK = e <= c.N;
    bool inWin = (p.y.s == 0) || (col >= L && col <= U);
    if (qOK && inWin) {
      long len = b * n + jj;
      QSeries ph = pochFiniteQ(Monomial::q(p.a), p.a, len, c);
      QSeries inv = ph.invert(c.N * ph.D + std::max(0L, ratCeil(-e)) * ph.D);
      GR unit = p.alpha.u.pow(-p.s * n) * (-p.y.u).pow(len);
      QSeries term = QSeries::monomial(unit, ratNumL(e), ratDenL(e), c.D) * inv;
      auto it = cols.find(col);
      if (it == cols.end())
        cols.emplace(col, term.capped(c.N * term.D));
      else
        it->second = (it->second + term).capped(c.N * term.D);
    } else if (qOK && !inWin) {
      (col < L ? droppedBelow : droppedAbove) = true;
    }
    bool eIncreasing = (A2 > 0) ? (rat(2) * A2 * n + A1 >= 0) : (A1 > 0);
    if (!qOK && eIncreasing) break;
    if (p.y.s != 0 && ((colDir > 0 && col > U) || (colDir < 0 && col < L))) break;
  }
  return packX(std::move(cols), c, p.y.s != 0, L, U, droppedBelow, droppedAbove);
}

std::map<long, QSeries> wCoeffsQ(const TwistParams& p, const Ctx& c) {
  if (p.y.s != 0) throw std::invalid_argument("wCoeffsQ: y must be x-free");
  std::map<long, QSeries> out;
  for (long ell = 0; ell < p.d; ++ell) {
    XSeries w = wCoeff(p, ell, c, 0, 0);
    // An empty compact result claims exact zero; keep the claim honest at N.
    out[ell] = w.inWindow(0) ? w.col(0) : QSeries::zero(c.D, c.ord());
  }
  return out;
}

XSeries twistedTheta(const TwistParams& p, const Ctx& c, long L, long U) {
  if (p.d < 1 || p.a < 1 || p.d % p.a != 0 || (p.s != 1 && p.s != -1))
    throw std::invalid_argument("twistedTheta: need a | d and s = +/-1");
  long b = p.d / p.a;
  long raydir = p.s * p.a + p.y.s;
  if (b == 1) {
    // With a = d, convergence below order N needs a positive per-term slope
    // unless the twist argument carries an x-power (window cutoff applies).
    Rat slope = rat(p.s) * (-p.k) + rat(((p.s - 1) / 2) * p.d) - p.alpha.r * p.s + p.y.r;
    if (slope <= 0 && raydir != 0 && p.y.s == 0)
      throw std::domain_error("twistedTheta: twist modulus condition fails");
  }
  auto expo = [&](long n) -> Rat { return rat(p.d) * binom2(n) + rat(p.k) * n + p.alpha.r * n; };
  auto negSum = [&](const Rat& r0) -> Rat {
    if (r0 >= 0) return Rat(0);
    long M = ratCeil(Rat(-r0) / p.a);
    return r0 * M + rat(p.a) * binom2(M);
  };
  XSeries acc = XSeries::zero(c.D, c.ord());
  bool droppedBelow = false, droppedAbove = false;
  auto runDirection = [&](long start, long step) {
    long miss = 0;
    for (long n = start;; n += step) {
      if (std::labs(n) > 200000) throw std::logic_error("twistedTheta: scan did not terminate");
      long colStart = p.d * n + p.k;
      Monomial arg{p.y.u, p.y.r + rat(p.s * p.a) * n, raydir};
      Rat bound = expo(n) + negSum(arg.r);
      bool disjoint = (raydir > 0)   ? colStart > U
                      : (raydir < 0) ? colStart < L
                                     : (colStart < L || colStart > U);
      bool usable = !disjoint && bound <= c.N;
      if (usable) {
        miss = 0;
        Ctx ct = c;
        ct.N = c.N + std::max(0L, ratCeil(-bound));
        XSeries tw = pochInf(arg, p.a, ct);
        Rat e = expo(n);
        XSeries term = tw.mulMonomial(p.alpha.u.pow(n), ratNumL(e), ratDenL(e), colStart);
        acc = acc + term;
      } else {
        if (disjoint && bound <= c.N) (colStart < L ? droppedBelow : droppedAbove) = true;
        if (++miss > 2 * b + 8) break;
      }
    }
  };
  runDirection(0, 1);
  runDirection(-1, -1);
  // Restrict to the requested window; knowledge on a side is surrendered if
  // terms were skipped there or included terms spill past the window.
  if (!acc.cols.empty()) {
    droppedBelow = droppedBelow || acc.L < L;
    droppedAbove = droppedAbove || acc.U > U;
  }
  std::map<long, QSeries> cols;
  for (long m = L; m <= U; ++m) cols[m] = acc.col(m);
  return packX(std::move(cols), c, true, L, U, droppedBelow, droppedAbove);
}

QMatrix slaterMatrix(const Ctx& c) {
  QSeries qq = pq(1, 1, c);
  QSeries pre = pq(10, 10, c) * qq.invert(c.N * qq.D);
  QMatrix m(2, 2);
  m.at(0, 0) = (pre * dpq(1, 10, c) * dpq(8, 20, c)).capped(c.N * c.D);
  m.at(0, 1) = (QSeries::monomial(GR(-1), 1, 1, c.D) * pre * dpq(4, 10, c) * dpq(2, 20, c))
                   .capped(c.N * c.D);
  m.at(1, 0) = (-(pre * dpq(3, 10, c) * dpq(4, 20, c))).capped(c.N * c.D);
  m.at(1, 1) = (pre * dpq(2, 10, c) * dpq(6, 20, c)).capped(c.N * c.D);
  return m;
}

namespace {

// Sum over n >= nFrom of unit(n) q^{expo(n)} y^{xpow(n)} / (q^pstep; q^pstep)_{plen(n)},
// with a strictly convex (or strictly increasing) exponent; y occupies the x
// slot. Compact: omitted terms only contribute above order N.
XSeries ySumEntry(const Ctx& c, long nFrom, const std::function<Rat(long)>& expo,
                  const std::function<GR(long)>& unit, const std::function<long(long)>& xpow,
                  const std::function<long(long)>& plen, long pstep) {
  std::map<long, QSeries> cols;
  Rat prev;
  for (long n = nFrom;; ++n) {
    Rat e = expo(n);
    if (e > c.N && n > nFrom && e >= prev) break;
    prev = e;
    if (e > c.N) continue;
    QSeries ph = pochFiniteQ(Monomial::q(pstep), pstep, plen(n), c);
    QSeries inv = ph.invert(c.N * ph.D + std::max(0L, ratCeil(-e)) * ph.D);
    QSeries term = QSeries::monomial(unit(n), ratNumL(e), ratDenL(e), c.D) * inv;
    long col = xpow(n);
    auto it = cols.find(col);
    if (it == cols.end())
      cols.emplace(col, term.capped(c.N * term.D));
    else
      it->second = (it->second + term).capped(c.N * term.D);
  }
  return packX(std::move(cols), c, false, 0, 0, false, false);
}

}  // namespace

XMatrix pairSumMatrix(const Ctx& c) {
  XMatrix m(2, 2);
  m.at(0, 0) = ySumEntry(
      c, 0, [](long n) -> Rat { return rat(n * n + n); }, [](long) { return GR(1); },
      [](long n) { return 2 * n; }, [](long n) { return 2 * n; }, 1);
  m.at(0, 1) = ySumEntry(
      c, 0, [](long n) -> Rat { return rat((n + 1) * (n + 1)); },
      [](long) { return GR(-1); }, [](long n) { return 2 * n + 1; },
      [](long n) { return 2 * n + 1; }, 1);
  m.at(1, 0) = ySumEntry(
      c, 0, [](long n) -> Rat { return rat(n * n + n); }, [](long) { return GR(-1); },
      [](long n) { return 2 * n + 1; }, [](long n) { return 2 * n + 1; }, 1);
  m.at(1, 1) = ySumEntry(
      c, 0, [](long n) -> Rat { return rat(n * n); }, [](long) { return GR(1); },
      [](long n) { return 2 * n; }, [](long n) { return 2 * n; }, 1);
  return m;
}

QMatrix slaterSums(const Ctx& c) {
  XMatrix s = pairSumMatrix(c);
  QMatrix m(2, 2);
  for (long i = 0; i < 2; ++i)
    for (long j = 0; j < 2; ++j) m.at(i, j) = s.at(i, j).specialize(GR(1), 0, 1);
  return m;
}

XMatrix changeBasisU(const Monomial& alpha, long d, const Ctx& c) {
  if (d < 2) throw std::invalid_argument("changeBasisU: d >= 2 required");
  XMatrix m(d, d);
  for (long k = 0; k < d; ++k)
    for (long l = 0; l < d; ++l) {
      long nFrom = (l > k) ? 1 : 0;
      m.at(k, l) = ySumEntry(
          c, nFrom,
          [&, k](long n) -> Rat { return rat(d) * binom2(n) + rat(k) * n + alpha.r * n; },
          [&](long n) { return alpha.u.pow(n); },
          [&, k, l](long n) { return d * n + k - l; },
          [&, k, l](long n) { return d * n + k - l; }, 1);
    }
  return m;
}

XMatrix changeBasisW(const Monomial& alpha, long d, const Ctx& c) {
  if (d < 2) throw std::invalid_argument("changeBasisW: d >= 2 required");
  XMatrix m(d, d);
  for (long k = 0; k < d; ++k)
    for (long l = 0; l < d; ++l) {
      long nFrom = (l > k) ? 1 : 0;
      m.at(k, l) = ySumEntry(
          c, nFrom,
          [&, k, l](long n) -> Rat {
            return rat(binom2(d)) * n * n + rat(d * (k - l - 1) + l) * n +
                   rat(binom2(k - l)) + alpha.r * n;
          },
          [&, k, l](long n) { return alpha.u.pow(n) * GR((d * n + k - l) % 2 == 0 ? 1 : -1); },
          [&, k, l](long n) { return d * n + k - l; },
          [&, k, l](long n) { return d * n + k - l; }, 1);
    }
  return m;
}

XMatrix xIdentity(long d, const Ctx& c) {
  XMatrix m(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      m.at(i, j) = (i == j) ? XSeries::one(c.D, c.ord()) : XSeries::zero(c.D, c.ord());
  return m;
}

QMatrix qIdentity(long d, const Ctx& c) {
  QMatrix m(d, d);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j)
      m.at(i, j) = (i == j) ? QSeries::one(c.D) : QSeries::zero(c.D, c.ord());
  return m;
}

XMatrix interpMatrix(const Monomial& alpha, long d, long shift, const Ctx& c) {
  if (d < 2) throw std::invalid_argument("interpMatrix: d >= 2 required");
  XMatrix m = xIdentity(d, c);
  Monomial yTop2{alpha.u, alpha.r - 1 + 2 * shift, 2};       // alpha y^2 / q
  Monomial yTop1{-alpha.u, alpha.r - 1 + rat(shift), 1};     // -alpha y / q
  Monomial yLow{GR(-1), rat(shift), 1};                      // -y
  if (d == 2) {
    m.at(0, 0) = XSeries::one(c.D, c.ord()) + yTop2.toX(c);
    m.at(0, 1) = yTop1.toX(c);
    m.at(1, 0) = yLow.toX(c);
  } else {
    m.at(0, d - 2) = yTop2.toX(c);
    m.at(0, d - 1) = yTop1.toX(c);
    for (long k = 1; k < d; ++k) m.at(k, k - 1) = yLow.toX(c);
  }
  return m;
}

XMatrix interpProduct(const Monomial& alpha, long d, const Ctx& c) {
  // Factors beyond nmax differ from the identity only above order N, with a
  // margin covering any negative orders accumulated from alpha y / q entries.
  Rat negPer = alpha.r - 1;
  Rat negTotal(0);
  for (long n = 0; negPer + n < 0; ++n) negTotal += -(negPer + n);
  long nmax = c.N + 2 + ratCeil(negTotal) + std::max(0L, ratCeil(rat(1) - alpha.r));
  XMatrix acc = interpMatrix(alpha, d, 0, c);
  for (long n = 1; n <= nmax; ++n) acc = matMul(acc, interpMatrix(alpha, d, n, c));
  for (auto& e : acc.e) e = e.capKnowledge(c.N * e.D);
  return acc;
}

XMatrix cornerMatrix(const Monomial& alpha, long d, const Ctx& c) {
  XMatrix m = xIdentity(d, c);
  Monomial corner{-alpha.u, alpha.r - 1, 1};
  if (d == 1)
    m.at(0, 0) = XSeries::one(c.D, c.ord()) + corner.toX(c);
  else
    m.at(0, d - 1) = corner.toX(c);
  return m;
}

}  // namespace tf
