#include "tf/canon.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace tf {

namespace {

long ratNum(const Rat& r) { return static_cast<long>(r.get_num().get_si()); }
long ratDen(const Rat& r) { return static_cast<long>(r.get_den().get_si()); }

// u * q^(r + extra) as a QSeries on the 1/D grid.
QSeries monoQ(const GR& u, const Rat& e, long D) {
  return QSeries::monomial(u, ratNum(e), ratDen(e), D);
}

QSeries zeroPolyQ(long D) {
  QSeries z;
  z.D = D;
  z.lo = 0;
  z.hi = -1;
  z.poly = true;
  return z;
}

bool isIntegerQPower(const Monomial& m) {
  return !m.isZero() && m.s == 0 && m.u == GR(1) && m.r.get_den() == 1;
}

}  // namespace

long dimTMonomial(const Monomial& alpha, long d) {
  if (alpha.isZero() || alpha.s != 0)
    throw std::invalid_argument("dimension: alpha must be a nonzero x-free monomial");
  if (d > 0) return d;
  if (d < 0) return 0;
  return isIntegerQPower(alpha) ? 1 : 0;
}

long dimTsIntersection(int s, long /*c*/, long d, int t) {
  long v = 1 + fdiv(d, 2);
  if (d % 2 == 0 && t == -1) v -= 1;
  if (s * t == -1) v -= 1;
  return std::max(v, 0L);
}

XSeries canonRecursion(const CanonicalBasisRequest& req) {
  const XPolySpec& f = req.f;
  long d = f.degree();
  if (d < 1) throw std::invalid_argument("recursion: factor must have positive degree");
  if (req.k < 0 || req.k >= d) throw std::invalid_argument("recursion: need 0 <= k < degree");
  if (req.L > 0 || req.U < d - 1)
    throw std::invalid_argument("recursion: window must contain [0, d-1]");
  Monomial f0 = f.coeffAt(0);
  Monomial fd = f.coeffAt(d);
  if (fd.isZero()) throw std::invalid_argument("recursion: leading coefficient vanishes");
  if (!fd.u.isUnit())
    throw std::invalid_argument("recursion: leading coefficient must be a unit-led monomial");
  if (isIntegerQPower(f0) && f0.r <= rat(-d))
    throw std::invalid_argument("recursion: free coefficient violates basis hypothesis");

  long D = req.ctx.D;
  for (const auto& t : f.terms) D = lcm_long(D, ratDen(t.r));
  long NU = req.ctx.N * D;

  std::map<long, QSeries> Fh;
  for (long j = 0; j < d; ++j)
    Fh[j] = (j == req.k) ? QSeries::one(D) : zeroPolyQ(D);

  // Upward: (1 - q^n f0) F(n) = sum_{j=1..d} q^{n-j} f_j F(n-j).
  for (long n = d; n <= req.U; ++n) {
    QSeries S = zeroPolyQ(D);
    for (long j = 1; j <= d; ++j) {
      Monomial fj = f.coeffAt(j);
      if (fj.isZero()) continue;
      S = S + monoQ(fj.u, fj.r + (n - j), D) * Fh[n - j];
    }
    if (f0.isZero()) {
      Fh[n] = S.truncated(NU);
      continue;
    }
    if (f0.u == GR(1) && f0.r + n == 0)
      throw std::domain_error("recursion pivot vanishes at n = " + std::to_string(n));
    QSeries piv = QSeries::one(D) - monoQ(f0.u, f0.r + n, D);
    long v = piv.firstNonzero();
    Fh[n] = (piv.invert(NU + std::labs(v)) * S).truncated(NU);
  }

  // Downward: q^m f_d F(m) = (1 - q^{m+d} f0) F(m+d) - sum_{j=1..d-1} q^{m+d-j} f_j F(m+d-j).
  for (long m = -1; m >= req.L; --m) {
    QSeries S = Fh[m + d];
    if (!f0.isZero()) S = S - monoQ(f0.u, f0.r + (m + d), D) * Fh[m + d];
    for (long j = 1; j < d; ++j) {
      Monomial fj = f.coeffAt(j);
      if (fj.isZero()) continue;
      S = S - monoQ(fj.u, fj.r + (m + d - j), D) * Fh[m + d - j];
    }
    Fh[m] = (monoQ(fd.u.inverse(), -(fd.r + m), D) * S).truncated(NU);
  }

  XSeries r;
  r.D = D;
  r.N = NU;
  r.L = req.L;
  r.U = req.U;
  r.cols.reserve(static_cast<size_t>(req.U - req.L + 1));
  for (long m = req.L; m <= req.U; ++m) r.cols.push_back(Fh[m]);

  // Known-above certificate: once d consecutive columns vanish through order
  // N and all term shifts beyond the window move knowledge upward, every
  // further column is zero through order N as well.
  bool certified = true;
  for (long m = req.U - d + 1; m <= req.U; ++m)
    if (!Fh[m].knownZero()) certified = false;
  for (long j = 1; j <= d && certified; ++j) {
    Monomial fj = f.coeffAt(j);
    if (!fj.isZero() && fj.r + (req.U + 1 - j) < 0) certified = false;
  }
  if (!f0.isZero() && f0.r + (req.U + 1) <= 0) certified = false;
  r.mode = certified ? XMode::WinBelow : XMode::WinBoth;
  r.settleOrder();
  return r;
}

namespace {

void kind1HypothesisCheck(const Monomial& alpha, const Monomial& beta, long d) {
  if (alpha.isZero() || alpha.s != 0)
    throw std::invalid_argument("kind-1: alpha must be a nonzero x-free monomial");
  if (beta.s != 0) throw std::invalid_argument("kind-1: beta must be x-free");
  if (beta.isZero()) return;
  if (isIntegerQPower(beta) && beta.r <= rat(-d))
    throw std::invalid_argument("kind-1: free coefficient violates basis hypothesis");
  // Monomial-level no-zero condition: |beta/alpha| <= |q|^{-d}.
  if (beta.r - alpha.r < rat(-d))
    throw std::invalid_argument("kind-1: no-zero condition fails at the monomial level");
}

}  // namespace

XSeries canonKind1(const Monomial& alpha, const Monomial& beta, long d, long k,
                   const Ctx& c, long L, long U) {
  if (d < 1 || k < 0 || k >= d) throw std::invalid_argument("kind-1: need 0 <= k < d >= 1");
  kind1HypothesisCheck(alpha, beta, d);
  long D = lcm_long(lcm_long(c.D, ratDen(alpha.r)), ratDen(beta.r));
  Ctx cc{D, c.N};
  long NU = c.N * D;

  XSeries r;
  r.D = D;
  r.N = NU;
  r.L = L;
  r.U = U;
  r.mode = XMode::WinBoth;
  r.cols.assign(static_cast<size_t>(U - L + 1), zeroPolyQ(D));
  for (long n = -fdiv(k - L, d); d * n + k <= U; ++n) {
    long m = d * n + k;
    if (m < L) continue;
    Rat e = rat(d) * binom2(n) + rat(k) * n + alpha.r * n;
    QSeries mono = monoQ(alpha.u.pow(n), e, D);
    QSeries col;
    if (n >= 0) {
      QSeries p = pochFiniteQ(beta.timesQ(rat(d + k)), d, n, cc);
      col = (mono * p.invert(NU)).truncated(NU);
    } else {
      // 1/(beta q^{d+k}; q^d)_n = (beta q^{d+k+dn}; q^d)_{-n}, a polynomial.
      QSeries p = pochFiniteQ(beta.timesQ(rat(d + k) + rat(d) * n), d, -n, cc);
      col = (mono * p).truncated(NU);
    }
    r.cols[static_cast<size_t>(m - L)] = std::move(col);
  }
  r.settleOrder();
  return r;
}

XSeries canonKind1Product(const Monomial& alpha, const Monomial& beta, long d, long k,
                          const Ctx& c, long L, long U) {
  if (d < 1 || k < 0 || k >= d) throw std::invalid_argument("kind-1: need 0 <= k < d >= 1");
  kind1HypothesisCheck(alpha, beta, d);
  long D = lcm_long(lcm_long(c.D, ratDen(alpha.r)), ratDen(beta.r));
  Ctx cc{D, c.N};
  XSeries th = thetaVector(alpha, d, k, cc);
  if (beta.isZero()) return th;
  QSeries c1 = pochInfQ(beta.timesQ(rat(d + k)), d, cc);
  QSeries c1inv = c1.invert(c.N * c1.D);
  Monomial m2{-(beta.u * alpha.u.inverse()), beta.r - alpha.r + d, -d};
  XSeries p2 = pochInf(m2, d, cc);
  // Divide: graded inverse of the x^{-d}-supported product, windowed so the
  // product with the compact theta factor covers [L, U].
  XSeries p2inv = p2.invertGraded(1, 1, L - th.U, U - th.L);
  XSeries r = (p2inv * th).scaledQ(c1inv);
  return r.capKnowledge(c.N * r.D);
}

XSeries canonKind2(const XPolySpec& f, long k, const Ctx& c, long L, long U) {
  long d = f.degree();
  if (d < 1 || k < 0 || k >= d) throw std::invalid_argument("kind-2: need 0 <= k < d >= 1");
  if (!f.coeffAt(0).isZero())
    throw std::invalid_argument("kind-2: free coefficient must vanish");
  Monomial al = f.coeffAt(d);
  if (al.isZero()) throw std::invalid_argument("kind-2: leading coefficient vanishes");

  // f = alpha x^d * sum_i gh[i] x^{-i}; gh[0] = 1.
  std::vector<Monomial> gh(static_cast<size_t>(d));
  long D = c.D;
  for (long i = 0; i < d; ++i) {
    Monomial fc = f.coeffAt(d - i);
    gh[static_cast<size_t>(i)] =
        fc.isZero() ? Monomial{GR(0), Rat(0), 0}
                    : Monomial{fc.u * al.u.inverse(), fc.r - al.r, 0};
    if (!fc.isZero()) D = lcm_long(D, ratDen(gh[static_cast<size_t>(i)].r));
  }
  D = lcm_long(D, ratDen(al.r));
  // Monomial-level no-zero condition: each twisted factor must stay graded.
  for (long i = 1; i < d; ++i) {
    const Monomial& g = gh[static_cast<size_t>(i)];
    if (!g.isZero() && g.r + i < 0)
      throw std::invalid_argument("kind-2: no-zero condition fails at the monomial level");
  }

  Ctx cc{D, c.N};
  long NU = c.N * D;
  long kg = std::min(k, d - 1);

  // g with x -> q^j / x, as a compact Laurent polynomial.
  auto twistedG = [&](long j) -> XSeries {
    XSeries r = XSeries::one(D, NU);
    for (long i = 1; i < d; ++i) {
      const Monomial& g = gh[static_cast<size_t>(i)];
      if (g.isZero()) continue;
      r = r + Monomial{g.u, g.r + rat(j) * i, -i}.toX(cc);
    }
    return r;
  };
  // Truncation of g to degree <= k, with x -> q^j / x.
  auto twistedGk = [&](long j) -> XSeries {
    XSeries r = XSeries::one(D, NU);
    for (long i = 1; i <= kg; ++i) {
      const Monomial& g = gh[static_cast<size_t>(i)];
      if (g.isZero()) continue;
      r = r + Monomial{g.u, g.r + rat(j) * i, -i}.toX(cc);
    }
    return r;
  };
  auto expOf = [&](long n) -> Rat { return rat(d) * binom2(n) + rat(k) * n + al.r * n; };

  XSeries acc = XSeries::zero(D, NU);

  // n >= 1: monomial * prod_{j=0}^{n-2} g(-z - j tau) * g_k(-z - (n-1) tau).
  {
    XSeries prefix = XSeries::one(D, NU);
    Rat negDrop(0);  // lower bound on the q-order contributed by the prefix
    long misses = 0;
    for (long n = 1;; ++n) {
      if (n >= 2) {
        long j = n - 2;
        prefix = prefix * twistedG(-j);
        Rat worst(0);
        for (long i = 1; i < d; ++i) {
          const Monomial& g = gh[static_cast<size_t>(i)];
          if (g.isZero()) continue;
          Rat o = g.r - rat(j) * i;
          if (o < worst) worst = o;
        }
        negDrop += worst;
      }
      Rat worstGk(0);
      for (long i = 1; i <= kg; ++i) {
        const Monomial& g = gh[static_cast<size_t>(i)];
        if (g.isZero()) continue;
        Rat o = g.r - rat(n - 1) * i;
        if (o < worstGk) worstGk = o;
      }
      long m = d * n + k;
      if (m - (d - 1) * (n - 1) - kg > U) break;  // support left the window for good
      if (expOf(n) + negDrop + worstGk > c.N) {
        // The order bound grows like n^2/2 but is not monotone step-to-step;
        // only stop once it has cleared the truncation order repeatedly.
        if (++misses > 2 * d + 4) break;
        continue;
      }
      misses = 0;
      Rat e = expOf(n);
      XSeries t = (prefix * twistedGk(-(n - 1)))
                      .mulMonomial(al.u.pow(n), ratNum(e), ratDen(e), m);
      acc = acc + t;
    }
  }

  // n <= 0: monomial * [prod_{j=1}^{1-n} g(-z + j tau)]^{-1} * g_k(-z - (n-1) tau).
  {
    XSeries prefix = XSeries::one(D, NU);
    for (long n = 0; expOf(n) <= c.N; --n) {
      prefix = prefix * twistedG(1 - n);
      long m = d * n + k;
      long Lw = L - m;
      long Uw = std::max(0L, U - m + kg);
      XSeries inv = prefix.invertGraded(1, 1, Lw, Uw);
      Rat e = expOf(n);
      XSeries t = (inv * twistedGk(-(n - 1)))
                      .mulMonomial(al.u.pow(n), ratNum(e), ratDen(e), m);
      acc = acc + t;
    }
  }

  return acc.capKnowledge(NU);
}

std::vector<QSeries> decompose(const XSeries& F, const Monomial& alpha, long d, const Ctx& c) {
  if (d < 1) throw std::invalid_argument("decompose: need d >= 1");
  std::vector<QSeries> out;
  out.reserve(static_cast<size_t>(d));
  XSeries R = XSeries::zero(F.D, F.N);
  Ctx cc{lcm_long(c.D, F.D), c.N};
  for (long k = 0; k < d; ++k) {
    out.push_back(F.col(k));
    R = R + thetaVector(alpha, d, k, cc).scaledQ(out.back());
  }
  if (auto mm = compare(F, R))
    throw std::runtime_error("decompose: not in the claimed space, first mismatch at " +
                             mm->str());
  return out;
}

std::optional<Mismatch> functionalEqCheck(const XSeries& F, const XPolySpec& f) {
  long D = F.D;
  for (const auto& t : f.terms) D = lcm_long(D, ratDen(t.r));
  XSeries a = F.rescaled(D);
  long smin = kInf, smax = -kInf;
  for (const auto& t : f.terms) {
    if (t.isZero()) continue;
    smin = std::min(smin, t.s);
    smax = std::max(smax, t.s);
  }
  if (smin > smax) throw std::invalid_argument("functional equation: zero factor");
  long lo = a.knownBelow() ? a.L - smax : a.L + smax;
  long hi = a.knownAbove() ? a.U + smax : a.U;
  if (lo > hi) throw std::domain_error("window too small for functional-equation check");
  // Report the mismatch of smallest q-order (ties: smallest |x-exponent|).
  std::optional<Mismatch> best;
  for (long m = lo; m <= hi; ++m) {
    // Column m of f(x) * F(qx): sum over terms u q^r x^s of
    // u q^r * q^(m-s) * (column m-s of F).
    QSeries rhs = zeroPolyQ(D);
    for (const auto& t : f.terms) {
      if (t.isZero()) continue;
      // Cap the column's knowledge at the truncation order before shifting:
      // a beyond-window zero certificate is only valid mod q^(N+1), and a
      // negative shift lowers the order through which the product is known.
      QSeries cc = a.col(m - t.s).rescaled(D).capped(a.N);
      rhs = rhs + monoQ(t.u, t.r, D) * cc.shifted((m - t.s) * D);
    }
    // Compare modulo q^(N+1): beyond-window zero certificates only clear the
    // truncation order.
    QSeries lhs = a.col(m).rescaled(D).capped(a.N);
    rhs = rhs.capped(a.N);
    if (auto e = firstDiff(lhs, rhs)) {
      long d2 = lcm_long(lhs.D, rhs.D);
      QSeries la = lhs.rescaled(d2), rb = rhs.rescaled(d2);
      GR va = (*e <= la.hi || la.poly) ? la.at(*e) : GR();
      GR vb = (*e <= rb.hi || rb.poly) ? rb.at(*e) : GR();
      Mismatch mm{m, *e, d2, va, vb};
      if (!best || rat(mm.qnum, mm.qden) < rat(best->qnum, best->qden) ||
          (rat(mm.qnum, mm.qden) == rat(best->qnum, best->qden) &&
           std::labs(mm.x) < std::labs(best->x)))
        best = mm;
    }
  }
  return best;
}

}  // namespace tf
