#include "tf/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace tf {

namespace {

long ratNum(const Rat& r) { return static_cast<long>(r.get_num().get_si()); }
long ratDen(const Rat& r) { return static_cast<long>(r.get_den().get_si()); }

// Fully-known zero column.
QSeries zeroPolyQ(long D) {
  QSeries z;
  z.D = D;
  z.lo = 0;
  z.hi = -1;
  z.poly = true;
  return z;
}

}  // namespace

long XPolySpec::degree() const {
  long d = 0;
  for (const auto& t : terms) d = std::max(d, t.s);
  return d;
}

Monomial XPolySpec::coeffAt(long s) const {
  for (const auto& t : terms)
    if (t.s == s) return t;
  return Monomial{GR(0), Rat(0), s};
}

XSeries XPolySpec::toX(const Ctx& c) const {
  XSeries r = XSeries::zero(c.D, c.ord());
  for (const auto& t : terms) r = r + t.toX(c);
  return r.trimmed();
}

XSeries pochFinite(const Monomial& arg, long m, long n, const Ctx& c) {
  if (m < 1) throw std::invalid_argument("poch step must be >= 1");
  if (n < 0) return pochFinite(arg.timesQ(rat(m) * n), m, -n, c);
  XSeries acc = XSeries::one(c.D, c.ord());
  for (long k = 0; k < n; ++k) acc = acc * (XSeries::one(c.D, c.ord()) - arg.timesQ(rat(m) * k).toX(c));
  return acc.trimmed();
}

QSeries pochFiniteQ(const Monomial& arg, long m, long n, const Ctx& c) {
  if (arg.s != 0) throw std::invalid_argument("pochFiniteQ: argument must be x-free");
  if (m < 1) throw std::invalid_argument("poch step must be >= 1");
  if (n < 0) {
    QSeries p = pochFiniteQ(arg.timesQ(rat(m) * n), m, -n, c);
    return p.invert(c.N * p.D);
  }
  QSeries acc = QSeries::one(c.D);
  for (long k = 0; k < n; ++k)
    acc = acc * (QSeries::one(c.D) - arg.timesQ(rat(m) * k).toQ(c));
  return acc;
}

XSeries pochInf(const Monomial& arg, long m, const Ctx& c) {
  if (m < 1) throw std::invalid_argument("poch step must be >= 1");
  if (arg.isZero()) return XSeries::one(c.D, c.ord());
  std::vector<Rat> es;
  for (long k = 0;; ++k) {
    Rat e = arg.r + rat(m) * k;
    if (e > c.N) break;  // remaining factors differ from 1 only above order N
    es.push_back(e);
  }
  // Suffix sums of the negative factor exponents: an upper bound on how much
  // the remaining factors can still lower a q-exponent. Content above
  // N + drop cannot reach order N, so intermediate truncation there is sound
  // and keeps the partial products from growing quadratically in degree.
  std::vector<Rat> drop(es.size() + 1, Rat(0));
  for (size_t k = es.size(); k-- > 0;)
    drop[k] = drop[k + 1] + (es[k] < 0 ? -es[k] : Rat(0));
  XSeries acc = XSeries::one(c.D, c.ord());
  for (size_t k = 0; k < es.size(); ++k) {
    acc = acc * (XSeries::one(c.D, c.ord()) -
                 arg.timesQ(rat(m) * static_cast<long>(k)).toX(c));
    Rat cap = (rat(c.N) + drop[k + 1]) * acc.D;
    mpz_class cz;
    mpz_cdiv_q(cz.get_mpz_t(), cap.get_num().get_mpz_t(), cap.get_den().get_mpz_t());
    acc = acc.truncatedOrder(cz.get_si());
  }
  // The dropped factors contribute only above order N, but the kept partial
  // product is no better than an order-N approximation: cap all claims there.
  return acc.capKnowledge(c.N * acc.D).trimmed();
}

QSeries pochInfQ(const Monomial& arg, long m, const Ctx& c) {
  if (arg.s != 0) throw std::invalid_argument("pochInfQ: argument must be x-free");
  if (m < 1) throw std::invalid_argument("poch step must be >= 1");
  if (arg.isZero()) return QSeries::one(c.D);
  QSeries acc = QSeries::one(c.D);
  for (long k = 0;; ++k) {
    Rat e = arg.r + rat(m) * k;
    if (e > c.N) break;
    acc = acc * (QSeries::one(c.D) - arg.timesQ(rat(m) * k).toQ(c));
    acc = acc.truncated(c.N * acc.D);
  }
  return acc.capped(c.N * acc.D);
}

XSeries doubleProduct(const Monomial& arg, long m, const Ctx& c) {
  return (pochInf(arg, m, c) * pochInf(arg.inverse().timesQ(rat(m)), m, c)).trimmed();
}

QSeries doubleProductQ(const Monomial& arg, long m, const Ctx& c) {
  return pochInfQ(arg, m, c) * pochInfQ(arg.inverse().timesQ(rat(m)), m, c);
}

XSeries thetaVector(const Monomial& alpha, long d, long k, const Ctx& c) {
  if (alpha.s != 0) throw std::invalid_argument("theta vector: alpha must be x-free");
  if (d < 1) throw std::invalid_argument("theta vector: d must be positive");
  auto ordOf = [&](long n) -> Rat { return rat(d) * binom2(n) + rat(k) * n + alpha.r * n; };
  // q-order is a convex quadratic in n; scan outward from the vertex.
  double vtx = (static_cast<double>(d) / 2.0 - k - alpha.r.get_d()) / d;
  long n0 = static_cast<long>(std::llround(vtx));
  std::map<long, std::pair<GR, Rat>> terms;  // n -> (coeff, q-exponent)
  for (long n = n0; ordOf(n) <= c.N; ++n) terms[n] = {alpha.u.pow(n), ordOf(n)};
  for (long n = n0 - 1; ordOf(n) <= c.N; --n) terms[n] = {alpha.u.pow(n), ordOf(n)};
  long D = c.D;
  for (auto& [n, t] : terms) D = lcm_long(D, ratDen(t.second));
  long Nu = c.N * D;
  XSeries r;
  r.D = D;
  r.N = Nu;
  r.mode = XMode::Compact;
  if (terms.empty()) {
    r.L = 0;
    r.U = -1;
    return r;
  }
  r.L = d * terms.begin()->first + k;
  r.U = d * terms.rbegin()->first + k;
  r.cols.assign(static_cast<size_t>(r.U - r.L + 1), zeroPolyQ(D));
  for (auto& [n, t] : terms) {
    QSeries cc = QSeries::monomial(t.first, ratNum(t.second), ratDen(t.second), D);
    r.cols[static_cast<size_t>(d * n + k - r.L)] = std::move(cc);
  }
  return r;
}

XSeries gTwistProduct(const XPolySpec& g, const Ctx& c) {
  Monomial g0 = g.coeffAt(0);
  if (!(g0.u == GR(1) && g0.r == 0))
    throw std::invalid_argument("g twist product: free coefficient must be 1");
  Rat rmin;
  bool any = false;
  for (const auto& t : g.terms) {
    if (t.s == 0) continue;
    if (t.s < 0) throw std::invalid_argument("g twist product: negative x-exponent in g");
    if (!any || t.r < rmin) rmin = t.r, any = true;
  }
  XSeries acc = XSeries::one(c.D, c.ord());
  if (!any) return acc;  // g == 1
  for (long n = 1; rmin + n <= c.N; ++n) {
    XSeries f = XSeries::one(c.D, c.ord());
    for (const auto& t : g.terms) {
      if (t.s == 0) continue;
      // term: u q^{r + n s} x^{-s}
      Monomial tt{t.u, t.r + rat(t.s) * n, -t.s};
      f = f + tt.toX(c);
    }
    acc = acc * f;
  }
  return acc.capKnowledge(c.N * acc.D).trimmed();
}

QSeries etaQ(long m, const Ctx& c) {
  if (m < 1) throw std::invalid_argument("eta: m must be positive");
  QSeries pre = QSeries::monomial(GR(1), m, 24, c.D);
  return pre * pochInfQ(Monomial::q(m), m, c);
}

QSeries genEtaQ(long g, long m, long level, const Ctx& c) {
  if (m < 1 || level < 1) throw std::invalid_argument("gen eta: m, level must be positive");
  long gg = fmod(g, 2 * level);
  GR sign(1);
  if (gg >= level) {
    gg -= level;  // E_{g+level} = -E_g
    sign = GR(-1);
  }
  if (gg == 0) return zeroPolyQ(c.D);  // E_0 = 0
  Rat t = rat(gg, level);
  Rat e = rat(m * level, 2) * (t * t - t + rat(1, 6));
  QSeries pre = QSeries::monomial(sign, ratNum(e), ratDen(e), c.D);
  return pre * dpq(gg * m, level * m, c);
}

QSeries pq(long a, long b, const Ctx& c) { return pochInfQ(Monomial::q(a), b, c); }

QSeries dpq(long a, long b, const Ctx& c) {
  return pochInfQ(Monomial::q(a), b, c) * pochInfQ(Monomial::q(b - a), b, c);
}

namespace {

// sum over n >= nFrom of q^{e(n)} * P_n, where P_n is a finite Pochhammer
// (inverted when inv) with argument base (x-free), step, length len(n).
QSeries mockSum(const Ctx& c, long nFrom, bool inv, const Monomial& base, long step,
                std::function<long(long)> expo, std::function<long(long)> len) {
  QSeries acc = zeroPolyQ(c.D);
  for (long n = nFrom; expo(n) <= c.N; ++n) {
    QSeries p = pochFiniteQ(base, step, len(n), c);
    if (inv) p = p.invert(c.N * p.D);
    acc = acc + QSeries::monomial(GR(1), expo(n), 1, c.D) * p;
  }
  return acc.truncated(c.N * acc.D);
}

}  // namespace

QSeries namedSeries(const std::string& name, const Ctx& c) {
  Monomial mq1{GR(-1), Rat(1), 0};   // -q
  Monomial mq2{GR(-1), Rat(2), 0};   // -q^2
  Monomial q1 = Monomial::q(1);
  Monomial q2 = Monomial::q(2);
  if (name == "rr0")
    return mockSum(c, 0, true, q1, 1, [](long n) { return n * n; }, [](long n) { return n; });
  if (name == "rr1")
    return mockSum(c, 0, true, q1, 1, [](long n) { return n * n + n; }, [](long n) { return n; });
  if (name == "rrvar0")
    return mockSum(c, 0, true, q2, 2, [](long n) { return n * n; }, [](long n) { return n; });
  if (name == "rrvar1")
    return mockSum(c, 0, true, q2, 2, [](long n) { return n * n + n; }, [](long n) { return n; });
  if (name == "f0")
    return mockSum(c, 0, true, mq1, 1, [](long n) { return n * n; }, [](long n) { return n; });
  if (name == "f1")
    return mockSum(c, 0, true, mq1, 1, [](long n) { return n * n + n; }, [](long n) { return n; });
  if (name == "psi0")
    return mockSum(c, 1, false, mq1, 1, [](long n) { return binom2(n + 1); },
                   [](long n) { return n - 1; });
  if (name == "psi1")
    return mockSum(c, 0, false, mq1, 1, [](long n) { return binom2(n + 1); },
                   [](long n) { return n; });
  if (name == "phi3rd")
    return mockSum(c, 0, true, mq2, 2, [](long n) { return n * n; }, [](long n) { return n; });
  if (name == "psi3rd")
    return mockSum(c, 1, true, q1, 2, [](long n) { return n * n; }, [](long n) { return n; });
  if (name == "F0")
    return mockSum(c, 0, true, q1, 2, [](long n) { return 2 * n * n; }, [](long n) { return n; });
  if (name == "F1")
    return mockSum(c, 1, true, q1, 2, [](long n) { return 2 * n * n - 2 * n; },
                   [](long n) { return n; });
  if (name == "phi0")
    return mockSum(c, 0, false, mq1, 2, [](long n) { return n * n; }, [](long n) { return n; });
  if (name == "phi1")
    return mockSum(c, 1, false, mq1, 2, [](long n) { return n * n; }, [](long n) { return n - 1; });
  throw std::invalid_argument("unknown named series: " + name);
}

}  // namespace tf
