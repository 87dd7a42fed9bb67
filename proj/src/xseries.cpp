#include "tf/xseries.hpp"

#include <algorithm>
#include <sstream>

namespace tf {

namespace {

const QSeries kZeroPoly = [] {
  QSeries z;
  z.D = 1;
  z.lo = 0;
  z.hi = -1;
  z.poly = true;
  return z;
}();

long knowledgeOf(const QSeries& s) { return s.poly ? kInf : s.hi; }

}  // namespace

std::string Mismatch::str() const {
  std::ostringstream os;
  os << "x^" << x << " q^";
  if (qden == 1)
    os << qnum;
  else
    os << "(" << qnum << "/" << qden << ")";
  os << ": lhs=" << lhs.str() << " rhs=" << rhs.str();
  return os.str();
}

XSeries XSeries::zero(long D, long N) {
  XSeries s;
  s.D = D;
  s.N = N;
  s.L = 0;
  s.U = -1;
  s.mode = XMode::Compact;
  return s;
}

XSeries XSeries::monomial(const GR& u, long qnum, long qden, long xexp, long D, long N) {
  long d2 = lcm_long(D, qden);
  XSeries s;
  s.D = d2;
  s.N = (d2 == D) ? N : (N + 1) * (d2 / D) - 1;
  s.L = s.U = xexp;
  s.mode = XMode::Compact;
  s.cols.push_back(QSeries::monomial(u, qnum, qden, d2));
  return s;
}

const QSeries& XSeries::col(long m) const {
  if (inWindow(m)) return cols[static_cast<size_t>(m - L)];
  if (m < L ? knownBelow() : knownAbove()) return kZeroPoly;
  throw std::out_of_range("x-coefficient outside known window (x^" + std::to_string(m) + ")");
}

GR XSeries::coeff(long m, long qnum, long qden) const {
  const QSeries& q = col(m);
  long d2 = lcm_long(q.D, qden);
  if ((qnum * (d2 / qden)) % (d2 / q.D) != 0) return GR();
  return q.at(qnum * (d2 / qden) / (d2 / q.D));
}

XSeries XSeries::rescaled(long newD) const {
  if (newD % D != 0) newD = lcm_long(newD, D);
  if (newD == D) return *this;
  long f = newD / D;
  XSeries r = *this;
  r.D = newD;
  r.N = (N + 1) * f - 1;
  for (auto& c : r.cols) c = c.rescaled(newD);
  return r;
}

XSeries XSeries::truncatedOrder(long newN) const {
  if (newN >= N) return *this;
  XSeries r = *this;
  r.N = newN;
  for (auto& c : r.cols)
    if (!c.poly || c.lastNonzero() > newN) c = c.truncated(newN);
  return r;
}

XSeries XSeries::capKnowledge(long hiU) const {
  XSeries r = *this;
  if (r.N > hiU) r.N = hiU;
  for (auto& c : r.cols) c = c.capped(hiU);
  return r;
}

XSeries XSeries::trimmed() const {
  if (mode != XMode::Compact) return *this;
  XSeries r = *this;
  while (!r.cols.empty() && r.cols.front().knownZero()) {
    r.cols.erase(r.cols.begin());
    ++r.L;
  }
  while (!r.cols.empty() && r.cols.back().knownZero()) {
    r.cols.pop_back();
    --r.U;
  }
  if (r.cols.empty()) {
    r.L = 0;
    r.U = -1;
  }
  return r;
}

void XSeries::settleOrder() {
  long k = kInf;
  for (const auto& c : cols) k = std::min(k, knowledgeOf(c));
  if (k < N) N = k;
}

XSeries XSeries::operator-() const {
  XSeries r = *this;
  for (auto& c : r.cols) c = -c;
  return r;
}

XSeries addsub(const XSeries& A, const XSeries& B, bool sub) {
  long d = lcm_long(A.D, B.D);
  XSeries a = A.rescaled(d), b = B.rescaled(d);
  long kLo = std::max(a.knownBelow() ? -kInf : a.L, b.knownBelow() ? -kInf : b.L);
  long kHi = std::min(a.knownAbove() ? kInf : a.U, b.knownAbove() ? kInf : b.U);
  if (kLo > kHi) throw std::domain_error("empty common window in add/sub");
  long hullLo = std::min(a.L, b.L), hullHi = std::max(a.U, b.U);
  if (a.cols.empty()) { hullLo = b.L; hullHi = b.U; }
  if (b.cols.empty()) { hullLo = a.L; hullHi = a.U; }
  if (a.cols.empty() && b.cols.empty()) { hullLo = 0; hullHi = -1; }
  long Lr = std::max(kLo, hullLo), Ur = std::min(kHi, hullHi);
  XSeries r;
  r.D = d;
  r.N = std::min(a.N, b.N);
  bool kb = kLo <= -kInf / 2, ka = kHi >= kInf / 2;
  r.mode = kb ? (ka ? XMode::Compact : XMode::WinAbove)
              : (ka ? XMode::WinBelow : XMode::WinBoth);
  if (Lr > Ur) {  // identically zero (as far as stored support goes) on the window
    r.L = kLo <= -kInf / 2 ? 0 : kLo;
    r.U = r.L - 1;
    return r;
  }
  r.L = Lr;
  r.U = Ur;
  r.cols.reserve(static_cast<size_t>(Ur - Lr + 1));
  for (long m = Lr; m <= Ur; ++m) {
    QSeries v = addsub(a.col(m), b.col(m), sub);
    r.cols.push_back(std::move(v));
  }
  r.settleOrder();
  return r;
}

XSeries operator*(const XSeries& A, const XSeries& B) {
  if (A.mode != XMode::Compact && B.mode != XMode::Compact)
    throw std::domain_error("insufficient support information: windowed * windowed");
  // Put the (possibly) windowed factor first.
  if (A.mode == XMode::Compact && B.mode != XMode::Compact) return B * A;
  long d = lcm_long(A.D, B.D);
  XSeries a = A.rescaled(d), b = B.rescaled(d).trimmed();
  long No = std::min(a.N, b.N);
  if (b.cols.empty()) {
    // The compact factor is identically zero: so is the product, wherever
    // the other factor is known.
    XSeries z = XSeries::zero(d, No);
    z.mode = a.mode;
    z.L = a.knownBelow() ? 0 : a.L;
    z.U = z.L - 1;
    return z;
  }
  long kLo = a.knownBelow() ? -kInf : a.L + b.U;
  long kHi = a.knownAbove() ? kInf : a.U + b.L;
  if (kLo > kHi) throw std::domain_error("empty window after multiplication");
  long hullLo = a.L + b.L, hullHi = a.U + b.U;
  long Lr = std::max(kLo, hullLo), Ur = std::min(kHi, hullHi);
  XSeries r;
  r.D = d;
  r.N = No;
  bool kb = kLo <= -kInf / 2, ka = kHi >= kInf / 2;
  r.mode = kb ? (ka ? XMode::Compact : XMode::WinAbove)
              : (ka ? XMode::WinBelow : XMode::WinBoth);
  if (a.cols.empty() || Lr > Ur) {
    r.L = kb ? 0 : kLo;
    r.U = r.L - 1;
    return r;
  }
  r.L = Lr;
  r.U = Ur;
  r.cols.reserve(static_cast<size_t>(Ur - Lr + 1));
  for (long m = Lr; m <= Ur; ++m) {
    QSeries acc = QSeries::zero(d, 0, /*poly=*/true);
    for (long j = b.L; j <= b.U; ++j) {
      const QSeries& bj = b.col(j);
      if (bj.knownZero() && bj.poly) continue;
      acc = acc + mulTrunc(a.col(m - j), bj, No);
    }
    r.cols.push_back(std::move(acc));
  }
  r.settleOrder();
  return r;
}

XSeries XSeries::scaledQ(const QSeries& f) const {
  long d = lcm_long(D, f.D);
  XSeries a = rescaled(d);
  QSeries g = f.rescaled(d);
  for (auto& c : a.cols) c = mulTrunc(c, g, a.N);
  a.settleOrder();
  return a;
}

XSeries XSeries::mulMonomial(const GR& u, long qnum, long qden, long xexp) const {
  long d = lcm_long(D, qden);
  XSeries a = rescaled(d);
  long sh = qnum * (d / qden);
  for (auto& c : a.cols) c = c.shifted(sh).scaled(u);
  a.L += xexp;
  a.U += xexp;
  a.settleOrder();
  return a;
}

XSeries XSeries::flipX() const {
  XSeries r = *this;
  std::reverse(r.cols.begin(), r.cols.end());
  long nl = -U, nu = -L;
  r.L = nl;
  r.U = nu;
  switch (mode) {
    case XMode::WinBelow: r.mode = XMode::WinAbove; break;
    case XMode::WinAbove: r.mode = XMode::WinBelow; break;
    default: break;
  }
  return r;
}

XSeries XSeries::scaleX(long u) const {
  if (u == 0) throw std::invalid_argument("scaleX: u must be nonzero");
  if (u < 0) return flipX().scaleX(-u);
  if (u == 1) return *this;
  XSeries r;
  r.D = D;
  r.N = N;
  r.mode = mode;
  if (cols.empty()) { r.L = L * u; r.U = r.L - 1; return r; }
  r.L = L * u;
  r.U = U * u;
  r.cols.assign(static_cast<size_t>(r.U - r.L + 1), QSeries::zero(D, N));
  for (long m = L; m <= U; ++m) r.cols[static_cast<size_t>((m - L) * u)] = col(m);
  return r;
}

XSeries XSeries::shiftX(long cnum, long cden) const {
  long d = lcm_long(D, cden);
  XSeries a = rescaled(d);
  long step = cnum * (d / cden);  // q-shift per unit of x-exponent
  for (long m = a.L; m <= a.U; ++m)
    a.cols[static_cast<size_t>(m - a.L)] = a.cols[static_cast<size_t>(m - a.L)].shifted(step * m);
  // Columns beyond the window on the side where step*m decreases were only
  // known to vanish up to order N; after the shift that certificate no longer
  // clears order N, so knowledge in that direction is lost.
  if (step > 0)
    a.mode = a.knownAbove() ? XMode::WinBelow : XMode::WinBoth;
  else if (step < 0)
    a.mode = a.knownBelow() ? XMode::WinAbove : XMode::WinBoth;
  a.settleOrder();
  return a;
}

XSeries XSeries::qPow(long m) const {
  if (m < 1) throw std::invalid_argument("qPow requires m >= 1");
  XSeries r = *this;
  r.N = (N + 1) * m - 1;
  for (auto& c : r.cols) c = c.qPower(m);
  return r;
}

QSeries XSeries::specialize(const GR& u, long rnum, long rden) const {
  long d = lcm_long(D, rden);
  long f = d / D;
  long Nd = (N + 1) * f - 1;  // knowledge bound in 1/d units
  // Validity: unknown x-exponents must land beyond the truncation order.
  // q-order of the x^m term shifts by r*m; r*m > N/D must hold just beyond
  // the window in each unknown direction (and then for all further m).
  (void)f;
  auto ok = [&](long m) { return rnum * m * d > Nd * rden; };  // (rnum/rden)*m > Nd/d
  if (!knownBelow()) {
    if (!(rnum < 0 && ok(L - 1)))
      throw std::domain_error("specialization escapes window (below)");
  }
  if (!knownAbove()) {
    if (!(rnum > 0 && ok(U + 1)))
      throw std::domain_error("specialization escapes window (above)");
  }
  QSeries acc = QSeries::zero(d, 0, /*poly=*/true);
  for (long m = L; m <= U; ++m) {
    const QSeries& cm = col(m);
    if (cm.poly && cm.knownZero()) continue;
    QSeries t = cm.rescaled(d).shifted(rnum * m * (d / rden)).scaled(u.pow(m));
    acc = acc + t;
  }
  // Unknown terms land above Nd by the check; cap knowledge there.
  if (!knownBelow() || !knownAbove()) acc = acc.truncated(Nd);
  return acc;
}

XSeries XSeries::truncateBelow(long j) const {
  XSeries r = *this;
  if (j > L) {
    long drop = std::min(j - L, static_cast<long>(cols.size()));
    r.cols.erase(r.cols.begin(), r.cols.begin() + drop);
    r.L = L + drop;
    if (r.cols.empty()) { r.L = j; r.U = j - 1; }
  }
  // Everything below j is (re)defined to be zero.
  r.mode = r.knownAbove() ? XMode::Compact : XMode::WinAbove;
  return r;
}

QSeries XSeries::tailLimit() const {
  if (knownBelow()) return QSeries::zero(D, N);  // compact: coefficients vanish downward
  if (cols.size() < 2) throw std::domain_error("window too small for tail detection");
  const QSeries& c0 = col(L);
  const QSeries& c1 = col(L + 1);
  long k = std::min({knowledgeOf(c0), knowledgeOf(c1), N});
  if (firstDiff(c0.truncated(k), c1.truncated(k)).has_value())
    throw std::domain_error("window too small: tail has not stabilized");
  return c0.truncated(k);
}

bool XSeries::isKnownZero() const {
  for (const auto& c : cols)
    if (!c.knownZero()) return false;
  return true;
}

XSeries XSeries::invertGraded(long wq, long wx, long Lw, long Uw) const {
  if (mode != XMode::Compact)
    throw std::domain_error("graded inversion requires a compact series");
  if (wx == 0) throw std::invalid_argument("graded inversion: wx must be nonzero");
  XSeries a = trimmed();
  if (a.cols.empty()) throw std::domain_error("not invertible: zero series");
  // valD(x^alpha q^(e/D)) = wq*e - wx*alpha*D  (real grading value times D)
  auto valD = [&](long alpha, long e) { return wq * e - wx * alpha * a.D; };
  // Locate the minimal monomial c.
  bool found = false;
  long ca = 0, ce = 0, vmin = 0;
  GR cu;
  for (long m = a.L; m <= a.U; ++m) {
    const QSeries& q = a.col(m);
    long top = q.poly ? q.lastNonzero() : q.hi;
    for (long e = q.lo; e <= top; ++e) {
      if (q.at(e).isZero()) continue;
      long v = valD(m, e);
      if (!found || v < vmin) {
        found = true;
        vmin = v;
        ca = m;
        ce = e;
        cu = q.at(e);
      } else if (v == vmin) {
        throw std::domain_error("grading certificate fails: minimal monomial not unique (x^" +
                                std::to_string(m) + ")");
      }
    }
  }
  if (!cu.isUnit())
    throw std::domain_error("grading certificate fails: leading coefficient is not a unit");
  // g = 1 - a/c; every monomial of g must have valD >= D.
  XSeries aOverC = a.mulMonomial(cu.inverse(), -ce, a.D, -ca);
  XSeries g = XSeries::one(a.D, a.N) - aOverC;
  long gEmin = 0;
  for (long m = g.L; m <= g.U; ++m) {
    const QSeries& q = g.col(m);
    long top = q.poly ? q.lastNonzero() : q.hi;
    for (long e = q.lo; e <= top; ++e) {
      if (q.at(e).isZero()) continue;
      if (valD(m, e) < a.D)
        throw std::domain_error("grading certificate fails at monomial x^" + std::to_string(m) +
                                " q^(" + std::to_string(e) + "/" + std::to_string(a.D) + ")");
      gEmin = std::min(gEmin, e);
    }
  }
  // Demand: final window [Lw,Uw], q-order <= N. In pre-shift coordinates the
  // demand region is shifted by (ca, ce); grading values shift by vmin.
  long Nq = a.N;
  long Vmax = wq * Nq - wx * a.D * (wx > 0 ? Lw : Uw) + vmin;
  long kMax = Vmax >= 0 ? Vmax / a.D : -1;
  long gDrop = std::max(0L, -gEmin);
  auto clip = [&](const XSeries& p) {
    XSeries r = p;
    for (long m = r.L; m <= r.U; ++m) {
      QSeries& q = r.cols[static_cast<size_t>(m - r.L)];
      long top = q.poly ? std::min(q.hi, q.lastNonzero()) : q.hi;
      QSeries nq;
      nq.D = q.D;
      nq.lo = q.lo;
      nq.hi = top;
      // Dropped monomials have valD > Vmax (or q-order beyond every demand
      // cell reachable with the remaining grading headroom) and multiplication
      // by g only raises valD, so they can never contribute to the demanded
      // window; treating them as zero is sound.
      nq.poly = true;
      nq.c.assign(static_cast<size_t>(std::max(0L, top - q.lo + 1)), GR());
      for (long e = q.lo; e <= top; ++e) {
        if (q.at(e).isZero()) continue;
        long v = valD(m, e);
        if (v > Vmax) continue;
        long head = (Vmax - v) / a.D;  // max further g-factors this term admits
        if (e > Nq + ce + head * gDrop) continue;
        nq.c[static_cast<size_t>(e - q.lo)] = q.at(e);
      }
      q = std::move(nq);
    }
    return r.trimmed();
  };
  // Neumann sum by doubling: after each step `sum` covers powers g^k for
  // k < cov, and gp = (clipped) g^{cov}.
  XSeries sum = XSeries::one(a.D, a.N);
  XSeries gp = clip(g);
  long cov = 1;
  while (cov <= kMax && !gp.cols.empty() && !gp.isKnownZero()) {
    sum = clip(sum + gp * sum);
    cov *= 2;
    if (cov <= kMax) gp = clip(gp * gp);
  }
  XSeries res = sum.mulMonomial(cu.inverse(), -ce, a.D, -ca);
  // Restrict to the requested window; exact there up to order N.
  XSeries out;
  out.D = res.D;
  out.N = Nq;
  out.L = Lw;
  out.U = Uw;
  out.mode = XMode::WinBoth;
  out.cols.reserve(static_cast<size_t>(Uw - Lw + 1));
  for (long m = Lw; m <= Uw; ++m) {
    QSeries q = res.inWindow(m) ? res.col(m) : QSeries::zero(res.D, Nq);
    q = q.truncated(Nq);
    q.poly = false;
    if (q.lo > Nq) q = QSeries::zero(res.D, Nq);
    if (q.hi < Nq) {  // pad knowledge: the omitted monomials lie beyond demand
      q.c.resize(static_cast<size_t>(Nq - q.lo + 1), GR());
      q.hi = Nq;
    }
    out.cols.push_back(std::move(q));
  }
  return out;
}

std::string XSeries::str(long maxCols) const {
  std::ostringstream os;
  long shown = 0;
  for (long m = L; m <= U && shown < maxCols; ++m, ++shown)
    os << "x^" << m << ": " << col(m).str() << "\n";
  return os.str();
}

std::optional<Mismatch> compare(const XSeries& A, const XSeries& B) {
  long d = lcm_long(A.D, B.D);
  XSeries a = A.rescaled(d), b = B.rescaled(d);
  long kLo = std::max(a.knownBelow() ? -kInf : a.L, b.knownBelow() ? -kInf : b.L);
  long kHi = std::min(a.knownAbove() ? kInf : a.U, b.knownAbove() ? kInf : b.U);
  if (kLo > kHi) throw std::domain_error("no common window to compare");
  long lo = std::max(kLo, std::min(a.L, b.L));
  long hi = std::min(kHi, std::max(a.U, b.U));
  for (long m = lo; m <= hi; ++m) {
    const QSeries& qa = a.col(m);
    const QSeries& qb = b.col(m);
    // A column outside the stored window may have been trimmed away after an
    // order cap, so its implicit zero claim is only valid up to the certified
    // order.
    long ka = knowledgeOf(qa), kb = knowledgeOf(qb);
    if (m < a.L || m > a.U) ka = std::min(ka, a.N);
    if (m < b.L || m > b.U) kb = std::min(kb, b.N);
    long k = std::min(ka, kb);
    if (k >= kInf / 2) k = std::max(qa.poly ? qa.lastNonzero() : qa.hi,
                                    qb.poly ? qb.lastNonzero() : qb.hi);
    long from = std::min(qa.lo, qb.lo);
    for (long e = from; e <= k; ++e) {
      GR va = (e <= qa.hi || qa.poly) ? qa.at(e) : GR();
      GR vb = (e <= qb.hi || qb.poly) ? qb.at(e) : GR();
      if (va != vb) return Mismatch{m, e, d, va, vb};
    }
  }
  return std::nullopt;
}

}  // namespace tf
