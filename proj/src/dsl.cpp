#include "tf/dsl.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace tf::dsl {

namespace {

// --- lexer -------------------------------------------------------------------

struct Tok {
  enum Kind { Int, Ident, Sym, End } kind = End;
  std::string text;
  long val = 0;
  long line = 1, col = 1;
};

std::vector<Tok> lex(const std::string& text) {
  std::vector<Tok> out;
  long line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](char ch) {
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(ch);
      ++i;
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Int;
      t.text = text.substr(i, j - i);
      try {
        t.val = std::stol(t.text);
      } catch (const std::out_of_range&) {
        throw ParseError("integer literal out of range", line, col);
      }
      for (size_t k = i; k < j; ++k) advance(text[k]);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = text.substr(i, j - i);
      for (size_t k = i; k < j; ++k) advance(text[k]);
      i = j;
    } else if (std::string("+-*/^(),").find(ch) != std::string::npos) {
      t.kind = Tok::Sym;
      t.text = std::string(1, ch);
      advance(ch);
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Tok end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// --- function table ----------------------------------------------------------

struct FuncInfo {
  const char* name;
  Func fn;
  size_t arity;
};

constexpr FuncInfo kFuncs[] = {
    {"poch", Func::Poch, 2}, {"pochn", Func::PochN, 3}, {"dp", Func::DP, 2},
    {"th", Func::Th, 3},     {"cb1", Func::CB1, 4},     {"cb2", Func::CB2, 2},
    {"tw", Func::Tw, 6},     {"eta", Func::Eta, 1},     {"ge", Func::GE, 3},
    {"named", Func::Named, 1}, {"sub", Func::SubX, 2},  {"ge0", Func::Ge0, 2},
    {"sp", Func::Sp, 3},     {"inv", Func::Inv, 3},
};

const FuncInfo* funcByName(const std::string& s) {
  for (const auto& f : kFuncs)
    if (s == f.name) return &f;
  return nullptr;
}

const FuncInfo* funcInfo(Func fn) {
  for (const auto& f : kFuncs)
    if (f.fn == fn) return &f;
  return nullptr;
}

// --- parser ------------------------------------------------------------------

struct Parser {
  std::vector<Tok> toks;
  size_t pos = 0;

  const Tok& cur() const { return toks[pos]; }
  const Tok& peek(size_t k) const { return toks[std::min(pos + k, toks.size() - 1)]; }
  bool isSym(const char* s) const { return cur().kind == Tok::Sym && cur().text == s; }
  bool peekSym(size_t k, const char* s) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  Tok take() { return toks[pos++]; }
  void expectSym(const char* s) {
    if (!isSym(s)) throw ParseError(std::string("expected '") + s + "'", cur().line, cur().col);
    ++pos;
  }

  static ExprPtr node(NodeKind k, const Tok& at) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->line = at.line;
    e->col = at.col;
    return e;
  }

  long parseIntExponent() {
    bool neg = false;
    if (isSym("-")) {
      neg = true;
      ++pos;
    }
    if (cur().kind != Tok::Int)
      throw ParseError("expected integer exponent", cur().line, cur().col);
    long v = take().val;
    return neg ? -v : v;
  }

  ExprPtr parseExpr() { return parseAdd(); }

  ExprPtr parseAdd() {
    ExprPtr a = parseMul();
    while (isSym("+") || isSym("-")) {
      Tok op = take();
      ExprPtr b = parseMul();
      auto e = node(op.text == "+" ? NodeKind::Add : NodeKind::Sub, op);
      std::const_pointer_cast<Expr>(e)->args = {a, b};
      a = e;
    }
    return a;
  }

  ExprPtr parseMul() {
    ExprPtr a = parseUnary();
    while (isSym("*") || isSym("/")) {
      Tok op = take();
      ExprPtr b = parseUnary();
      auto e = node(op.text == "*" ? NodeKind::Mul : NodeKind::Div, op);
      std::const_pointer_cast<Expr>(e)->args = {a, b};
      a = e;
    }
    return a;
  }

  ExprPtr parseUnary() {
    if (isSym("-")) {
      Tok op = take();
      ExprPtr a = parseUnary();
      auto e = node(NodeKind::Neg, op);
      std::const_pointer_cast<Expr>(e)->args = {a};
      return e;
    }
    return parsePow();
  }

  ExprPtr parsePow() {
    ExprPtr a = parseAtom();
    if (isSym("^")) {
      Tok op = take();
      long n = parseIntExponent();
      auto e = node(NodeKind::Pow, op);
      auto* m = std::const_pointer_cast<Expr>(e).get();
      m->args = {a};
      m->ival = n;
      return e;
    }
    return a;
  }

  ExprPtr parseAtom() {
    const Tok& t = cur();
    if (t.kind == Tok::Int) {
      Tok v = take();
      auto e = node(NodeKind::IntLit, v);
      std::const_pointer_cast<Expr>(e)->ival = v.val;
      return e;
    }
    if (isSym("(")) {
      ++pos;
      ExprPtr e = parseExpr();
      expectSym(")");
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "i") {
        return node(NodeKind::UnitI, take());
      }
      if (t.text == "x") {
        return node(NodeKind::VarX, take());
      }
      if (t.text == "q") {
        Tok v = take();
        Rat r = rat(1);
        // Rational exponents use the explicit form q^(a/b); a bare '^ int'
        // is left for the generic power rule.
        if (isSym("^") && peekSym(1, "(")) {
          ++pos;  // ^
          ++pos;  // (
          bool neg = false;
          if (isSym("-")) {
            neg = true;
            ++pos;
          }
          if (cur().kind != Tok::Int)
            throw ParseError("expected rational exponent", cur().line, cur().col);
          long num = take().val;
          long den = 1;
          if (isSym("/")) {
            ++pos;
            if (cur().kind != Tok::Int)
              throw ParseError("expected exponent denominator", cur().line, cur().col);
            den = take().val;
            if (den == 0) throw ParseError("zero denominator", cur().line, cur().col);
          }
          expectSym(")");
          r = rat(neg ? -num : num, den);
        }
        auto e = node(NodeKind::QPow, v);
        std::const_pointer_cast<Expr>(e)->q = r;
        return e;
      }
      const FuncInfo* fi = funcByName(t.text);
      if (!fi) throw ParseError("unknown identifier '" + t.text + "'", t.line, t.col);
      Tok name = take();
      expectSym("(");
      auto e = node(NodeKind::Call, name);
      auto* m = std::const_pointer_cast<Expr>(e).get();
      m->fn = fi->fn;
      if (fi->fn == Func::Named) {
        if (cur().kind != Tok::Ident)
          throw ParseError("expected series name", cur().line, cur().col);
        Tok id = take();
        auto arg = node(NodeKind::Name, id);
        std::const_pointer_cast<Expr>(arg)->name = id.text;
        m->args = {arg};
      } else {
        m->args.push_back(parseExpr());
        while (isSym(",")) {
          ++pos;
          m->args.push_back(parseExpr());
        }
      }
      expectSym(")");
      if (m->args.size() != fi->arity)
        throw ParseError(std::string(fi->name) + " expects " + std::to_string(fi->arity) +
                             " arguments, got " + std::to_string(m->args.size()),
                         name.line, name.col);
      return e;
    }
    throw ParseError("expected expression", t.line, t.col);
  }
};

// --- printer -----------------------------------------------------------------

int precOf(const ExprPtr& e) {
  switch (e->kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Pow:
      return 4;
    default:
      return 5;
  }
}

void printTo(std::ostringstream& os, const ExprPtr& e, int context) {
  int prec = precOf(e);
  bool paren = prec < context;
  if (paren) os << '(';
  switch (e->kind) {
    case NodeKind::IntLit:
      os << e->ival;
      break;
    case NodeKind::QPow:
      if (e->q == rat(1)) {
        os << 'q';
      } else {
        os << "q^(" << e->q.get_num().get_str();
        if (e->q.get_den() != 1) os << '/' << e->q.get_den().get_str();
        os << ')';
      }
      break;
    case NodeKind::UnitI:
      os << 'i';
      break;
    case NodeKind::VarX:
      os << 'x';
      break;
    case NodeKind::Name:
      os << e->name;
      break;
    case NodeKind::Neg:
      os << '-';
      printTo(os, e->args[0], 3);
      break;
    case NodeKind::Add:
    case NodeKind::Sub:
      printTo(os, e->args[0], 1);
      os << (e->kind == NodeKind::Add ? "+" : "-");
      printTo(os, e->args[1], 2);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      printTo(os, e->args[0], 2);
      os << (e->kind == NodeKind::Mul ? "*" : "/");
      printTo(os, e->args[1], 3);
      break;
    case NodeKind::Pow:
      printTo(os, e->args[0], 5);
      os << '^';
      if (e->ival < 0) os << '-' << -e->ival;
      else os << e->ival;
      break;
    case NodeKind::Call: {
      const FuncInfo* fi = funcInfo(e->fn);
      os << (fi ? fi->name : "?") << '(';
      for (size_t k = 0; k < e->args.size(); ++k) {
        if (k) os << ',';
        printTo(os, e->args[k], 0);
      }
      os << ')';
      break;
    }
  }
  if (paren) os << ')';
}

// --- evaluation helpers ------------------------------------------------------

Monomial evalMonomial(const ExprPtr& e) {
  switch (e->kind) {
    case NodeKind::IntLit:
      return Monomial{GR(e->ival), rat(0), 0};
    case NodeKind::QPow:
      return Monomial{GR(1), e->q, 0};
    case NodeKind::UnitI:
      return Monomial{GR(0, 1), rat(0), 0};
    case NodeKind::VarX:
      return Monomial{GR(1), rat(0), 1};
    case NodeKind::Neg:
      return evalMonomial(e->args[0]).negated();
    case NodeKind::Mul: {
      Monomial a = evalMonomial(e->args[0]), b = evalMonomial(e->args[1]);
      return Monomial{a.u * b.u, a.r + b.r, a.s + b.s};
    }
    case NodeKind::Div: {
      Monomial a = evalMonomial(e->args[0]), b = evalMonomial(e->args[1]).inverse();
      return Monomial{a.u * b.u, a.r + b.r, a.s + b.s};
    }
    case NodeKind::Pow:
      return evalMonomial(e->args[0]).pow(e->ival);
    default:
      throw EvalError("expected a monomial argument");
  }
}

long evalLong(const ExprPtr& e) {
  if (e->kind == NodeKind::IntLit) return e->ival;
  if (e->kind == NodeKind::Neg) return -evalLong(e->args[0]);
  throw EvalError("expected an integer argument");
}

Rat evalRat(const ExprPtr& e) {
  if (e->kind == NodeKind::IntLit) return rat(e->ival);
  if (e->kind == NodeKind::Neg) return -evalRat(e->args[0]);
  if (e->kind == NodeKind::Div) {
    Rat num = evalRat(e->args[0]), den = evalRat(e->args[1]);
    if (den == 0) throw EvalError("zero denominator");
    return num / den;
  }
  if (e->kind == NodeKind::QPow) return e->q;  // notational convenience
  throw EvalError("expected a rational argument");
}

// Flattens an expression built from +, -, and monomials into an XPolySpec.
void collectPoly(const ExprPtr& e, bool neg, std::map<long, Monomial>& out) {
  if (e->kind == NodeKind::Add || e->kind == NodeKind::Sub) {
    collectPoly(e->args[0], neg, out);
    collectPoly(e->args[1], neg != (e->kind == NodeKind::Sub), out);
    return;
  }
  if (e->kind == NodeKind::Neg) {
    collectPoly(e->args[0], !neg, out);
    return;
  }
  Monomial m = evalMonomial(e);
  if (neg) m = m.negated();
  auto it = out.find(m.s);
  if (it == out.end()) {
    out.emplace(m.s, m);
    return;
  }
  if (it->second.r != m.r)
    throw EvalError("polynomial coefficient mixes distinct q-powers at one x-exponent");
  it->second.u = it->second.u + m.u;
  if (it->second.u.isZero()) out.erase(it);
}

XPolySpec evalPoly(const ExprPtr& e) {
  std::map<long, Monomial> terms;
  collectPoly(e, false, terms);
  XPolySpec f;
  for (const auto& [s, m] : terms) f.terms.push_back(m);
  return f;
}

XSeries embedQ(const QSeries& f, const EvalCtx& ec) {
  return XSeries::one(f.D, ec.c.N * f.D).scaledQ(f);
}

// Extracts the x^0 column of an x-free compact series.
QSeries asXFree(const XSeries& s, const char* what) {
  XSeries t = s.trimmed();
  if (t.mode != XMode::Compact)
    throw EvalError(std::string(what) + ": windowed series is not certifiably x-free");
  for (long m = t.L; m <= t.U; ++m)
    if (m != 0 && !t.col(m).knownZero())
      throw EvalError(std::string(what) + ": series is not x-free");
  return t.inWindow(0) ? t.col(0) : QSeries::zero(t.D, t.N);
}

XSeries evalImpl(const ExprPtr& e, const EvalCtx& ec);

XSeries evalCall(const ExprPtr& e, const EvalCtx& ec) {
  const Ctx& c = ec.c;
  switch (e->fn) {
    case Func::Poch:
      return pochInf(evalMonomial(e->args[0]), evalLong(e->args[1]), c);
    case Func::PochN:
      return pochFinite(evalMonomial(e->args[0]), evalLong(e->args[1]), evalLong(e->args[2]), c);
    case Func::DP:
      return doubleProduct(evalMonomial(e->args[0]), evalLong(e->args[1]), c);
    case Func::Th:
      return thetaVector(evalMonomial(e->args[0]), evalLong(e->args[1]), evalLong(e->args[2]), c);
    case Func::CB1:
      return canonKind1(evalMonomial(e->args[0]), evalMonomial(e->args[1]), evalLong(e->args[2]),
                        evalLong(e->args[3]), c, ec.L, ec.U);
    case Func::CB2:
      return canonKind2(evalPoly(e->args[0]), evalLong(e->args[1]), c, ec.L, ec.U);
    case Func::Tw: {
      TwistParams p;
      p.alpha = evalMonomial(e->args[0]);
      long s = evalLong(e->args[1]);
      if (s != 1 && s != -1) throw EvalError("tw: s must be +1 or -1");
      p.s = static_cast<int>(s);
      p.d = evalLong(e->args[2]);
      p.a = evalLong(e->args[3]);
      p.k = evalLong(e->args[4]);
      p.y = evalMonomial(e->args[5]);
      return twistedTheta(p, c, ec.L, ec.U);
    }
    case Func::Eta:
      return embedQ(etaQ(evalLong(e->args[0]), c), ec);
    case Func::GE:
      return embedQ(genEtaQ(evalLong(e->args[0]), evalLong(e->args[1]), evalLong(e->args[2]), c),
                    ec);
    case Func::Named:
      return embedQ(namedSeries(e->args[0]->name, c), ec);
    case Func::SubX: {
      long u = evalLong(e->args[1]);
      if (u == 0) throw EvalError("sub: exponent must be nonzero");
      return evalImpl(e->args[0], ec).scaleX(u);
    }
    case Func::Ge0:
      return evalImpl(e->args[0], ec).truncateBelow(evalLong(e->args[1]));
    case Func::Sp: {
      Monomial u = evalMonomial(e->args[1]);
      if (u.s != 0 || u.r != 0) throw EvalError("sp: unit argument must be q- and x-free");
      Rat r = evalRat(e->args[2]);
      QSeries v = evalImpl(e->args[0], ec)
                      .specialize(u.u, static_cast<long>(r.get_num().get_si()),
                                  static_cast<long>(r.get_den().get_si()));
      return embedQ(v, ec);
    }
    case Func::Inv: {
      long wq = evalLong(e->args[1]), wx = evalLong(e->args[2]);
      return evalImpl(e->args[0], ec).invertGraded(wq, wx, ec.L, ec.U);
    }
  }
  throw EvalError("unhandled function");
}

XSeries evalImpl(const ExprPtr& e, const EvalCtx& ec) {
  const Ctx& c = ec.c;
  switch (e->kind) {
    case NodeKind::IntLit:
      return XSeries::monomial(GR(e->ival), 0, 1, 0, c.D, c.ord());
    case NodeKind::QPow: {
      Monomial m{GR(1), e->q, 0};
      return m.toX(c);
    }
    case NodeKind::UnitI:
      return XSeries::monomial(GR(0, 1), 0, 1, 0, c.D, c.ord());
    case NodeKind::VarX:
      return XSeries::monomial(GR(1), 0, 1, 1, c.D, c.ord());
    case NodeKind::Name:
      throw EvalError("series name outside named(...)");
    case NodeKind::Neg:
      return -evalImpl(e->args[0], ec);
    case NodeKind::Add:
      return evalImpl(e->args[0], ec) + evalImpl(e->args[1], ec);
    case NodeKind::Sub:
      return evalImpl(e->args[0], ec) - evalImpl(e->args[1], ec);
    case NodeKind::Mul: {
      XSeries a = evalImpl(e->args[0], ec);
      XSeries b = evalImpl(e->args[1], ec);
      // The kernel's product requires the second factor compact; the product
      // is commutative, so reorder when only the first factor is.
      if (b.mode != XMode::Compact && a.mode == XMode::Compact) std::swap(a, b);
      return a * b;
    }
    case NodeKind::Div: {
      XSeries a = evalImpl(e->args[0], ec);
      QSeries f = asXFree(evalImpl(e->args[1], ec), "division");
      long v = f.firstNonzero();
      if (v >= kInf / 2) throw EvalError("division by a series with no known nonzero coefficient");
      return a.scaledQ(f.invert(c.N * f.D + std::labs(v)));
    }
    case NodeKind::Pow: {
      long n = e->ival;
      if (n == 0) return XSeries::one(c.D, c.ord());
      if (n > 0) {
        XSeries b = evalImpl(e->args[0], ec);
        XSeries r = b;
        for (long k = 1; k < n; ++k) r = r * b;
        return r;
      }
      QSeries f = asXFree(evalImpl(e->args[0], ec), "negative power");
      long v = f.firstNonzero();
      if (v >= kInf / 2) throw EvalError("negative power of a series with no known nonzero coefficient");
      QSeries g = f.invert(c.N * f.D + std::labs(v) * (-n));
      QSeries r = g;
      for (long k = 1; k < -n; ++k) r = r * g;
      return embedQ(r, ec);
    }
    case NodeKind::Call:
      try {
        return evalCall(e, ec);
      } catch (const EvalError&) {
        throw;
      } catch (const std::exception& ex) {
        const FuncInfo* fi = funcInfo(e->fn);
        throw EvalError(std::string("in ") + (fi ? fi->name : "?") + "(...) at " +
                        std::to_string(e->line) + ":" + std::to_string(e->col) + ": " + ex.what());
      }
  }
  throw EvalError("unhandled node");
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ExprPtr parse(const std::string& text) {
  Parser p{lex(text)};
  ExprPtr e = p.parseExpr();
  if (p.cur().kind != Tok::End)
    throw ParseError("unexpected trailing input", p.cur().line, p.cur().col);
  return e;
}

std::string print(const ExprPtr& e) {
  std::ostringstream os;
  printTo(os, e, 0);
  return os.str();
}

bool structEq(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::IntLit:
      if (a->ival != b->ival) return false;
      break;
    case NodeKind::QPow:
      if (a->q != b->q) return false;
      break;
    case NodeKind::Pow:
      if (a->ival != b->ival) return false;
      break;
    case NodeKind::Name:
      if (a->name != b->name) return false;
      break;
    case NodeKind::Call:
      if (a->fn != b->fn) return false;
      break;
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t k = 0; k < a->args.size(); ++k)
    if (!structEq(a->args[k], b->args[k])) return false;
  return true;
}

XSeries evaluate(const ExprPtr& e, const EvalCtx& ec) { return evalImpl(e, ec); }

std::vector<IdentityDecl> parseIdentityFile(const std::string& text) {
  std::vector<IdentityDecl> out;
  IdentityDecl cur;
  bool open = false;
  long lineNo = 0;
  auto flush = [&] {
    if (!open) return;
    if (cur.id.empty()) throw ParseError("identity record without id", lineNo, 1);
    if (cur.lhs.empty() || cur.rhs.empty())
      throw ParseError("identity record '" + cur.id + "' missing lhs/rhs", lineNo, 1);
    out.push_back(cur);
    cur = IdentityDecl{};
    open = false;
  };
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    ++lineNo;
    size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value'", lineNo, 1);
    std::string key = trim(line.substr(0, colon));
    std::string val = trim(line.substr(colon + 1));
    open = true;
    if (key == "id") cur.id = val;
    else if (key == "cite") cur.cite = val;
    else if (key == "strategy") cur.strategy = val;
    else if (key == "order") cur.order = std::stol(val);
    else if (key == "window") {
      size_t dots = val.find("..");
      if (dots == std::string::npos)
        throw ParseError("window must be 'L..U'", lineNo, 1);
      cur.L = std::stol(trim(val.substr(0, dots)));
      cur.U = std::stol(trim(val.substr(dots + 2)));
      if (cur.L > cur.U) throw ParseError("window must satisfy L <= U", lineNo, 1);
      cur.hasWindow = true;
    } else if (key == "lhs") cur.lhs = val;
    else if (key == "rhs") cur.rhs = val;
    else throw ParseError("unknown key '" + key + "'", lineNo, 1);
  }
  flush();
  return out;
}

}  // namespace tf::dsl
