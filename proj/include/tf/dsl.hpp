#pragma once

#include "tf/mw.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf::dsl {

// ---------------------------------------------------------------------------
// Expression trees for series identities. Function arguments are ordinary
// subexpressions; the evaluator extracts monomials / integers / rationals
// where an operation requires them, so parse(print(e)) round-trips
// structurally without special argument node types.
// ---------------------------------------------------------------------------
enum class NodeKind { IntLit, QPow, UnitI, VarX, Name, Neg, Add, Sub, Mul, Div, Pow, Call };

enum class Func {
  Poch,   // poch(arg, step)        (arg; q^step)
  PochN,  // pochn(arg, step, n)    (arg; q^step)_n
  DP,     // dp(arg, step)          <arg; q^step>
  Th,     // th(alpha, d, k)        [alpha x^d; k]
  CB1,    // cb1(alpha, beta, d, k) canonical vector for alpha x^d + beta
  CB2,    // cb2(fpoly, k)          canonical vector for f = alpha x^d * g(1/x)
  Tw,     // tw(alpha, s, d, a, k, y)  twisted theta sum
  Eta,    // eta(m)
  GE,     // ge(g, m, level)        generalized eta quotient factor
  Named,  // named(ident)           built-in one-variable series
  SubX,   // sub(e, u)              x -> x^u
  Ge0,    // ge0(e, j)              drop x-exponents below j
  Sp,     // sp(e, u, r)            specialize x = u q^r
  Inv,    // inv(e, wq, wx)         graded inverse under val = wq*q - wx*x
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  NodeKind kind = NodeKind::IntLit;
  long ival = 0;             // IntLit value; Pow exponent
  Rat q{0};                  // QPow exponent
  std::string name;          // Name literal (argument of named)
  Func fn = Func::Poch;      // Call target
  std::vector<ExprPtr> args; // children
  long line = 1, col = 1;    // source location
};

struct ParseError : std::runtime_error {
  long line = 1, col = 1;
  ParseError(const std::string& msg, long ln, long cl)
      : std::runtime_error(msg + " at " + std::to_string(ln) + ":" + std::to_string(cl)),
        line(ln),
        col(cl) {}
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ExprPtr parse(const std::string& text);
std::string print(const ExprPtr& e);
bool structEq(const ExprPtr& a, const ExprPtr& b);

struct EvalCtx {
  Ctx c;
  long L = 0, U = 0;  // x-window for windowed constructions (cb*, tw, inv)
};

XSeries evaluate(const ExprPtr& e, const EvalCtx& ec);

// ---------------------------------------------------------------------------
// Identity files: '#' comments; records are blocks of "key: value" lines
// (id, cite, strategy, order, window L..U, lhs, rhs) separated by blank lines.
// ---------------------------------------------------------------------------
struct IdentityDecl {
  std::string id, cite, strategy;
  long order = 0;  // 0 = not specified
  bool hasWindow = false;
  long L = 0, U = 0;
  std::string lhs, rhs;
};

std::vector<IdentityDecl> parseIdentityFile(const std::string& text);

}  // namespace tf::dsl
