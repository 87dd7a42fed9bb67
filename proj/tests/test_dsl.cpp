#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tf/dsl.hpp"

using namespace tf;
using namespace tf::dsl;

TEST_CASE("parsing") {
  ExprPtr e = parse("poch(q,1)*dp(x,1)");
  REQUIRE(e->kind == NodeKind::Mul);
  CHECK(e->args[0]->kind == NodeKind::Call);
  CHECK(e->args[0]->fn == Func::Poch);
  CHECK(e->args[1]->fn == Func::DP);
  CHECK(e->args[1]->args[0]->kind == NodeKind::VarX);

  ExprPtr s = parse("th(-q, 5, 2) + th(-q, 5, 1)");
  REQUIRE(s->kind == NodeKind::Add);
  CHECK(s->args[0]->fn == Func::Th);
  CHECK(s->args[0]->args[0]->kind == NodeKind::Neg);
  CHECK(s->args[0]->args[0]->args[0]->kind == NodeKind::QPow);
  CHECK(s->args[1]->args[2]->ival == 1);

  ExprPtr r = parse("q^(3/2)*x^-2");
  REQUIRE(r->kind == NodeKind::Mul);
  CHECK(r->args[0]->q == rat(3, 2));
  CHECK(r->args[1]->kind == NodeKind::Pow);
  CHECK(r->args[1]->ival == -2);

  CHECK(parse("named(rr0)")->args[0]->name == "rr0");

  try {
    parse("dp(x");
    FAIL("expected a parse error");
  } catch (const ParseError& pe) {
    CHECK(pe.line == 1);
    CHECK(pe.col == 5);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("poch(q)"), ParseError);       // arity
  CHECK_THROWS_AS(parse("frob(q,1)"), ParseError);     // unknown function
  CHECK_THROWS_AS(parse("x x"), ParseError);           // no implicit product
  CHECK_THROWS_AS(parse("1 + @"), ParseError);         // lexical
}

TEST_CASE("printing round-trips structurally") {
  const char* samples[] = {
      "poch(q,1)*dp(x,1)",
      "th(-q,5,2)+th(-q,5,1)",
      "(th(1,2,0)-th(1,2,1))*dp(q^(3),7)",
      "-poch(q,1)^3",
      "q^(1/2)*x^-2+i*x",
      "cb2(q*x^2-x,0)",
      "tw(q,1,2,2,0,-q*x^-2)",
      "sp(dp(x,1),1,0)",
      "inv(poch(x,1),1,1)",
      "sub(named(rr0),2)",
      "eta(7)/eta(1)",
      "ge(2,1,13)",
      "(1+q)*(1-q)",
      "pochn(q*x,2,-3)",
      "ge0(dp(x,1),0)",
      "cb1(q,-1,2,1)",
  };
  for (const char* s : samples) {
    CAPTURE(s);
    ExprPtr e = parse(s);
    std::string t = print(e);
    CAPTURE(t);
    CHECK(structEq(e, parse(t)));
  }
  // Precedence: a parenthesized sum inside a product keeps its parens.
  ExprPtr m = parse("(q+x)*x");
  CHECK(print(m) == "(q+x)*x");
}

TEST_CASE("evaluation") {
  EvalCtx ec;
  ec.c = Ctx{1, 12};
  ec.L = -12;
  ec.U = 12;

  SUBCASE("triple product left side has coefficient 1 at x^2 q^1") {
    XSeries v = evaluate(parse("poch(q,1)*dp(x,1)"), ec);
    CHECK(v.coeff(2, 1) == GR(1));
    CHECK(v.coeff(0, 0) == GR(1));
    CHECK(v.coeff(1, 0) == GR(-1));
  }

  SUBCASE("named series") {
    XSeries v = evaluate(parse("named(rr0)"), ec);
    long want[] = {1, 1, 1, 1, 2};
    for (long e = 0; e < 5; ++e) CHECK(v.coeff(0, e) == GR(want[e]));
    CHECK_THROWS_AS(evaluate(parse("named(bogus)"), ec), EvalError);
  }

  SUBCASE("specialization of the double product at 1 vanishes") {
    XSeries v = evaluate(parse("sp(dp(x,1),1,0)"), ec);
    CHECK(v.col(0).knownZero());
  }

  SUBCASE("cube of (q;q): coefficients +/-(2n+1) at q^{n(n+1)/2}") {
    XSeries v = evaluate(parse("poch(q,1)^3"), ec);
    CHECK(v.coeff(0, 0) == GR(1));
    CHECK(v.coeff(0, 1) == GR(-3));
    CHECK(v.coeff(0, 2) == GR(0));
    CHECK(v.coeff(0, 3) == GR(5));
    CHECK(v.coeff(0, 6) == GR(-7));
    CHECK(v.coeff(0, 10) == GR(9));
  }

  SUBCASE("division by an x-free series") {
    XSeries v = evaluate(parse("1/poch(q,1)"), ec);  // partition numbers
    long want[] = {1, 1, 2, 3, 5, 7, 11, 15};
    for (long e = 0; e < 8; ++e) CHECK(v.coeff(0, e) == GR(want[e]));
    CHECK_THROWS_AS(evaluate(parse("x/dp(x,1)"), ec), EvalError);
  }

  SUBCASE("theta via the expression language matches the constructor") {
    XSeries v = evaluate(parse("th(-q,5,2)"), ec);
    XSeries w = thetaVector(Monomial{GR(-1), rat(1), 0}, 5, 2, ec.c);
    CHECK(!compare(v, w));
  }

  SUBCASE("canonical vector and substitution plumbing") {
    XSeries v = evaluate(parse("cb2(q*x^2-x,0)"), ec);
    auto mm = functionalEqCheck(v, XPolySpec{{Monomial{GR(-1), rat(0), 1},
                                              Monomial{GR(1), rat(1), 2}}});
    CHECK(!mm);
    XSeries s = evaluate(parse("sub(th(-1,1,0),2)"), ec);
    CHECK(s.coeff(2, 0) == GR(-1));  // x -> x^2 of sum (-1)^n q^C(n,2) x^n
    CHECK(s.coeff(1, 0) == GR(0));
  }

  SUBCASE("rational q-powers enlarge the grid") {
    XSeries v = evaluate(parse("q^(1/2)*x"), ec);
    CHECK(v.coeff(1, 1, 2) == GR(1));
  }

  SUBCASE("imaginary unit") {
    XSeries v = evaluate(parse("i*i"), ec);
    CHECK(v.coeff(0, 0) == GR(-1));
  }
}

TEST_CASE("identity files") {
  std::string text =
      "# two records\n"
      "id: triple\n"
      "cite: classical\n"
      "strategy: ENTIRE_COMPARE\n"
      "order: 40\n"
      "window: -20..20\n"
      "lhs: poch(q,1)*dp(x,1)\n"
      "rhs: th(-1,1,0)\n"
      "\n"
      "id: toy  # trailing comment\n"
      "lhs: 1\n"
      "rhs: 1\n";
  auto recs = parseIdentityFile(text);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].id == "triple");
  CHECK(recs[0].order == 40);
  CHECK(recs[0].hasWindow);
  CHECK(recs[0].L == -20);
  CHECK(recs[0].U == 20);
  CHECK(recs[0].strategy == "ENTIRE_COMPARE");
  CHECK(recs[1].id == "toy");
  CHECK(!recs[1].hasWindow);

  CHECK_THROWS_AS(parseIdentityFile("lhs: 1\nrhs: 1\n"), ParseError);   // no id
  CHECK_THROWS_AS(parseIdentityFile("id: a\nwhat: 3\n"), ParseError);   // bad key
  CHECK_THROWS_AS(parseIdentityFile("id: a\nwindow: 5..1\nlhs: 1\nrhs: 1\n"), ParseError);
}
