#include "recfun/formula.hpp"

#include "doctest.h"

using namespace recfun;

TEST_CASE("parse, print, and evaluate") {
    FormulaPtr f = parse_formula("add(mul(x,y),monus(5,z))");
    Env env{{"x", Nat(3)}, {"y", Nat(4)}, {"z", Nat(2)}};
    CHECK(evaluate(f, env) == 15);
    CHECK(evaluate(parse_formula(print_formula(f)), env) == 15);
    CHECK(evaluate(parse_formula("pow2(10)"), {}) == 1024);
    CHECK_THROWS_AS(parse_formula("frobnicate(1)"), ParseError);
    CHECK_THROWS_AS(parse_formula("add(1"), ParseError);
}

TEST_CASE("binomial formula on small Pascal entries") {
    FormulaPtr bf = binomial_formula();
    for (unsigned long x = 0; x <= 12; ++x)
        for (unsigned long y = 0; y <= x; ++y) {
            Env env{{"x", Nat(x)}, {"y", Nat(y)}};
            Nat want;
            mpz_bin_uiui(want.get_mpz_t(), x, y);
            CHECK(evaluate(bf, env) == want);
        }
}

TEST_CASE("exponent-height classification") {
    FormulaPtr h1 = parse_formula("add(mul(x,y),len(z))");
    CHECK(exp_height(h1, Tower::Exp2).height == 1);
    FormulaPtr h2 = parse_formula("add(mul(x,pow2(add(x,mul(y,z)))),pow2(t))");
    CHECK(exp_height(h2, Tower::Exp2).height == 2);
    FormulaPtr h3 = parse_formula("pow2(pow2(x))");
    CHECK(exp_height(h3, Tower::Exp2).height == 3);
    // x^y is not classifiable against the 2^x tower
    FormulaPtr pv = parse_formula("powvar(x,y)");
    CHECK_THROWS_AS(exp_height(pv, Tower::Exp2), DomainError);
    CHECK(exp_height(pv, Tower::PowXY).height == 2);
}
