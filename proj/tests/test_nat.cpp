#include "recfun/nat.hpp"

#include "doctest.h"

using namespace recfun;

TEST_CASE("monus truncates at zero") {
    CHECK(monus(Nat(5), Nat(3)) == 2);
    CHECK(monus(Nat(3), Nat(5)) == 0);
    CHECK(monus(Nat(0), Nat(0)) == 0);
}

TEST_CASE("degenerate conventions are fixed") {
    CHECK(rm(Nat(7), Nat(0)) == 0);
    CHECK(rm(Nat(7), Nat(3)) == 1);
    CHECK(div_floor(Nat(7), Nat(0)) == 0);
    CHECK(div_floor(Nat(7), Nat(2)) == 3);
    CHECK(len(Nat(0)) == 0);
    CHECK(len(Nat(1)) == 1);
    CHECK(len(Nat(8)) == 4);
    CHECK(log2_floor(Nat(0)) == 0);
    CHECK(log2_floor(Nat(1)) == 0);
    CHECK(log2_floor(Nat(9)) == 3);
}

TEST_CASE("bitwise basis functions") {
    CHECK(bit_get(Nat(6), Nat(0)) == 0);
    CHECK(bit_get(Nat(6), Nat(1)) == 1);
    CHECK(band(Nat(12), Nat(10)) == 8);
    CHECK(min_pow2(Nat(100), Nat(3)) == 8);
    CHECK(min_pow2(Nat(5), Nat(10)) == 5);
    CHECK(sg(Nat(0)) == 0);
    CHECK(sg(Nat(17)) == 1);
    CHECK(sgbar(Nat(0)) == 1);
    CHECK(sgbar(Nat(17)) == 0);
}

TEST_CASE("cyclic right shift uses the bit length as width") {
    // 6 = 110b, width 3: one right rotation gives 011b = 3
    CHECK(rot_r(Nat(6), Nat(1)) == 3);
    CHECK(rot_r(Nat(6), Nat(3)) == 6);
    CHECK(rot_r(Nat(0), Nat(5)) == 0);
    // rotating by the width is the identity for every small value
    for (unsigned long x = 1; x < 64; ++x)
        CHECK(rot_r(Nat(x), len(Nat(x))) == x);
}

TEST_CASE("counted exponentials") {
    CHECK(pow2(Nat(10)) == 1024);
    CHECK(exp_logsq(Nat(0)) == 1);
    CHECK(exp_logsq(Nat(8)) == 512);  // 2^(3^2)
    CHECK(pow_log(Nat(3), Nat(8)) == 27);
    CHECK(pow_log(Nat(3), Nat(1)) == 1);
}

TEST_CASE("bounded sum and minimization") {
    auto sq = [](const Nat& y) { return Nat(y * y); };
    CHECK(bounded_sum(Nat(4), sq) == 14);
    CHECK(bounded_sum(Nat(0), sq) == 0);
    auto ge2 = [](const Nat& y) { return Nat(y >= 2 ? 1 : 0); };
    CHECK(bounded_mu(Nat(10), ge2) == 2);
    CHECK(bounded_mu(Nat(2), ge2) == 0);  // no witness below 2
}

TEST_CASE("bit budget guards materialization") {
    ScopedBudget guard(64);
    CHECK_THROWS_AS(pow2(Nat(1000)), BudgetError);
    CHECK(pow2(Nat(10)) == 1024);
}
