#include "recfun/blockvec.hpp"

#include "doctest.h"

using namespace recfun;

TEST_CASE("encode/decode round trip") {
    BlockVec v{{Nat(5), Nat(0), Nat(3)}, 4};
    Nat x = encode(v);
    BlockVec back = decode(x, 3, 4);
    REQUIRE(back.blocks.size() == 3);
    CHECK(back.blocks[0] == 5);
    CHECK(back.blocks[1] == 0);
    CHECK(back.blocks[2] == 3);
}

TEST_CASE("documented combinator examples") {
    CHECK(bv::swap_n(Nat(3), 2, {1}, {3}) == 9);
    CHECK(bv::incr(Nat(3), 2, 3) == 9);
    CHECK(bv::decr(Nat(9), 2, 3) == 3);
    CHECK(bv::incrx(Nat(0), 2, 1, 4) == 0);
    CHECK(bv::swap_n(Nat(0), 3, {1, 4}, {2, 5}) == 0);
}

TEST_CASE("structural identities") {
    for (unsigned long x = 0; x < 64; ++x) {
        // swap with equal weights is the identity on supported inputs
        Nat spread = bvo::incr(Nat(x), 6, 3);
        CHECK(bv::swap_n(spread, 6, {3}, {3}) == spread);
        // decr undoes incr
        CHECK(bv::decr(bvo::incr(Nat(x), 6, 4), 6, 4) == x);
        // reverse_bits is an involution below 2^n
        CHECK(bv::reverse_bits(bv::reverse_bits(Nat(x), 6), 6) == x);
    }
}

TEST_CASE("formula paths agree with the decode/transform/encode oracles") {
    for (unsigned long x = 0; x < 256; ++x) {
        CHECK(bv::rep(Nat(x), 2, 4) == bvo::rep(Nat(x), 2, 4));
        CHECK(bv::bnot(Nat(x), 8) == bvo::bnot(Nat(x), 8));
        CHECK(bv::reverse_bits(Nat(x), 8) == bvo::reverse_bits(Nat(x), 8));
        CHECK(bv::incrx(Nat(x), 2, 4, 12) == bvo::incrx(Nat(x), 2, 4, 12));
        for (unsigned long y = 0; y < 256; y += 37) {
            CHECK(bv::bor(Nat(x), Nat(y), 8) == bvo::bor(Nat(x), Nat(y), 8));
            CHECK(bv::bxor(Nat(x), Nat(y), 8) == bvo::bxor(Nat(x), Nat(y), 8));
            CHECK(bv::cmp(Nat(x), Nat(y), 2, 4) == bvo::cmp(Nat(x), Nat(y), 2, 4));
            CHECK(bv::cmpeq(Nat(x), Nat(y), 2, 4) == bvo::cmpeq(Nat(x), Nat(y), 2, 4));
        }
    }
    // sum over digit blocks
    for (unsigned long x = 0; x < 64; ++x) {
        Nat spread = bvo::incr(Nat(x), 6, 3);  // 6 digits below 2^3, stride 3
        CHECK(bv::sum(spread, 2, 3, 3) == bvo::sum(spread, 2, 3, 3));
    }
}

TEST_CASE("ssqrt halves even powers of two") {
    for (unsigned long x = 0; x <= 24; ++x)
        CHECK(bv::ssqrt(pow2(Nat(2 * x))) == pow2(Nat(x)));
}

TEST_CASE("checked wrappers reject bad preconditions") {
    // weight map 2*t1 + 1*t2 collides over [0,3)^2 (t=(0,2) and t=(1,0))
    CHECK_THROWS_AS(bvc::swap_n(Nat(1), 3, {2, 1}, {1, 5}), DomainError);
    CHECK(bvc::swap_n(Nat(3), 2, {1}, {3}) == 9);
}
