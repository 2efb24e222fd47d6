#include "recfun/fom.hpp"
#include "recfun/nat.hpp"

#include "doctest.h"

using namespace recfun;

namespace {

// Bit position of the assignment (y_1..y_m) in the compiled table for a
// word of length l.
Nat table_pos(const std::vector<std::uint64_t>& ys, std::uint64_t l) {
    Nat pos = 0, wgt(static_cast<unsigned long>(l));
    for (std::size_t i = 0; i < ys.size(); ++i) {
        pos += Nat(static_cast<unsigned long>(ys[i] - 1)) * wgt;
        wgt *= static_cast<unsigned long>(l);
    }
    return pos;
}

}  // namespace

TEST_CASE("word values read most significant symbol first") {
    CHECK(word_value("1") == 1);
    CHECK(word_value("101") == 5);
    CHECK(word_value("0011") == 3);
}

TEST_CASE("parse and print round trip") {
    for (const char* s : {"(leq y1 y2)", "(M y1 (wbit y1))",
                          "(E y2 (and (bit y1 y2) (not (wbit y2))))"}) {
        FomPtr f = parse_fom(s);
        FomPtr g = parse_fom(print_fom(f));
        CHECK(print_fom(f) == print_fom(g));
    }
    CHECK_THROWS(parse_fom("(frob y1)"));
}

TEST_CASE("model checking on explicit words") {
    WordModel m{"1011", {1, 3}};
    CHECK(eval_formula(parse_fom("(leq y1 y2)"), m));
    CHECK(eval_formula(parse_fom("(wbit y1)"), m));        // X(1) = 1
    CHECK(eval_formula(parse_fom("(wbit y2)"), m));        // X(3) = 1
    WordModel m2{"1011", {2, 3}};
    CHECK(!eval_formula(parse_fom("(wbit y1)"), m2));      // X(2) = 0
    // majority: X holds at 3 of 4 positions
    CHECK(eval_formula(parse_fom("(M y1 (wbit y1))"), m));
    CHECK(!eval_formula(parse_fom("(M y1 (not (wbit y1)))"), m));
}

TEST_CASE("quantifiers") {
    WordModel m{"0100", {1}};
    CHECK(eval_formula(parse_fom("(E y1 (wbit y1))"), m));
    CHECK(!eval_formula(parse_fom("(A y1 (wbit y1))"), m));
    WordModel all{"1111", {1}};
    CHECK(eval_formula(parse_fom("(A y1 (wbit y1))"), all));
}

TEST_CASE("arithmetic codec matches the string encoders") {
    std::vector<std::vector<Nat>> corpus = {
        {Nat(1)}, {Nat(5)}, {Nat(1), Nat(2)}, {Nat(6), Nat(1), Nat(3)}};
    for (const auto& xs : corpus)
        for (std::uint64_t k = 1; k <= 2; ++k) {
            std::string w = code_var_k(xs, k);
            CHECK(lcode_nk(xs, k) == w.size());
            CHECK(code_nk(xs, k) == word_value(w));
        }
}

TEST_CASE("compiled table agrees with the model checker") {
    for (const char* s : {"(leq y1 y2)", "(or (bit y1 1) (wbit y2))",
                          "(M y2 (bit y1 y2))"}) {
        FomPtr f = parse_fom(s);
        std::size_t m = fom_max_var(f);
        REQUIRE(m >= 1);
        HFunctionTable tab = compile_fom(f, m);
        for (std::uint64_t l = 1; l <= 4; ++l)
            for (std::uint64_t wv = 0; wv < (1ull << l); ++wv) {
                std::string w;
                for (std::uint64_t i = l; i-- > 0;) w += ((wv >> i) & 1) ? '1' : '0';
                Nat table = tab.f(word_value(w), pow2(Nat(l)));
                std::vector<std::uint64_t> ys(m, 1);
                for (;;) {
                    bool got = bit_get(table, table_pos(ys, l)) != 0;
                    bool want = eval_formula(f, WordModel{w, ys});
                    CHECK(got == want);
                    std::size_t i = 0;
                    while (i < m && ++ys[i] > l) ys[i++] = 1;
                    if (i == m) break;
                }
            }
    }
}
