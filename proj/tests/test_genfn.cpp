#include "recfun/genfn.hpp"

#include "doctest.h"

using namespace recfun;

namespace {

const GenPredicate kEven{"even", 1,
                         [](const std::vector<Nat>& v) { return v[0] % 2 == 0 ? 1 : 0; }};
const GenPredicate kLeq{"leq", 2,
                        [](const std::vector<Nat>& v) { return v[0] <= v[1] ? 1 : 0; }};

}  // namespace

TEST_CASE("brute-force generating function packs the truth table") {
    // even over [0,3): bits at x = 0 and 2 -> 2^0 + 2^2
    CHECK(genfn_bruteforce(kEven, Nat(3)) == 5);
    // leq over [0,2)^2: pairs (0,0),(0,1),(1,1) -> exponents 0, 2, 3
    CHECK(genfn_bruteforce(kLeq, Nat(2)) == 13);
}

TEST_CASE("polynomial evaluation") {
    Poly p{2, {{2, {1, 0}}, {1, {0, 2}}}};  // 2 x1 + x2^2
    CHECK(p.eval({Nat(3), Nat(4)}) == 22);
    CHECK(p.eval_all(Nat(2)) == 8);
}

TEST_CASE("logic constructions match brute force") {
    GenPredicate nleq{"", 2, [](const std::vector<Nat>& v) { return v[0] > v[1] ? 1 : 0; }};
    GenPredicate both{"", 2, [](const std::vector<Nat>& v) {
                          return (v[0] <= v[1] && v[0] % 2 == 0) ? 1 : 0;
                      }};
    GenPredicate even2{"", 2,
                       [](const std::vector<Nat>& v) { return v[0] % 2 == 0 ? 1 : 0; }};
    for (unsigned long y = 1; y <= 4; ++y) {
        Nat a = genfn_bruteforce(kLeq, Nat(y));
        Nat b = genfn_bruteforce(even2, Nat(y));
        CHECK(gen_logic(a, Nat(0), 2, Nat(y), GenLogicOp::Not) ==
              genfn_bruteforce(nleq, Nat(y)));
        CHECK(gen_logic(a, b, 2, Nat(y), GenLogicOp::And) ==
              genfn_bruteforce(both, Nat(y)));
    }
}

TEST_CASE("polynomial comparison matches brute force") {
    Poly p{2, {{2, {1, 0}}, {1, {0, 2}}}};  // 2 x1 + x2^2
    Poly q{2, {{3, {0, 1}}, {1, {0, 0}}}};  // 3 x2 + 1
    GenPredicate ge{"", 2, [&](const std::vector<Nat>& v) {
                        return p.eval(v) >= q.eval(v) ? 1 : 0;
                    }};
    for (unsigned long y = 1; y <= 4; ++y)
        CHECK(gen_poly_cmp(p, q, Nat(y)) == genfn_bruteforce(ge, Nat(y)));
}

TEST_CASE("explicit transformations match brute force") {
    GenPredicate psi{"", 3, [](const std::vector<Nat>& v) {
                         return (v[0] + 2 * v[1] == v[2] || v[0] == v[1]) ? 1 : 0;
                     }};
    for (unsigned long y = 2; y <= 3; ++y) {
        Nat f = genfn_bruteforce(psi, Nat(y));
        GenPredicate rot{"", 3, [&](const std::vector<Nat>& v) {
                             return psi.chi({v[1], v[2], v[0]});
                         }};
        CHECK(gen_explicit_permute(f, 3, {2, 3, 1}, Nat(y)) ==
              genfn_bruteforce(rot, Nat(y)));
        GenPredicate sub{"", 2, [&](const std::vector<Nat>& v) {
                             return psi.chi({v[0], v[1], Nat(1)});
                         }};
        CHECK(gen_explicit_subst_const(f, 3, Nat(1), Nat(y)) ==
              genfn_bruteforce(sub, Nat(y)));
        GenPredicate ident{"", 2, [&](const std::vector<Nat>& v) {
                               return psi.chi({v[0], v[1], v[1]});
                           }};
        CHECK(gen_explicit_identify_last(f, 3, Nat(y)) ==
              genfn_bruteforce(ident, Nat(y)));
        GenPredicate dummy{"", 4, [&](const std::vector<Nat>& v) {
                               return psi.chi({v[0], v[1], v[2]});
                           }};
        CHECK(gen_explicit_add_dummy(f, 3, Nat(y)) == genfn_bruteforce(dummy, Nat(y)));
    }
}

TEST_CASE("counting matches brute force") {
    Poly bound{1, {{1, {1}}, {1, {0}}}};  // x1 + 1
    GenPredicate want{"", 2, [&](const std::vector<Nat>& v) {
                          Nat cnt = 0;
                          for (Nat x = 0; x < v[0] + 1; ++x)
                              if (x % 2 == 0) ++cnt;
                          return v[1] == cnt ? 1 : 0;
                      }};
    for (unsigned long z = 1; z <= 3; ++z)
        CHECK(gen_count(kEven, bound, Nat(z)) == genfn_bruteforce(want, Nat(z)));
}

TEST_CASE("xs extraction recovers function values") {
    auto bit_at = [](const Nat& v, const Nat& j) {
        return mpz_tstbit(v.get_mpz_t(), mpz_get_ui(j.get_mpz_t())) ? 1 : 0;
    };
    GenPredicate gid{"", 2,
                     [bit_at](const std::vector<Nat>& v) { return bit_at(v[0], v[1]); }};
    Poly bid{1, {{1, {1}}, {1, {0}}}};
    for (unsigned long x = 0; x <= 4; ++x)
        CHECK(xs_extract(gid, bid, {Nat(x)}) == x);

    GenPredicate gmon{"", 3, [bit_at](const std::vector<Nat>& v) {
                          return bit_at(monus(v[0], v[1]), v[2]);
                      }};
    Poly bmon{2, {{1, {1, 0}}, {1, {0, 0}}}};
    for (unsigned long x = 0; x <= 3; ++x)
        for (unsigned long y = 0; y <= 3; ++y)
            CHECK(xs_extract(gmon, bmon, {Nat(x), Nat(y)}) == monus(Nat(x), Nat(y)));
}
