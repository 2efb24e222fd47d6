#include "recfun/perm.hpp"

#include "doctest.h"

using namespace recfun;

TEST_CASE("pairing round trips") {
    for (unsigned long x = 0; x < 40; ++x)
        for (unsigned long y = 0; y < 40; ++y) {
            Nat t = pair_c2(Nat(x), Nat(y));
            CHECK(pair_c21(t) == x);
            CHECK(pair_c22(t) == y);
            Nat u = pair_c3(Nat(x), Nat(y), Nat(x + y));
            CHECK(pair_c31(u) == x);
            CHECK(pair_c32(u) == y);
            CHECK(pair_c33(u) == x + y);
        }
}

TEST_CASE("p_f is bijective for arbitrary total functions") {
    Nat bound(1 << 10);
    CHECK(check_bijective_prefix(make_pf([](const Nat& x) { return Nat(x / 2); }),
                                 bound));
    CHECK(check_bijective_prefix(make_pf([](const Nat& x) { return Nat(x * x); }),
                                 bound));
    CHECK(check_bijective_prefix(make_pf([](const Nat&) { return Nat(0); }), bound));
}

TEST_CASE("primitive codes are bijective involutions or permutations") {
    Nat bound(1 << 10);
    for (const Perm& p : {perm_px(), perm_del(), perm_move(), perm_place(),
                          perm_swap1(), perm_swap2(), perm_sij(1, 3)})
        CHECK(check_bijective_prefix(p, bound));
    CHECK(check_involution_prefix(perm_del(), bound));
    CHECK(check_involution_prefix(perm_sij(0, 2), bound));
}

TEST_CASE("code of a partial binary function") {
    Perm c = code_of(
        [](const Nat& x, const Nat& y) { return std::optional<Nat>(x + y); });
    CHECK(c.fwd(pair_c3(Nat(2), Nat(3), Nat(0))) == pair_c3(Nat(2), Nat(3), Nat(7)));
    CHECK(c.fwd(pair_c3(Nat(2), Nat(3), Nat(7))) == pair_c3(Nat(2), Nat(3), Nat(0)));
    CHECK(check_bijective_prefix(c, Nat(1 << 10)));
}

TEST_CASE("composed unary word codes the composition") {
    auto f1 = [](const Nat& x) { return Nat(x + 3); };
    auto f2 = [](const Nat& x) { return Nat(2 * x); };
    Perm code = unar_compose_code({f1, f2});
    // code of g with g(x, 2y) = f1(f2(x))
    for (unsigned long x = 0; x < 8; ++x)
        for (unsigned long y = 0; y < 4; ++y) {
            Nat t = pair_c3(Nat(x), Nat(2 * y), Nat(0));
            CHECK(code.fwd(t) == pair_c3(Nat(x), Nat(2 * y), Nat(2 * x + 3 + 2)));
        }
}

TEST_CASE("delete combinator worked example") {
    Perm d = delete_combinator(perm_transposition(Nat(0), Nat(1)),
                               perm_transposition(Nat(0), Nat(2)),
                               [](const Nat& x) { return x == 0; }, Nat(64));
    CHECK(check_equal_prefix(d, perm_transposition(Nat(0), Nat(1)), Nat(64)));
}

TEST_CASE("correct triples and their matchings") {
    CorrectTriple tr = triple_from_tuples({{Nat(0), Nat(1), Nat(2), Nat(3)},
                                           {Nat(10), Nat(12), Nat(11), Nat(13)}});
    CHECK(check_triple(tr, 10));
    // squaring pair o cross reconstructs f
    Perm sq = perm_power(
        perm_compose(triple_pair_matching(tr), triple_cross_matching(tr)), 2);
    CHECK(check_equal_prefix(sq, tr.f, Nat(64)));
}

TEST_CASE("even matching pipeline rebuilds f from a word for f'") {
    auto nb = [](const Nat& x) { return x % 2 == 0 ? Nat(x + 1) : Nat(x - 1); };
    Perm nbp{nb, nb, std::nullopt};
    auto fs = [](const Nat& x) {
        if (x % 4 == 0) return Nat(x + 2);
        if (x % 4 == 2) return Nat(x - 2);
        return x;
    };
    Perm f{fs, fs, std::nullopt};
    Perm built = even_matching_pipeline(f, {nbp}, Nat(64));
    CHECK(check_equal_prefix(built, f, Nat(256)));
}

TEST_CASE("regular set machinery") {
    RegularSet evens = regular_evens();
    CHECK(evens.nu(Nat(5)) == 10);
    CHECK(evens.mu(Nat(10)) == 5);
    auto [r1, r2] = band_sets([](const Nat& x) { return Nat(2 * x + 2); });
    for (unsigned long x = 0; x < 128; ++x) {
        int in1 = r1.chi(Nat(x)), in2 = r2.chi(Nat(x));
        CHECK(in1 + in2 <= 1);
        if (in1) CHECK(r1.nu(r1.mu(Nat(x))) == x);
        if (in2) CHECK(r2.nu(r2.mu(Nat(x))) == x);
    }
    auto [b1, b2] = band_factory(2);
    CHECK(b1.chi(Nat(0)) == 1);  // A0 starts the first band union
    CHECK(b1.nu(b1.mu(Nat(0))) == 0);
}

TEST_CASE("stationary decomposition splits off a stationary factor") {
    auto gs = [](const Nat& x) {
        if (x % 4 == 0) return Nat(x + 1);
        if (x % 4 == 1) return Nat(x - 1);
        return x;
    };
    Perm g{gs, gs, std::nullopt};
    RegularSet b{[](const Nat& x) { return x % 4 == 2 ? 1 : 0; },
                 [](const Nat& x) { return x % 4 == 2 ? Nat((x - 2) / 4) : Nat(0); },
                 [](const Nat& x) { return Nat(4 * x + 2); }};
    auto [f1, f2] = stationary_decompose(g, [](const Nat& x) { return x % 4 == 0; }, b);
    CHECK(check_equal_prefix(perm_compose(f1, f2), g, Nat(256)));
    CHECK(check_bijective_prefix(f1, Nat(1 << 10)));
    CHECK(check_bijective_prefix(f2, Nat(1 << 10)));
}

TEST_CASE("stationary matchings compose back to f") {
    auto fs = [](const Nat& x) {
        if (x % 4 == 0) return Nat(x + 2);
        if (x % 4 == 2) return Nat(x - 2);
        return x;
    };
    Perm f{fs, fs, std::nullopt};
    StationaryTriples st = stationary_to_triples(f, regular_odds(), regular_evens());
    Perm prod = perm_compose(st.h2, perm_compose(st.h1, perm_compose(st.r1, st.r2)));
    CHECK(check_equal_prefix(prod, f, Nat(256)));
    CHECK(check_triple(st.tr1, 50));
    CHECK(check_triple(st.tr2, 50));
    CHECK(check_triple(st.th1, 50));
    CHECK(check_triple(st.th2, 50));
}

TEST_CASE("two-generator assembly agrees with the direct embedding") {
    CorrectTriple tr = triple_from_tuples({{Nat(0), Nat(1), Nat(2), Nat(3)}});
    // the constructor cross-checks w_assembled against w_direct pointwise
    TwoGenerator tg = two_generator_assembly({tr});
    CHECK(tg.modulus == 8);
    CHECK(check_bijective_prefix(tg.rol, Nat(1 << 10)));
    CHECK(check_bijective_prefix(tg.all, Nat(1 << 10)));
    CHECK(tg.w_direct[0].fwd(Nat(0)) == 8);
}
