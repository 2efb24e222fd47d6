#include "recfun/suites.hpp"

#include "recfun/blockvec.hpp"
#include "recfun/formula.hpp"
#include "recfun/perm.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace recfun {

namespace {

std::string nat_str(const Nat& x) { return x.get_str(); }

// Deterministic helpers on top of the seeded engine.
std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Nat rnd_bits(std::mt19937_64& rng, std::uint64_t bits) {
    Nat x = 0;
    for (std::uint64_t base = 0; base < bits; base += 64) {
        std::uint64_t word = rng();
        std::uint64_t take = std::min<std::uint64_t>(64, bits - base);
        for (std::uint64_t j = 0; j < take; ++j)
            if ((word >> j) & 1) mpz_setbit(x.get_mpz_t(), base + j);
    }
    return x;
}

SuiteResult fail(SuiteResult r, const std::string& detail) {
    r.passed = false;
    r.detail = detail;
    return r;
}

}  // namespace

// --- criterion 1: binomial formula vs Pascal -----------------------------

SuiteResult suite_binomial() {
    SuiteResult r{"binomial"};
    FormulaPtr bf = binomial_formula();
    for (unsigned long x = 0; x <= 40; ++x)
        for (unsigned long y = 0; y <= x; ++y) {
            Env env{{"x", Nat(x)}, {"y", Nat(y)}};
            Nat got = evaluate(bf, env);
            Nat want;
            mpz_bin_uiui(want.get_mpz_t(), x, y);
            ++r.cases;
            if (got != want)
                return fail(r, "C(" + std::to_string(x) + "," + std::to_string(y) +
                                   ") = " + nat_str(got) + ", Pascal " + nat_str(want));
        }
    return r;
}

// --- criterion 2: tower height classifier --------------------------------

SuiteResult suite_heights() {
    SuiteResult r{"heights"};
    // x * 2^{x + y z} + 2^t has height 2 over the 2^x tower
    FormulaPtr h2 = Formula::apply(
        Sym::Add,
        {Formula::apply(Sym::Mul,
                        {Formula::var("x"),
                         Formula::apply(Sym::Pow2,
                                        {Formula::apply(Sym::Add,
                                                        {Formula::var("x"),
                                                         Formula::apply(Sym::Mul,
                                                                        {Formula::var("y"),
                                                                         Formula::var("z")})})})}),
         Formula::apply(Sym::Pow2, {Formula::var("t")})});
    FormulaPtr h3 = Formula::apply(Sym::Pow2, {Formula::apply(Sym::Pow2, {Formula::var("x")})});
    r.cases = 2;
    auto c2 = exp_height(h2, Tower::Exp2);
    if (c2.height != 2)
        return fail(r, "height(x 2^{x+yz} + 2^t) = " + std::to_string(c2.height) + ", want 2");
    auto c3 = exp_height(h3, Tower::Exp2);
    if (c3.height != 3)
        return fail(r, "height(2^{2^x}) = " + std::to_string(c3.height) + ", want 3");
    return r;
}

// --- criterion 3: block combinators, formula vs oracle -------------------

SuiteResult suite_blockvec(std::uint64_t seed, std::uint64_t instances) {
    SuiteResult r{"blockvec"};
    std::mt19937_64 rng(seed ^ 0xb10c0deULL);
    auto diff = [&r](const char* op, const std::string& inst, const Nat& f,
                     const Nat& o) {
        return fail(r, std::string(op) + " " + inst + ": formula " + nat_str(f) +
                           ", oracle " + nat_str(o));
    };
    for (std::uint64_t it = 0; it < instances; ++it) {
        std::uint64_t n = 1 + rnd_below(rng, 6);
        std::uint64_t l = 1 + rnd_below(rng, 8);
        Nat x = rnd_bits(rng, n * l), y = rnd_bits(rng, n * l);
        std::string inst = "n=" + std::to_string(n) + " l=" + std::to_string(l) +
                           " x=" + nat_str(x) + " y=" + nat_str(y);
        r.cases += 12;
        if (bv::rep(x, n, l) != bvo::rep(x, n, l))
            return diff("rep", inst, bv::rep(x, n, l), bvo::rep(x, n, l));
        if (bv::bnot(x, n * l) != bvo::bnot(x, n * l))
            return diff("not", inst, bv::bnot(x, n * l), bvo::bnot(x, n * l));
        if (bv::bor(x, y, n * l) != bvo::bor(x, y, n * l))
            return diff("or", inst, bv::bor(x, y, n * l), bvo::bor(x, y, n * l));
        if (bv::bxor(x, y, n * l) != bvo::bxor(x, y, n * l))
            return diff("xor", inst, bv::bxor(x, y, n * l), bvo::bxor(x, y, n * l));
        if (bv::cmp(x, y, n, l) != bvo::cmp(x, y, n, l))
            return diff("cmp", inst, bv::cmp(x, y, n, l), bvo::cmp(x, y, n, l));
        if (bv::cmpeq(x, y, n, l) != bvo::cmpeq(x, y, n, l))
            return diff("cmpeq", inst, bv::cmpeq(x, y, n, l), bvo::cmpeq(x, y, n, l));

        // incrx: widen fields from l to at least (n+1) l
        std::uint64_t l2 = (n + 1) * l + rnd_below(rng, 3);
        if (bv::incrx(x, n, l, l2) != bvo::incrx(x, n, l, l2))
            return diff("incrx", inst, bv::incrx(x, n, l, l2), bvo::incrx(x, n, l, l2));

        // incr/decr: spread bits of a q-bit word to stride l and back
        std::uint64_t q = 1 + rnd_below(rng, 48);
        Nat xb = rnd_bits(rng, q);
        if (bv::incr(xb, q, l) != bvo::incr(xb, q, l))
            return diff("incr", inst, bv::incr(xb, q, l), bvo::incr(xb, q, l));
        Nat xs = bvo::incr(xb, q, l);
        if (bv::decr(xs, q, l) != bvo::decr(xs, q, l))
            return diff("decr", inst, bv::decr(xs, q, l), bvo::decr(xs, q, l));

        // sum: k digit blocks per field, digits below 2^l
        std::uint64_t kmax = std::min<std::uint64_t>(n, (1ull << l) - 1);
        std::uint64_t k = 1 + rnd_below(rng, kmax);
        Nat xd = 0;
        for (std::uint64_t j = 0; j < n * k; ++j)
            if (rnd_below(rng, 2)) mpz_setbit(xd.get_mpz_t(), j * l);
        if (bv::sum(xd, n, l, k) != bvo::sum(xd, n, l, k))
            return diff("sum", inst, bv::sum(xd, n, l, k), bvo::sum(xd, n, l, k));

        Nat xr = rm(x, pow2(Nat(static_cast<unsigned long>(n))));
        if (bv::reverse_bits(xr, n) != bvo::reverse_bits(xr, n))
            return diff("reverse", inst, bv::reverse_bits(xr, n), bvo::reverse_bits(xr, n));

        // swap_n with injective weight maps over [0,q)^nn
        for (;;) {
            std::uint64_t sq = 2 + rnd_below(rng, 4);
            std::uint64_t nn = 1 + rnd_below(rng, 3);
            std::vector<std::uint64_t> kv(nn), mv(nn);
            for (std::size_t i = 0; i < nn; ++i) {
                kv[i] = 1 + rnd_below(rng, 20);
                mv[i] = 1 + rnd_below(rng, 20);
            }
            bool injective = true;
            for (auto* w : {&kv, &mv}) {
                std::set<std::uint64_t> seen;
                std::vector<std::uint64_t> t(nn, 0);
                for (;;) {
                    std::uint64_t s = 0;
                    for (std::size_t i = 0; i < nn; ++i) s += t[i] * (*w)[i];
                    if (!seen.insert(s).second) {
                        injective = false;
                        break;
                    }
                    std::size_t i = 0;
                    while (i < nn && ++t[i] == sq) t[i++] = 0;
                    if (i == nn) break;
                }
                if (!injective) break;
            }
            if (!injective) continue;
            // x supported exactly on the source positions: a random 0/1
            // coefficient per tuple, placed at bit k . t
            Nat xw = 0;
            {
                std::vector<std::uint64_t> t(nn, 0);
                for (;;) {
                    std::uint64_t s = 0;
                    for (std::size_t i = 0; i < nn; ++i) s += t[i] * kv[i];
                    if (rnd_below(rng, 2)) mpz_setbit(xw.get_mpz_t(), s);
                    std::size_t i = 0;
                    while (i < nn && ++t[i] == sq) t[i++] = 0;
                    if (i == nn) break;
                }
            }
            Nat a = bv::swap_n(xw, sq, kv, mv), b = bvo::swap_n(xw, sq, kv, mv);
            if (a != b)
                return diff("swap_n",
                            "q=" + std::to_string(sq) + " n=" + std::to_string(nn) +
                                " x=" + nat_str(xw),
                            a, b);
            break;
        }
    }
    return r;
}

// --- criterion 4: ssqrt identity -----------------------------------------

SuiteResult suite_ssqrt() {
    SuiteResult r{"ssqrt"};
    for (unsigned long x = 0; x <= 200; ++x) {
        ++r.cases;
        Nat got = bv::ssqrt(pow2(Nat(2 * x)));
        if (got != pow2(Nat(x)))
            return fail(r, "ssqrt(2^" + std::to_string(2 * x) + ") = " + nat_str(got));
    }
    return r;
}

// --- criterion 5: generating-function constructions ----------------------

const std::vector<GenPredicate>& genfn_corpus() {
    static const std::vector<GenPredicate> corpus = {
        {"even", 1, [](const std::vector<Nat>& v) { return v[0] % 2 == 0 ? 1 : 0; }},
        {"leq", 2, [](const std::vector<Nat>& v) { return v[0] <= v[1] ? 1 : 0; }},
        {"sumge2", 2, [](const std::vector<Nat>& v) { return v[0] + v[1] >= 2 ? 1 : 0; }},
        {"divides", 2,
         [](const std::vector<Nat>& v) { return v[0] % (v[1] + 1) == 0 ? 1 : 0; }},
        {"affine", 3,
         [](const std::vector<Nat>& v) {
             return (v[0] + 2 * v[1] == v[2] || v[0] == v[1]) ? 1 : 0;
         }},
        {"parity3", 3,
         [](const std::vector<Nat>& v) {
             return (v[0] % 2 == v[1] % 2 && v[0] <= v[2]) ? 1 : 0;
         }},
    };
    return corpus;
}

SuiteResult suite_genfn() {
    SuiteResult r{"genfn"};
    std::string bad;
    auto brute = [](const GenPredicate& p, const Nat& y) { return genfn_bruteforce(p, y); };
    auto check = [&](const std::string& what, const Nat& got, const Nat& want) {
        ++r.cases;
        if (got != want && bad.empty())
            bad = what + ": got " + nat_str(got) + ", brute force " + nat_str(want);
    };

    // polynomial comparisons
    Poly p2{2, {{2, {1, 0}}, {1, {0, 2}}}};   // 2x1 + x2^2
    Poly q2{2, {{3, {0, 1}}, {1, {0, 0}}}};   // 3x2 + 1
    Poly p3{3, {{1, {1, 1, 0}}, {1, {0, 0, 1}}}};  // x1 x2 + x3
    Poly q3{3, {{2, {0, 0, 0}}, {1, {1, 0, 0}}}};  // 2 + x1
    auto cmp_case = [&](const Poly& a, const Poly& b, unsigned long y) {
        GenPredicate pred{"", a.arity, [&a, &b](const std::vector<Nat>& v) {
                              return a.eval(v) >= b.eval(v) ? 1 : 0;
                          }};
        check("poly_cmp arity " + std::to_string(a.arity) + " y=" + std::to_string(y),
              gen_poly_cmp(a, b, Nat(y)), brute(pred, Nat(y)));
    };
    for (unsigned long y = 1; y <= 4; ++y) cmp_case(p2, q2, y);
    for (unsigned long y = 1; y <= 3; ++y) cmp_case(p3, q3, y);

    // explicit transformations of the arity-3 corpus predicate
    const GenPredicate& psi = genfn_corpus()[4];
    for (unsigned long y = 2; y <= 4; ++y) {
        Nat f = brute(psi, Nat(y));
        std::vector<std::size_t> sigma{2, 3, 1};
        GenPredicate perm{"", 3, [&psi, &sigma](const std::vector<Nat>& v) {
                              return psi.chi({v[sigma[0] - 1], v[sigma[1] - 1],
                                              v[sigma[2] - 1]});
                          }};
        check("permute y=" + std::to_string(y), gen_explicit_permute(f, 3, sigma, Nat(y)),
              brute(perm, Nat(y)));
        for (unsigned long a = 0; a < y; ++a) {
            GenPredicate sub{"", 2, [&psi, a](const std::vector<Nat>& v) {
                                 return psi.chi({v[0], v[1], Nat(a)});
                             }};
            check("subst y=" + std::to_string(y) + " a=" + std::to_string(a),
                  gen_explicit_subst_const(f, 3, Nat(a), Nat(y)), brute(sub, Nat(y)));
        }
        GenPredicate ident{"", 2, [&psi](const std::vector<Nat>& v) {
                               return psi.chi({v[0], v[1], v[1]});
                           }};
        check("identify y=" + std::to_string(y), gen_explicit_identify_last(f, 3, Nat(y)),
              brute(ident, Nat(y)));
        GenPredicate dummy{"", 4, [&psi](const std::vector<Nat>& v) {
                               return psi.chi({v[0], v[1], v[2]});
                           }};
        check("dummy y=" + std::to_string(y), gen_explicit_add_dummy(f, 3, Nat(y)),
              brute(dummy, Nat(y)));
    }

    // logic
    const GenPredicate& la = genfn_corpus()[1];
    const GenPredicate& lb = genfn_corpus()[2];
    for (unsigned long y = 2; y <= 4; ++y) {
        GenPredicate na{"", 2, [&la](const std::vector<Nat>& v) { return 1 - la.chi(v); }};
        GenPredicate ab{"", 2, [&la, &lb](const std::vector<Nat>& v) {
                            return la.chi(v) & lb.chi(v);
                        }};
        check("not y=" + std::to_string(y),
              gen_logic(brute(la, Nat(y)), Nat(0), 2, Nat(y), GenLogicOp::Not),
              brute(na, Nat(y)));
        check("and y=" + std::to_string(y),
              gen_logic(brute(la, Nat(y)), brute(lb, Nat(y)), 2, Nat(y), GenLogicOp::And),
              brute(ab, Nat(y)));
    }

    // counting
    auto count_case = [&](const GenPredicate& cpsi, const Poly& bound, unsigned long z) {
        GenPredicate want{"", cpsi.arity + 1, [&cpsi, &bound](const std::vector<Nat>& v) {
                              std::vector<Nat> head(v.begin(), v.end() - 1);
                              Nat cnt = 0;
                              for (Nat x = 0; x < bound.eval(head); ++x) {
                                  std::vector<Nat> args{x};
                                  args.insert(args.end(), head.begin() + 1, head.end());
                                  if (cpsi.chi(args)) ++cnt;
                              }
                              return v.back() == cnt ? 1 : 0;
                          }};
        check("count " + cpsi.name + " z=" + std::to_string(z),
              gen_count(cpsi, bound, Nat(z)), brute(want, Nat(z)));
    };
    Poly b1{1, {{1, {1}}, {1, {0}}}};                          // x1 + 1
    Poly b2{2, {{1, {1, 0}}, {1, {0, 1}}, {1, {0, 0}}}};       // x1 + x2 + 1
    Poly b3{3, {{1, {1, 0, 0}}, {1, {0, 0, 0}}}};              // x1 + 1
    for (unsigned long z = 1; z <= 3; ++z) count_case(genfn_corpus()[0], b1, z);
    for (unsigned long z = 1; z <= 2; ++z) count_case(genfn_corpus()[3], b2, z);
    for (unsigned long z = 1; z <= 4; ++z) count_case(genfn_corpus()[5], b3, z);

    if (!bad.empty()) return fail(r, bad);
    return r;
}

// --- criterion 6: XS extraction corpus -----------------------------------

SuiteResult suite_xs_extract() {
    SuiteResult r{"xs_extract"};
    auto bitof = [](const Nat& v, const Nat& j) {
        return mpz_tstbit(v.get_mpz_t(), mpz_get_ui(j.get_mpz_t())) ? 1 : 0;
    };
    std::string bad;
    auto check = [&](const std::string& what, const Nat& got, const Nat& want) {
        ++r.cases;
        if (got != want && bad.empty())
            bad = what + ": got " + nat_str(got) + ", want " + nat_str(want);
    };

    GenPredicate gid{"identity", 2, [bitof](const std::vector<Nat>& v) {
                         return bitof(v[0], v[1]);
                     }};
    Poly bid{1, {{1, {1}}, {1, {0}}}};  // x < 2^{x+1}
    for (unsigned long x = 0; x <= 4; ++x)
        check("identity x=" + std::to_string(x), xs_extract(gid, bid, {Nat(x)}), Nat(x));

    GenPredicate gmon{"monus", 3, [bitof](const std::vector<Nat>& v) {
                          return bitof(monus(v[0], v[1]), v[2]);
                      }};
    Poly bmon{2, {{1, {1, 0}}, {1, {0, 0}}}};
    for (unsigned long x = 0; x <= 3; ++x)
        for (unsigned long y = 0; y <= 3; ++y)
            check("monus " + std::to_string(x) + "," + std::to_string(y),
                  xs_extract(gmon, bmon, {Nat(x), Nat(y)}), monus(Nat(x), Nat(y)));

    GenPredicate gbit{"bit", 3, [bitof](const std::vector<Nat>& v) {
                          return bitof(bit_get(v[0], v[1]), v[2]);
                      }};
    Poly bbit{2, {{1, {0, 0}}}};  // bit < 2^1
    for (unsigned long x = 0; x <= 5; ++x)
        for (unsigned long y = 0; y <= 3; ++y)
            check("bit " + std::to_string(x) + "," + std::to_string(y),
                  xs_extract(gbit, bbit, {Nat(x), Nat(y)}), bit_get(Nat(x), Nat(y)));

    GenPredicate grm{"rm3", 2, [bitof](const std::vector<Nat>& v) {
                         return bitof(v[0] % 3, v[1]);
                     }};
    Poly brm{1, {{2, {0}}}};  // rm(x,3) < 2^2
    for (unsigned long x = 0; x <= 8; ++x)
        check("rm3 x=" + std::to_string(x), xs_extract(grm, brm, {Nat(x)}), Nat(x % 3));

    if (!bad.empty()) return fail(r, bad);
    return r;
}

// --- criterion 7: FOM compiler vs model checker --------------------------

const std::vector<std::string>& fom_corpus() {
    static const std::vector<std::string> corpus = {
        "(leq y1 y2)",
        "(wbit y1)",
        "(bit y1 y2)",
        "(not (wbit y1))",
        "(and (wbit y1) (leq y1 y2))",
        "(or (bit y1 1) (wbit y2))",
        "(E y1 (wbit y1))",
        "(A y1 (or (wbit y1) (bit y1 1)))",
        "(M y1 (wbit y1))",
        "(E y1 (and (wbit y1) (wbit y2)))",
        "(M y2 (bit y1 y2))",
        "(M y2 (E y1 (and (wbit y1) (leq y2 y1))))",
    };
    return corpus;
}

SuiteResult suite_fom() {
    SuiteResult r{"fom"};
    for (const auto& fs : fom_corpus()) {
        FomPtr f = parse_fom(fs);
        std::size_t m = std::max<std::size_t>(fom_max_var(f), 1);
        HFunctionTable tab = compile_fom(f, m);
        for (std::uint64_t l = 1; l <= 6; ++l)
            for (std::uint64_t wv = 0; wv < (1ull << l); ++wv) {
                std::string w;
                for (std::uint64_t i = l; i-- > 0;) w += ((wv >> i) & 1) ? '1' : '0';
                Nat table = tab.f(word_value(w), pow2(Nat(l)));
                std::vector<std::uint64_t> ys(m, 1);
                for (;;) {
                    Nat pos = 0, wgt(static_cast<unsigned long>(l));
                    for (std::size_t i = 0; i < m; ++i) {
                        pos += Nat(static_cast<unsigned long>(ys[i] - 1)) * wgt;
                        wgt *= static_cast<unsigned long>(l);
                    }
                    int got = bit_get(table, pos) != 0;
                    int want = eval_formula(f, WordModel{w, ys});
                    ++r.cases;
                    if (got != want) {
                        std::string assign;
                        for (auto y : ys) assign += std::to_string(y) + ",";
                        return fail(r, fs + " X=" + w + " ys=" + assign + " table bit " +
                                           std::to_string(got) + ", model " +
                                           std::to_string(want));
                    }
                    std::size_t i = 0;
                    while (i < m && ++ys[i] > l) ys[i++] = 1;
                    if (i == m) break;
                }
            }
    }
    return r;
}

// --- criterion 8: Minsky -> Q end to end ---------------------------------

const char* builtin_machine(const std::string& name) {
    if (name == "increment")
        return "# One tape: move the head one cell right, then halt.\n"
               "tapes 1\nstates 2\n0 1 -> R 0\n1 1 -> R 0\n";
    if (name == "identity")
        return "# One tape: halt immediately without moving.\n"
               "tapes 1\nstates 2\n0 1 -> N 0\n1 1 -> N 0\n";
    if (name == "adder")
        return "# Two tapes: while head 2 is off the end cell, step it left and head 1\n"
               "# right; halts with head 1 at x1 + x2.\n"
               "tapes 2\nstates 2\n"
               "0 0 1 -> R L 1\n1 0 1 -> R L 1\n0 1 1 -> N N 0\n1 1 1 -> N N 0\n";
    return nullptr;
}

SuiteResult suite_minsky(std::uint64_t seed) {
    SuiteResult r{"minsky"};
    auto machine = [](const char* name) {
        return *parse_machine_file(builtin_machine(name)).general;
    };
    MinskyMachine inc = machine("increment");
    MinskyMachine idm = machine("identity");
    MinskyMachine add = machine("adder");

    auto end_to_end = [&](const MinskyMachine& m, const std::vector<Nat>& in,
                          const std::string& poly) {
        Poly tp = parse_time_poly(poly, in.size());
        CompiledQ cq = compile(m, in, tp);
        Nat got = extract(cq, q_eval(cq.params));
        Nat want = run(m, in, tp.eval(in)).output;
        ++r.cases;
        if (got != want) {
            std::string args;
            for (const auto& a : in) args += nat_str(a) + ",";
            return "input " + args + " extracted " + nat_str(got) + ", simulator " +
                   nat_str(want);
        }
        return std::string();
    };
    for (unsigned long x = 0; x <= 10; ++x) {
        std::string e = end_to_end(inc, {Nat(x)}, "x+2");
        if (!e.empty()) return fail(r, "increment " + e);
        e = end_to_end(idm, {Nat(x)}, "2");
        if (!e.empty()) return fail(r, "identity " + e);
    }
    for (unsigned long x = 0; x <= 10; ++x)
        for (unsigned long y = 0; y <= 10; ++y) {
            std::string e = end_to_end(add, {Nat(x), Nat(y)}, "x2+2");
            if (!e.empty()) return fail(r, "adder " + e);
        }

    // randomized hypothesis-valid q_prop instances
    std::mt19937_64 rng(seed ^ 0x9a57e11aULL);
    for (int it = 0; it < 1000; ++it) {
        std::size_t rr = 1 + rnd_below(rng, 4);
        std::uint64_t a = 4 + rnd_below(rng, 5);
        std::vector<Nat> u(rr), v(rr);
        for (std::size_t i = 0; i + 1 < rr; ++i) {
            u[i] = rnd_bits(rng, a);
            v[i] = rnd_bits(rng, a);
        }
        QParams p;
        p.t = Nat(static_cast<unsigned long>(1 + rnd_below(rng, 8)));
        p.x = 1 + rnd_bits(rng, a - 1);
        Nat c2(static_cast<unsigned long>(a + 4));
        v[rr - 1] = pow2(c2 - 1) + rnd_bits(rng, a + 3);
        Nat pp2 = 0;
        for (std::size_t i = rr; i-- > 0;) pp2 = pp2 * pow2(c2) + v[i];
        Nat c1 = len(p.x + 2 * pp2 * p.t) + Nat(static_cast<unsigned long>(rnd_below(rng, 3)));
        u[rr - 1] = pow2(c1) - 1;
        Nat pp1 = 0;
        for (std::size_t i = rr; i-- > 0;) pp1 = pp1 * pow2(c1) + u[i];
        p.p1 = pp1;
        p.p2 = pp2;
        p.c1 = c1;
        p.c2 = c2;
        ++r.cases;
        bool ok = false;
        try {
            ok = q_prop_check(u, v, p);
        } catch (const DomainError& e) {
            return fail(r, std::string("q_prop instance rejected: ") + e.what());
        }
        if (!ok)
            return fail(r, "q_prop mismatch at instance " + std::to_string(it) +
                               " (r=" + std::to_string(rr) + ", t=" + nat_str(p.t) + ")");
    }
    return r;
}

// --- criterion 9: permutation identities ---------------------------------

SuiteResult suite_perm(std::uint64_t seed) {
    SuiteResult r{"perm"};
    const Nat PREF(1 << 12);
    std::string bad;
    auto require = [&](bool ok, const std::string& what) {
        ++r.cases;
        if (!ok && bad.empty()) bad = what;
    };

    // delete combinator worked example: f1 = (0 1), f2 = (0 2), A = {0}
    {
        Perm d = delete_combinator(perm_transposition(Nat(0), Nat(1)),
                                   perm_transposition(Nat(0), Nat(2)),
                                   [](const Nat& x) { return x == 0; }, Nat(64));
        Perm want = perm_transposition(Nat(0), Nat(1));
        require(check_equal_prefix(d, want, Nat(64)), "delete worked example");
    }

    // statdelodd: restricting a total code to even second arguments
    {
        Perm psi = code_of(
            [](const Nat& x, const Nat& y) { return std::optional<Nat>(x + y); });
        Perm d = delete_combinator(
            psi, perm_del(),
            [](const Nat& t) { return pair_c33(t) == 0 && pair_c32(t) % 2 == 0; },
            Nat(1 << 10));
        bool ok = true;
        for (unsigned long x = 0; x < 8 && ok; ++x)
            for (unsigned long y = 0; y < 8 && ok; ++y) {
                Nat t0 = pair_c3(Nat(x), Nat(y), Nat(0));
                Nat want = y % 2 == 0 ? pair_c3(Nat(x), Nat(y), Nat(x + y + 2)) : t0;
                ok = d.fwd(t0) == want;
            }
        require(ok, "statdelodd prefix check");
    }

    // megadelete on B = {(0,1,2,3)}: (pair o cross)^2 = (0 2)(1 3)
    {
        CorrectTriple tr = triple_from_tuples({{Nat(0), Nat(1), Nat(2), Nat(3)}});
        Perm prod = perm_compose(triple_pair_matching(tr), triple_cross_matching(tr));
        Perm sq = perm_power(prod, 2);
        Perm want = perm_compose(perm_transposition(Nat(0), Nat(2)),
                                 perm_transposition(Nat(1), Nat(3)));
        require(check_equal_prefix(sq, want, Nat(16)), "megadelete (0,1,2,3)");
        require(check_equal_prefix(sq, tr.f, Nat(16)), "megadelete reconstructs f");
    }

    // prefix bijectivity of every constructed permutation
    {
        require(check_bijective_prefix(
                    make_pf([](const Nat& x) { return Nat(x / 2); }), PREF),
                "p_f bijective (floor half)");
        require(check_bijective_prefix(
                    make_pf([](const Nat& x) { return Nat(x * x); }), PREF),
                "p_f bijective (square)");
        require(check_bijective_prefix(perm_px(), PREF), "px bijective");
        require(check_bijective_prefix(perm_del(), PREF), "del bijective");
        require(check_bijective_prefix(perm_move(), PREF), "move bijective");
        require(check_bijective_prefix(perm_place(), PREF), "place bijective");
        require(check_bijective_prefix(perm_swap1(), PREF), "swap1 bijective");
        require(check_bijective_prefix(perm_swap2(), PREF), "swap2 bijective");
    }

    // even-matching pipeline: f' = neighbor swap, f = 4k <-> 4k+2
    {
        auto nb = [](const Nat& x) { return x % 2 == 0 ? Nat(x + 1) : Nat(x - 1); };
        Perm nbp{nb, nb, std::nullopt};
        auto fs = [](const Nat& x) {
            if (x % 4 == 0) return Nat(x + 2);
            if (x % 4 == 2) return Nat(x - 2);
            return x;
        };
        Perm f{fs, fs, std::nullopt};
        Perm built = even_matching_pipeline(f, {nbp}, Nat(128));
        require(check_equal_prefix(built, f, Nat(1 << 9)), "pipeline equals f");
        require(check_bijective_prefix(built, PREF), "pipeline bijective");
    }

    // stationary decomposition and the four-matching product
    {
        auto fs = [](const Nat& x) {
            if (x % 4 == 0) return Nat(x + 2);
            if (x % 4 == 2) return Nat(x - 2);
            return x;
        };
        Perm f{fs, fs, std::nullopt};
        StationaryTriples st = stationary_to_triples(f, regular_odds(), regular_evens());
        Perm prod =
            perm_compose(st.h2, perm_compose(st.h1, perm_compose(st.r1, st.r2)));
        require(check_equal_prefix(prod, f, Nat(1 << 9)), "h2 h1 r1 r2 = f");
        for (const CorrectTriple* t : {&st.tr1, &st.tr2, &st.th1, &st.th2})
            require(check_triple(*t, 100), "stationary triple valid");
        auto gs = [](const Nat& x) {
            if (x % 4 == 0) return Nat(x + 1);
            if (x % 4 == 1) return Nat(x - 1);
            return x;
        };
        Perm g{gs, gs, std::nullopt};
        RegularSet b{[](const Nat& x) { return x % 4 == 2 ? 1 : 0; },
                     [](const Nat& x) { return x % 4 == 2 ? Nat((x - 2) / 4) : Nat(0); },
                     [](const Nat& x) { return Nat(4 * x + 2); }};
        auto [f1, f2] =
            stationary_decompose(g, [](const Nat& x) { return x % 4 == 0; }, b);
        require(check_bijective_prefix(f1, PREF), "stationary factor bijective");
        require(check_equal_prefix(perm_compose(f1, f2), g, Nat(1 << 10)),
                "stationary f1 f2 = f");
    }

    // two-generator assembly: n = 1 (w agreement checked internally on 64 N)
    {
        bool ok = true;
        std::string what;
        try {
            CorrectTriple tr = triple_from_tuples({{Nat(0), Nat(1), Nat(2), Nat(3)}});
            TwoGenerator tg = two_generator_assembly({tr});
            ok = check_bijective_prefix(tg.rol, PREF) &&
                 check_bijective_prefix(tg.all, PREF) &&
                 tg.w_direct[0].fwd(Nat(0)) == 8;
        } catch (const DomainError& e) {
            ok = false;
            what = e.what();
        }
        require(ok, "two-generator assembly n=1 " + what);
    }

    // reassembly demo: random even finitely supported permutation on [0,56)
    {
        std::mt19937_64 rng(seed ^ 0x9e2a55edULL);
        std::vector<unsigned long> img(56);
        for (unsigned long i = 0; i < 56; ++i) img[i] = i;
        for (unsigned long i = 55; i > 0; --i)
            std::swap(img[i], img[rnd_below(rng, i + 1)]);
        {
            std::vector<bool> vis(56, false);
            int transpositions = 0;
            for (unsigned long i = 0; i < 56; ++i) {
                if (vis[i]) continue;
                unsigned long j = i, cl = 0;
                while (!vis[j]) {
                    vis[j] = true;
                    j = img[j];
                    ++cl;
                }
                transpositions += static_cast<int>(cl) - 1;
            }
            if (transpositions % 2 != 0) std::swap(img[54], img[55]);
        }
        // split each cycle into two reversal matchings, f = m1 o m2
        std::vector<std::pair<unsigned long, unsigned long>> m1, m2;
        {
            std::vector<bool> vis(56, false);
            for (unsigned long s = 0; s < 56; ++s) {
                if (vis[s]) continue;
                std::vector<unsigned long> cyc;
                unsigned long j = s;
                while (!vis[j]) {
                    vis[j] = true;
                    cyc.push_back(j);
                    j = img[j];
                }
                unsigned long L = cyc.size();
                if (L == 1) continue;
                for (unsigned long i = 0; i < L; ++i) {
                    unsigned long k = (L - i) % L;
                    if (i < k) m2.push_back({cyc[i], cyc[k]});
                }
                for (unsigned long i = 0; i < L; ++i) {
                    unsigned long k = (L + 1 - i) % L;
                    if (i < k) m1.push_back({cyc[i], cyc[k]});
                }
            }
        }
        if (m1.size() % 2 != 0) {  // shared dummy pair keeps the product intact
            m1.push_back({56, 57});
            m2.insert(m2.begin(), {56, 57});
        }
        auto to_triple = [](const std::vector<std::pair<unsigned long, unsigned long>>& m) {
            std::vector<std::array<Nat, 4>> tuples;
            for (std::size_t j = 0; j + 1 < m.size(); j += 2)
                tuples.push_back({Nat(m[j].first), Nat(m[j + 1].first),
                                  Nat(m[j].second), Nat(m[j + 1].second)});
            return triple_from_tuples(tuples);
        };
        bool ok = m1.size() % 2 == 0 && m2.size() % 2 == 0;
        std::string what;
        if (ok) {
            try {
                CorrectTriple t1 = to_triple(m1), t2 = to_triple(m2);
                ok = check_triple(t1, 100) && check_triple(t2, 100);
                TwoGenerator tg = two_generator_assembly({t1, t2});
                Perm w12 = perm_compose(tg.w_assembled[0], tg.w_assembled[1]);
                Nat N = tg.modulus;
                for (Nat t = 0; ok && t < PREF; ++t) {
                    Nat rr = rm(t, N);
                    Nat want = t;
                    if (rr <= 1) {
                        Nat idx = rr == 0 ? Nat(2 * (t / N)) : Nat(2 * ((t - 1) / N) + 1);
                        Nat fi = idx < 56 ? Nat(img[mpz_get_ui(idx.get_mpz_t())]) : idx;
                        want = rm(fi, Nat(2)) == 0 ? Nat(N * (fi / 2))
                                                   : Nat(N * ((fi - 1) / 2) + 1);
                    }
                    ok = w12.fwd(t) == want;
                    if (!ok) what = "first mismatch at t=" + nat_str(t);
                }
            } catch (const DomainError& e) {
                ok = false;
                what = e.what();
            }
        }
        require(ok, "reassembly demo " + what);
    }

    if (!bad.empty()) return fail(r, bad);
    return r;
}

// --- aggregation ---------------------------------------------------------

std::vector<SuiteResult> suite_all(std::uint64_t seed) {
    return {suite_binomial(),      suite_heights(), suite_blockvec(seed, 10000),
            suite_ssqrt(),         suite_genfn(),   suite_xs_extract(),
            suite_fom(),           suite_minsky(seed), suite_perm(seed)};
}

std::string format_suite_report(const std::vector<SuiteResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.cases
            << " cases)";
        if (!r.passed) out << " first counterexample: " << r.detail;
        out << "\n";
    }
    return out.str();
}

}  // namespace recfun
