#include "recfun/perm.hpp"

#include <utility>

namespace recfun {

namespace {

bool is_even(const Nat& x) { return mpz_even_p(x.get_mpz_t()) != 0; }

Nat max_nat(const Nat& a, const Nat& b) { return a > b ? a : b; }

}  // namespace

// --- group operations ----------------------------------------------------

Perm perm_identity() {
    auto id = [](const Nat& x) { return x; };
    return Perm{id, id, Nat(0)};
}

Perm perm_compose(const Perm& f, const Perm& g) {
    std::optional<Nat> hint;
    if (f.support_hint && g.support_hint)
        hint = max_nat(*f.support_hint, *g.support_hint);
    return Perm{[f, g](const Nat& x) { return f.fwd(g.fwd(x)); },
                [f, g](const Nat& x) { return g.bwd(f.bwd(x)); }, hint};
}

Perm perm_inverse(const Perm& f) { return Perm{f.bwd, f.fwd, f.support_hint}; }

Perm perm_power(const Perm& f, long long z) {
    if (z == 0) return perm_identity();
    Perm g = z < 0 ? perm_inverse(f) : f;
    std::uint64_t k = z < 0 ? static_cast<std::uint64_t>(-(z + 1)) + 1
                            : static_cast<std::uint64_t>(z);
    auto iterate = [k](const std::function<Nat(const Nat&)>& step, const Nat& x) {
        Nat r = x;
        for (std::uint64_t i = 0; i < k; ++i) r = step(r);
        return r;
    };
    return Perm{[g, iterate](const Nat& x) { return iterate(g.fwd, x); },
                [g, iterate](const Nat& x) { return iterate(g.bwd, x); },
                f.support_hint};
}

Perm perm_transposition(const Nat& a, const Nat& b) {
    auto step = [a, b](const Nat& x) {
        if (x == a) return b;
        if (x == b) return a;
        return x;
    };
    return Perm{step, step, max_nat(a, b) + 1};
}

bool check_bijective_prefix(const Perm& f, const Nat& bound) {
    for (Nat x = 0; x < bound; ++x)
        if (f.bwd(f.fwd(x)) != x || f.fwd(f.bwd(x)) != x) return false;
    return true;
}

bool check_equal_prefix(const Perm& f, const Perm& g, const Nat& bound) {
    for (Nat x = 0; x < bound; ++x)
        if (f.fwd(x) != g.fwd(x)) return false;
    return true;
}

bool check_involution_prefix(const Perm& f, const Nat& bound) {
    for (Nat x = 0; x < bound; ++x)
        if (f.fwd(f.fwd(x)) != x) return false;
    return true;
}

// --- pairing -------------------------------------------------------------

Nat pair_c2(const Nat& x, const Nat& y) {
    Nat r = 0;
    std::uint64_t nx = to_u64(len(x), "pair_c2");
    std::uint64_t ny = to_u64(len(y), "pair_c2");
    for (std::uint64_t i = 0; i < nx; ++i)
        if (mpz_tstbit(x.get_mpz_t(), i)) mpz_setbit(r.get_mpz_t(), 2 * i);
    for (std::uint64_t i = 0; i < ny; ++i)
        if (mpz_tstbit(y.get_mpz_t(), i)) mpz_setbit(r.get_mpz_t(), 2 * i + 1);
    return r;
}

Nat pair_c21(const Nat& t) {
    Nat r = 0;
    std::uint64_t n = to_u64(len(t), "pair_c21");
    for (std::uint64_t i = 0; 2 * i < n; ++i)
        if (mpz_tstbit(t.get_mpz_t(), 2 * i)) mpz_setbit(r.get_mpz_t(), i);
    return r;
}

Nat pair_c22(const Nat& t) {
    Nat r = 0;
    std::uint64_t n = to_u64(len(t), "pair_c22");
    for (std::uint64_t i = 0; 2 * i + 1 < n; ++i)
        if (mpz_tstbit(t.get_mpz_t(), 2 * i + 1)) mpz_setbit(r.get_mpz_t(), i);
    return r;
}

Nat pair_c3(const Nat& x, const Nat& y, const Nat& z) {
    return pair_c2(x, pair_c2(y, z));
}

Nat pair_c31(const Nat& t) { return pair_c21(t); }
Nat pair_c32(const Nat& t) { return pair_c21(pair_c22(t)); }
Nat pair_c33(const Nat& t) { return pair_c22(pair_c22(t)); }

// --- the p_f permutation -------------------------------------------------

Perm make_pf(const std::function<Nat(const Nat&)>& f) {
    auto fwd = [f](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (is_even(v)) {
            Nat y = v / 2;
            return pair_c3(f(x), 2 * pair_c2(x, y), z);
        }
        if (rm(v, Nat(4)) == 1) {
            Nat y = (v - 1) / 4;
            return pair_c3(x, 2 * y + 1, z);
        }
        Nat y = (v - 3) / 4;
        if (x < f(pair_c21(y))) return pair_c3(x, 2 * y, z);
        return pair_c3(x + 1, 2 * y, z);
    };
    auto bwd = [f](const Nat& t) {
        Nat u = pair_c31(t), v = pair_c32(t), w = pair_c33(t);
        if (!is_even(v)) {
            Nat y = (v - 1) / 2;
            return pair_c3(u, 4 * y + 1, w);
        }
        Nat yp = v / 2;
        Nat pivot = f(pair_c21(yp));
        if (u == pivot) return pair_c3(pair_c21(yp), 2 * pair_c22(yp), w);
        if (u < pivot) return pair_c3(u, 4 * yp + 3, w);
        return pair_c3(u - 1, 4 * yp + 3, w);
    };
    return Perm{fwd, bwd, std::nullopt};
}

// --- basic matchings and permutations ------------------------------------

Perm code_of(const PartialBinary& g) {
    auto step = [g](const Nat& t) {
        Nat x = pair_c31(t), y = pair_c32(t), z = pair_c33(t);
        if (z == 0) {
            auto o = g(x, y);
            if (o) return pair_c3(x, y, *o + 2);
            return t;
        }
        if (z >= 2) {
            auto o = g(x, y);
            if (o && *o + 2 == z) return pair_c3(x, y, Nat(0));
        }
        return t;
    };
    return Perm{step, step, std::nullopt};
}

Perm perm_px() {
    return code_of([](const Nat& x, const Nat&) { return std::optional<Nat>(x); });
}

Perm perm_del() {
    auto step = [](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (is_even(v) && z <= 1) return pair_c3(x, v, Nat(1) - z);
        return t;
    };
    return Perm{step, step, std::nullopt};
}

Perm perm_sij(int i, int j) {
    if (!(0 <= i && i < j && j <= 3)) throw DomainError("perm_sij: need 0 <= i < j <= 3");
    auto step = [i, j](const Nat& t) {
        Nat m = rm(t, Nat(4));
        if (m == i) return Nat(t - i + j);
        if (m == j) return Nat(t - j + i);
        return t;
    };
    return Perm{step, step, std::nullopt};
}

Perm perm_move() {
    auto fwd = [](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (z != 0) return t;
        if (is_even(v)) return pair_c3(x, v + 2, Nat(0));
        if (v == 1) return pair_c3(x, Nat(0), Nat(0));
        return pair_c3(x, v - 2, Nat(0));
    };
    auto bwd = [](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (z != 0) return t;
        if (v == 0) return pair_c3(x, Nat(1), Nat(0));
        if (is_even(v)) return pair_c3(x, v - 2, Nat(0));
        return pair_c3(x, v + 2, Nat(0));
    };
    return Perm{fwd, bwd, std::nullopt};
}

Perm perm_place() {
    auto fwd = [](const Nat& t) {
        Nat x = pair_c31(t), y = pair_c32(t), z = pair_c33(t);
        if (z == 0 && y == 0) return Nat(2 * x);
        if (z == 0) return Nat(4 * pair_c2(x, y - 1) + 1);
        return Nat(4 * pair_c3(x, y, z - 1) + 3);
    };
    auto bwd = [](const Nat& t) {
        if (is_even(t)) return pair_c3(t / 2, Nat(0), Nat(0));
        if (rm(t, Nat(4)) == 1) {
            Nat k = (t - 1) / 4;
            return pair_c3(pair_c21(k), pair_c22(k) + 1, Nat(0));
        }
        Nat k = (t - 3) / 4;
        return pair_c3(pair_c31(k), pair_c32(k), pair_c33(k) + 1);
    };
    return Perm{fwd, bwd, std::nullopt};
}

Perm perm_swap1() {
    auto fwd = [](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (z < 2) return t;
        if (is_even(v)) return pair_c3(x + 2, v, z);
        if (x >= 2) return pair_c3(x - 2, v, z);
        return pair_c3(x, v - 1, z);
    };
    auto bwd = [](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (z < 2) return t;
        if (is_even(v)) {
            if (x >= 2) return pair_c3(x - 2, v, z);
            return pair_c3(x, v + 1, z);
        }
        return pair_c3(x + 2, v, z);
    };
    return Perm{fwd, bwd, std::nullopt};
}

Perm perm_swap2() {
    auto fwd = [](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (z < 2) return t;
        if (is_even(v)) return pair_c3(z, v, x + 2);
        if (x >= 2) return pair_c3(x - 2, v, z);
        return pair_c3(x, v - 1, z);
    };
    auto bwd = [](const Nat& t) {
        Nat x = pair_c31(t), v = pair_c32(t), z = pair_c33(t);
        if (is_even(v)) {
            if (z >= 2 && x >= 2) return pair_c3(z - 2, v, x);
            if (z >= 2) return pair_c3(x, v + 1, z);
            return t;
        }
        if (z >= 2) return pair_c3(x + 2, v, z);
        return t;
    };
    return Perm{fwd, bwd, std::nullopt};
}

// --- deletion combinator -------------------------------------------------

Perm delete_combinator(const Perm& f1, const Perm& f2,
                       const std::function<bool(const Nat&)>& in_a,
                       const Nat& check_bound) {
    for (Nat x = 0; x < check_bound; ++x) {
        bool a = in_a(x);
        bool in_f2a = in_a(f2.bwd(x));
        if (a) {
            Nat y1 = f1.fwd(x), y2 = f2.fwd(x);
            if (in_a(y1) || in_a(y2) || in_a(f2.bwd(y1)))
                throw DomainError("delete_combinator: images not disjoint near x=" +
                                  x.get_str());
            if (f1.fwd(y2) != y2)
                throw DomainError("delete_combinator: f1 moves f2(A) near x=" +
                                  x.get_str());
        } else if (!in_f2a && f2.fwd(x) != x) {
            throw DomainError("delete_combinator: f2 moves a point outside A u f2(A) near x=" +
                              x.get_str());
        }
    }
    Perm f12 = perm_compose(f1, f2);
    return perm_compose(perm_power(f12, 4), f2);
}

// --- unary composition code and the even-matching pipeline ---------------

Perm unar_compose_code(const std::vector<std::function<Nat(const Nat&)>>& fs) {
    Perm p = perm_px();
    for (const auto& f : fs) {
        Perm pf = make_pf(f);
        p = perm_compose(perm_inverse(pf), perm_compose(p, pf));
    }
    return p;
}

Perm even_matching_pipeline(const Perm& f, const std::vector<Perm>& word,
                            const Nat& check_bound) {
    auto fprime = [f](const Nat& x) { return div_floor(f.fwd(2 * x), Nat(2)); };
    for (Nat x = 0; x < check_bound; ++x) {
        Nat v = x;
        for (auto it = word.rbegin(); it != word.rend(); ++it) v = it->fwd(v);
        if (v != fprime(x))
            throw DomainError("even_matching_pipeline: word does not compose to f' at x=" +
                              x.get_str());
    }
    std::vector<std::function<Nat(const Nat&)>> fs;
    fs.reserve(word.size());
    for (const auto& w : word) fs.push_back(w.fwd);
    Perm psi = unar_compose_code(fs);
    Perm del = perm_del();
    Perm psi1 = perm_compose(perm_power(perm_compose(psi, del), 4), del);
    Perm sw1 = perm_swap1(), sw2 = perm_swap2();
    Perm psi2 = perm_compose(sw1, perm_compose(psi1, perm_inverse(sw1)));
    Perm psi3 = perm_compose(sw2, perm_compose(psi1, perm_inverse(sw2)));
    Perm psi4 = perm_compose(psi3, psi2);
    Perm mv = perm_move();
    Perm psi5 = perm_compose(mv, perm_compose(psi4, perm_inverse(mv)));
    Perm psi6 = perm_compose(psi5, psi4);
    Perm pl = perm_place();
    return perm_compose(pl, perm_compose(psi6, perm_inverse(pl)));
}

// --- regular sets --------------------------------------------------------

RegularSet regular_all() {
    auto id = [](const Nat& x) { return x; };
    return RegularSet{[](const Nat&) { return 1; }, id, id};
}

RegularSet regular_evens() {
    return RegularSet{[](const Nat& x) { return is_even(x) ? 1 : 0; },
                      [](const Nat& x) { return is_even(x) ? Nat(x / 2) : Nat(0); },
                      [](const Nat& x) { return Nat(2 * x); }};
}

RegularSet regular_odds() {
    return RegularSet{[](const Nat& x) { return is_even(x) ? 0 : 1; },
                      [](const Nat& x) { return is_even(x) ? Nat(0) : Nat((x - 1) / 2); },
                      [](const Nat& x) { return Nat(2 * x + 1); }};
}

std::pair<RegularSet, RegularSet> regular_split(const RegularSet& a) {
    RegularSet lo{[a](const Nat& x) { return a.chi(x) && is_even(a.mu(x)) ? 1 : 0; },
                  [a](const Nat& x) {
                      if (!a.chi(x)) return Nat(0);
                      Nat m = a.mu(x);
                      return is_even(m) ? Nat(m / 2) : Nat(0);
                  },
                  [a](const Nat& x) { return a.nu(2 * x); }};
    RegularSet hi{[a](const Nat& x) { return a.chi(x) && !is_even(a.mu(x)) ? 1 : 0; },
                  [a](const Nat& x) {
                      if (!a.chi(x)) return Nat(0);
                      Nat m = a.mu(x);
                      return is_even(m) ? Nat(0) : Nat((m - 1) / 2);
                  },
                  [a](const Nat& x) { return a.nu(2 * x + 1); }};
    return {lo, hi};
}

RegularSet regular_union(const RegularSet& a, const RegularSet& b) {
    return RegularSet{
        [a, b](const Nat& x) { return (a.chi(x) || b.chi(x)) ? 1 : 0; },
        [a, b](const Nat& x) {
            if (a.chi(x)) return Nat(2 * a.mu(x));
            if (b.chi(x)) return Nat(2 * b.mu(x) + 1);
            return Nat(0);
        },
        [a, b](const Nat& x) {
            return is_even(x) ? a.nu(x / 2) : b.nu((x - 1) / 2);
        }};
}

std::pair<RegularSet, RegularSet> band_sets(const std::function<Nat(const Nat&)>& h) {
    // Band index and bounds of the band containing x.
    auto locate = [h](const Nat& x, Nat& lo, Nat& hi, std::uint64_t& idx) {
        lo = 0;
        hi = h(lo);
        idx = 0;
        while (hi <= x) {
            lo = hi;
            hi = h(lo);
            ++idx;
        }
    };
    auto make = [h, locate](unsigned residue) {
        auto chi = [h, locate, residue](const Nat& x) {
            Nat lo, hi;
            std::uint64_t idx;
            locate(x, lo, hi, idx);
            return idx % 4 == residue ? 1 : 0;
        };
        auto mu = [h, locate, residue](const Nat& x) {
            Nat lo, hi;
            std::uint64_t idx;
            locate(x, lo, hi, idx);
            if (idx % 4 != residue) return Nat(0);
            Nat rank = x - lo;
            Nat blo = 0;
            for (std::uint64_t i = 0; i < idx; ++i) {
                Nat bhi = h(blo);
                if (i % 4 == residue) rank += bhi - blo;
                blo = bhi;
            }
            return rank;
        };
        auto nu = [h, residue](const Nat& k) {
            Nat lo = 0, rem = k;
            std::uint64_t idx = 0;
            for (;;) {
                Nat hi = h(lo);
                if (idx % 4 == residue) {
                    Nat size = hi - lo;
                    if (rem < size) return Nat(lo + rem);
                    rem -= size;
                }
                lo = hi;
                ++idx;
            }
        };
        return RegularSet{chi, mu, nu};
    };
    return {make(0), make(2)};
}

std::pair<RegularSet, RegularSet> band_factory(std::uint64_t n) {
    if (n < 2) throw DomainError("band_factory: need n >= 2");
    auto h = [n](const Nat& x) {
        Nat e = log2_floor(x + 20);
        Nat p;
        mpz_pow_ui(p.get_mpz_t(), e.get_mpz_t(), static_cast<unsigned long>(n));
        return Nat(pow2(p) + 2 * x);
    };
    return band_sets(h);
}

// --- stationary decomposition --------------------------------------------

std::pair<Perm, Perm> stationary_decompose(const Perm& f,
                                           const std::function<bool(const Nat&)>& in_a,
                                           const RegularSet& b) {
    auto [b1, b2] = regular_split(b);
    (void)b2;
    // Chain endpoints: sinks enter f(A) from outside A, sources leave A
    // without being hit from inside it.
    auto sink = [f, in_a](const Nat& x) { return !in_a(x) && in_a(f.bwd(x)); };
    auto source = [f, in_a](const Nat& x) { return in_a(x) && !in_a(f.bwd(x)); };
    RegularSet c = b1;
    auto fwd = [f, in_a, sink, source, c](const Nat& t) {
        if (in_a(t)) return f.fwd(t);
        if (sink(t)) return c.nu(pair_c2(t, Nat(0)));
        if (c.chi(t)) {
            Nat m = c.mu(t), x = pair_c21(m), y = pair_c22(m);
            if (sink(x)) return c.nu(pair_c2(x, y + 1));
            if (source(x)) {
                if (y == 0) return x;
                return c.nu(pair_c2(x, y - 1));
            }
        }
        return t;
    };
    auto bwd = [f, in_a, sink, source, c](const Nat& t) {
        if (in_a(f.bwd(t))) return f.bwd(t);
        if (c.chi(t)) {
            Nat m = c.mu(t), x = pair_c21(m), y = pair_c22(m);
            if (sink(x)) {
                if (y == 0) return x;
                return c.nu(pair_c2(x, y - 1));
            }
            if (source(x)) return c.nu(pair_c2(x, y + 1));
        }
        if (source(t)) return c.nu(pair_c2(t, Nat(0)));
        return t;
    };
    Perm f1{fwd, bwd, std::nullopt};
    Perm f2 = perm_compose(perm_inverse(f1), f);
    return {f1, f2};
}

// --- stationary permutations as products of matched pairs ----------------

namespace {

// Signed-level encoding used by the triple construction: level 0 is the
// complement, level 1 the first slice of A, positive levels the third
// slice, negative levels the second.
struct LevelCoder {
    RegularSet comp, a1, a2, a3;
    std::function<int(const Nat&)> in_a;

    Nat enc(const Nat& x, const mpz_class& z) const {
        if (z == 0) return comp.nu(x);
        if (z == 1) return a1.nu(x);
        if (z > 1) return a3.nu(pair_c2(x, Nat(z - 2)));
        return a2.nu(pair_c2(x, Nat(-z - 1)));
    }
    void dec(const Nat& t, Nat& x, mpz_class& z) const {
        if (!in_a(t)) {
            z = 0;
            x = comp.mu(t);
            return;
        }
        if (a1.chi(t)) {
            z = 1;
            x = a1.mu(t);
            return;
        }
        if (a3.chi(t)) {
            Nat m = a3.mu(t);
            x = pair_c21(m);
            z = mpz_class(pair_c22(m)) + 2;
            return;
        }
        Nat m = a2.mu(t);
        x = pair_c21(m);
        z = -mpz_class(pair_c22(m)) - 1;
    }
};

Perm level_matching(const LevelCoder& lc, const Perm& g0, bool twisted,
                    const std::function<mpz_class(const mpz_class&)>& zmap) {
    auto step = [lc, g0, twisted, zmap](const Nat& t) {
        Nat x;
        mpz_class z;
        lc.dec(t, x, z);
        if (twisted && z > 0) x = g0.bwd(x);
        mpz_class z2 = zmap(z);
        if (z2 == z) return t;
        if (twisted && z2 > 0) return lc.enc(g0.fwd(x), z2);
        return lc.enc(x, z2);
    };
    return Perm{step, step, std::nullopt};
}

}  // namespace

CorrectTriple triple_from_tuples(std::vector<std::array<Nat, 4>> tuples) {
    for (auto& b : tuples)
        if (b[0] > b[1]) {
            std::swap(b[0], b[1]);
            std::swap(b[2], b[3]);
        }
    auto fstep = [tuples](const Nat& t) {
        for (const auto& b : tuples) {
            if (t == b[0]) return b[2];
            if (t == b[2]) return b[0];
            if (t == b[1]) return b[3];
            if (t == b[3]) return b[1];
        }
        return t;
    };
    auto gstep = [tuples](const Nat& t) {
        for (const auto& b : tuples) {
            if (t == b[0]) return b[1];
            if (t == b[1]) return b[0];
        }
        return t;
    };
    Nat hint = 0;
    for (const auto& b : tuples)
        for (const auto& v : b) hint = max_nat(hint, v + 1);
    auto tuple = [tuples](const Nat& i) {
        return tuples.at(to_u64(i, "triple tuple index"));
    };
    return CorrectTriple{Perm{fstep, fstep, hint}, Perm{gstep, gstep, hint}, tuple,
                         tuples.size()};
}

bool check_triple(const CorrectTriple& t, std::uint64_t count) {
    if (t.tuple_count && *t.tuple_count < count) count = *t.tuple_count;
    std::vector<Nat> seen;
    for (std::uint64_t i = 0; i < count; ++i) {
        auto b = t.tuple(Nat(static_cast<unsigned long>(i)));
        for (const auto& v : b) {
            for (const auto& s : seen)
                if (s == v) return false;
            seen.push_back(v);
        }
        if (t.f.fwd(b[0]) != b[2] || t.f.fwd(b[2]) != b[0]) return false;
        if (t.f.fwd(b[1]) != b[3] || t.f.fwd(b[3]) != b[1]) return false;
        if (t.g.fwd(b[0]) != b[1] || t.g.fwd(b[1]) != b[0]) return false;
    }
    return true;
}

StationaryTriples stationary_to_triples(const Perm& f, const RegularSet& a,
                                        const RegularSet& a_comp) {
    auto [a1, rest] = regular_split(a);
    auto [a2, a3] = regular_split(rest);
    LevelCoder lc{a_comp, a1, a2, a3, a.chi};
    // f is the identity on A; its action on the complement, in rank space.
    Perm g0{[f, a_comp](const Nat& x) { return a_comp.mu(f.fwd(a_comp.nu(x))); },
            [f, a_comp](const Nat& x) { return a_comp.mu(f.bwd(a_comp.nu(x))); },
            std::nullopt};

    auto refl = [](const mpz_class& z) { return mpz_class(1 - z); };
    auto neg = [](const mpz_class& z) { return mpz_class(-z); };
    auto shift1 = [](const mpz_class& z) {  // -2y <-> -2y-1
        if (z > 0) return z;
        return mpz_even_p(z.get_mpz_t()) ? mpz_class(z - 1) : mpz_class(z + 1);
    };
    auto shift2 = [](const mpz_class& z) {  // -2y-1 <-> -2y-2
        if (z >= 0) return z;
        return mpz_even_p(z.get_mpz_t()) ? mpz_class(z + 1) : mpz_class(z - 1);
    };

    StationaryTriples out;
    out.r1 = level_matching(lc, g0, true, refl);
    out.r2 = level_matching(lc, g0, true, neg);
    out.h1 = level_matching(lc, g0, false, refl);
    out.h2 = level_matching(lc, g0, false, neg);
    out.s1 = level_matching(lc, g0, false, shift1);
    out.s2 = level_matching(lc, g0, false, shift2);

    auto tuples = [lc, g0](bool twisted, int top) {
        // top selects b1's level: -2y for r1/h1 pairs, -2y-1 for r2/h2.
        return [lc, g0, twisted, top](const Nat& i) {
            Nat x = pair_c21(i);
            mpz_class y(pair_c22(i));
            Nat xr = twisted ? g0.fwd(x) : x;
            mpz_class zb1 = top == 0 ? mpz_class(-2 * y) : mpz_class(-2 * y - 1);
            return std::array<Nat, 4>{lc.enc(x, zb1), lc.enc(x, zb1 - 1),
                                      lc.enc(xr, 2 * y + 1), lc.enc(xr, 2 * y + 2)};
        };
    };
    out.tr1 = CorrectTriple{out.r1, out.s1, tuples(true, 0), std::nullopt};
    out.tr2 = CorrectTriple{out.r2, out.s2, tuples(true, 1), std::nullopt};
    out.th1 = CorrectTriple{out.h1, out.s1, tuples(false, 0), std::nullopt};
    out.th2 = CorrectTriple{out.h2, out.s2, tuples(false, 1), std::nullopt};
    return out;
}

// --- three-set split of a matching ---------------------------------------

std::vector<Perm> three_two_split(const Perm& f,
                                  const std::function<bool(const Nat&)>& in_a,
                                  const RegularSet& b,
                                  const std::function<bool(const Nat&)>& in_c) {
    auto in_ab = [in_a, b](const Nat& x) { return in_a(x) || b.chi(x) != 0; };
    auto in_bc = [in_c, b](const Nat& x) { return in_c(x) || b.chi(x) != 0; };
    auto f1s = [f, in_ab](const Nat& t) {
        Nat y = f.fwd(t);
        if (y != t && in_ab(t) && in_ab(y)) return y;
        return t;
    };
    auto f2s = [f, in_c, in_bc](const Nat& t) {
        Nat y = f.fwd(t);
        if (y != t && ((in_c(t) && in_bc(y)) || (in_c(y) && in_bc(t)))) return y;
        return t;
    };
    auto g1s = [f, in_a, in_c, b](const Nat& t) {
        if (in_a(t) && in_c(f.fwd(t))) return b.nu(t);
        if (b.chi(t)) {
            Nat u = b.mu(t);
            if (b.nu(u) == t && in_a(u) && in_c(f.fwd(u))) return u;
        }
        return t;
    };
    auto g2s = [f, in_a, in_c, b](const Nat& t) {
        if (b.chi(t)) {
            Nat u = b.mu(t);
            if (in_a(u) && in_c(f.fwd(u))) return f.fwd(u);
        }
        if (in_c(t) && in_a(f.fwd(t))) return b.nu(f.fwd(t));
        return t;
    };
    return {Perm{f1s, f1s, f.support_hint}, Perm{f2s, f2s, f.support_hint},
            Perm{g1s, g1s, std::nullopt}, Perm{g2s, g2s, std::nullopt}};
}

// --- matchings induced by a correct triple -------------------------------

namespace {

Nat triple_match_eval(const CorrectTriple& tr, bool cross, const Nat& t) {
    Nat gt = tr.g.fwd(t);
    if (!cross) {
        if (gt != t) return gt;
        Nat u = tr.f.bwd(t);
        if (u != t) {
            Nat gu = tr.g.fwd(u);
            if (gu != u) return tr.f.fwd(gu);
        }
        return t;
    }
    if (gt != t && t < gt) return tr.f.fwd(t);
    Nat u = tr.f.bwd(t);
    if (u != t) {
        Nat gu = tr.g.fwd(u);
        if (gu != u && u < gu) return u;
    }
    return t;
}

}  // namespace

Perm triple_pair_matching(const CorrectTriple& t) {
    auto step = [t](const Nat& x) { return triple_match_eval(t, false, x); };
    return Perm{step, step, t.f.support_hint};
}

Perm triple_cross_matching(const CorrectTriple& t) {
    auto step = [t](const Nat& x) { return triple_match_eval(t, true, x); };
    return Perm{step, step, t.f.support_hint};
}

// --- two-generator assembly ----------------------------------------------

namespace {

Perm rol_pow(const Nat& modulus, const Nat& j) {
    Nat jm = rm(j, modulus);
    Nat jinv = rm(modulus - jm, modulus);
    auto shift = [modulus](const Nat& d) {
        return [modulus, d](const Nat& x) {
            return Nat(x - rm(x, modulus) + rm(x + d, modulus));
        };
    };
    return Perm{shift(jm), shift(jinv), std::nullopt};
}

}  // namespace

TwoGenerator two_generator_assembly(const std::vector<CorrectTriple>& triples) {
    std::size_t n = triples.size();
    if (n == 0) throw DomainError("two_generator_assembly: need at least one triple");
    Nat N = pow2(Nat(2 * n + 1));

    TwoGenerator out;
    out.modulus = N;
    out.rol = rol_pow(N, Nat(1));

    // The union E0 u E1 of the first two bands, with interleaved ranks.
    auto in01 = [N](const Nat& x) { return rm(x, N) <= 1; };
    auto nu01 = [N](const Nat& x) {
        return is_even(x) ? Nat(N * (x / 2)) : Nat(N * ((x - 1) / 2) + 1);
    };
    auto mu01 = [N](const Nat& x) {
        Nat r = rm(x, N);
        if (r == 0) return Nat(2 * (x / N));
        if (r == 1) return Nat(2 * ((x - 1) / N) + 1);
        return Nat(0);
    };

    // h_i for i in [1, 2n]: the pair matching of triple (i-1) mod n for
    // i <= n, the b1<->b3 matching (after ordering normalization) beyond.
    std::vector<Perm> v(2 * n);
    for (std::size_t i = 1; i <= 2 * n; ++i) {
        const CorrectTriple& tr = triples[(i - 1) % n];
        bool cross = i > n;
        auto ustep = [tr, cross, in01, nu01, mu01](const Nat& t) {
            if (!in01(t)) return t;
            return nu01(triple_match_eval(tr, cross, mu01(t)));
        };
        Perm ui{ustep, ustep, std::nullopt};
        Perm shift = rol_pow(N, pow2(Nat(static_cast<unsigned long>(i))));
        v[i - 1] = perm_compose(shift, perm_compose(ui, perm_inverse(shift)));
    }
    Perm all = perm_identity();
    for (const auto& vi : v) all = perm_compose(all, vi);
    out.all = all;

    for (std::size_t i = 1; i <= n; ++i) {
        const CorrectTriple& tr = triples[i - 1];
        auto wstep = [tr, in01, nu01, mu01](const Nat& t) {
            if (!in01(t)) return t;
            return nu01(tr.f.fwd(mu01(t)));
        };
        out.w_direct.push_back(Perm{wstep, wstep, std::nullopt});

        Perm sh1 = rol_pow(N, pow2(Nat(static_cast<unsigned long>(i))));
        Perm sh2 = rol_pow(N, pow2(Nat(static_cast<unsigned long>(i + n))));
        Perm s1 = perm_compose(perm_inverse(sh1), perm_compose(all, sh1));
        Perm s2 = perm_compose(perm_inverse(sh2), perm_compose(all, sh2));
        Perm s12 = perm_compose(s1, s2);
        out.w_assembled.push_back(perm_compose(s12, s12));
    }

    Nat bound = N * 64;
    for (std::size_t i = 0; i < n; ++i)
        if (!check_equal_prefix(out.w_direct[i], out.w_assembled[i], bound))
            throw DomainError("two_generator_assembly: word disagrees with direct embedding");
    return out;
}

}  // namespace recfun
