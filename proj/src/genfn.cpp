#include "recfun/genfn.hpp"

namespace recfun {

namespace {

Nat nat_pow(const Nat& base, std::uint64_t e) {
    Nat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// Iterate all tuples in [0,bound)^n, least-significant position first.
bool next_tuple(std::vector<Nat>& t, const Nat& bound) {
    for (auto& v : t) {
        if (++v < bound) return true;
        v = 0;
    }
    return false;
}

void check_table_budget(const Nat& bits, const char* who) {
    if (bits > Nat(1) << 20)
        throw BudgetError(std::string(who) + ": table exceeds 2^20 bits");
}

}  // namespace

Nat Poly::eval(const std::vector<Nat>& args) const {
    if (args.size() != arity) throw DomainError("poly: argument count mismatch");
    Nat acc = 0;
    for (const auto& t : terms) {
        Nat term = t.coef;
        for (std::size_t i = 0; i < arity; ++i) term *= nat_pow(args[i], t.exps[i]);
        acc += term;
    }
    return acc;
}

Nat Poly::eval_all(const Nat& v) const {
    return eval(std::vector<Nat>(arity, v));
}

Nat genfn_bruteforce(const GenPredicate& rho, const Nat& y) {
    if (y < 1) throw DomainError("genfn: y must be >= 1");
    check_table_budget(nat_pow(y, rho.arity), "genfn_bruteforce");
    Nat out = 0;
    std::vector<Nat> x(rho.arity, 0);
    do {
        if (rho.chi(x)) {
            Nat e = 0, w = 1;
            for (std::size_t i = 0; i < rho.arity; ++i) {
                e += x[i] * w;
                w *= y;
            }
            mpz_setbit(out.get_mpz_t(), to_u64(e, "genfn exponent"));
        }
    } while (next_tuple(x, y));
    return out;
}

Nat gen_logic(const Nat& a, const Nat& b, std::size_t n, const Nat& y, GenLogicOp op) {
    std::uint64_t bits = to_u64(nat_pow(y, n), "gen_logic width");
    switch (op) {
        case GenLogicOp::Not: return bv::bnot(a, bits);
        case GenLogicOp::And: return band(a, b);
    }
    throw std::logic_error("bad op");
}

Nat gen_poly_cmp(const Poly& p, const Poly& q, const Nat& y) {
    if (p.arity != q.arity) throw DomainError("gen_poly_cmp: arity mismatch");
    const std::size_t n = p.arity;
    Nat pmax = p.eval_all(monus(y, 1));
    Nat qmax = q.eval_all(monus(y, 1));
    std::uint64_t L = to_u64(pmax + qmax + 1, "gen_poly_cmp block width");
    std::uint64_t blocks = to_u64(nat_pow(y, n), "gen_poly_cmp blocks");
    check_table_budget(Nat(static_cast<unsigned long>(blocks)) * L, "gen_poly_cmp");

    // g_r(y, L) = sum over z~ of r(z~) * 2^{L * (z1 + z2 y + ...)}
    auto g_of = [&](const Poly& r) {
        Nat out = 0;
        std::vector<Nat> z(n, 0);
        do {
            Nat e = 0, w = 1;
            for (std::size_t i = 0; i < n; ++i) {
                e += z[i] * w;
                w *= y;
            }
            out += r.eval(z) << static_cast<unsigned long>(
                       L * to_u64(e, "gen_poly_cmp index"));
        } while (next_tuple(z, y));
        return out;
    };
    return bva::cmp(g_of(p), g_of(q), blocks, L);
}

Nat gen_explicit_permute(const Nat& fpsi, std::size_t n,
                         const std::vector<std::size_t>& sigma, const Nat& y) {
    if (sigma.size() != n) throw DomainError("permute: sigma size mismatch");
    std::uint64_t yv = to_u64(y, "permute y");
    std::vector<std::uint64_t> k(n), m(n);
    for (std::size_t t = 0; t < n; ++t) {
        k[t] = to_u64(nat_pow(y, t), "permute weight");
        m[t] = to_u64(nat_pow(y, sigma[t] - 1), "permute weight");
    }
    return bva::swap_n(fpsi, yv, k, m);
}

Nat gen_explicit_subst_const(const Nat& fpsi, std::size_t n, const Nat& a, const Nat& y) {
    if (n < 1) throw DomainError("subst_const: arity must be >= 1");
    if (a >= y) throw DomainError("subst_const: need a < y");
    // substitute the last argument: keep the slab x_n = a and drop its axis
    Nat slab = nat_pow(y, n - 1);
    Nat shift = a * slab;
    Nat mask = monus(pow2(slab), 1) * pow2(shift);
    return div_floor(band(fpsi, mask), pow2(shift));
}

Nat gen_explicit_identify_last(const Nat& fpsi, std::size_t n, const Nat& y) {
    if (n < 2) throw DomainError("identify_last: arity must be >= 2");
    std::uint64_t yv = to_u64(y, "identify y");
    // f_eq marks assignments with x_{n-1} = x_n
    Nat feq = 0;
    Nat slab_lo = nat_pow(y, n - 2);
    Nat pair_w = slab_lo + slab_lo * y;  // y^{n-2} + y^{n-1}
    std::vector<Nat> x(n - 1, 0);       // x_1..x_{n-2} plus the shared value v
    do {
        Nat e = 0, w = 1;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            e += x[i] * w;
            w *= y;
        }
        e += x.back() * pair_w;
        mpz_setbit(feq.get_mpz_t(), to_u64(e, "identify exponent"));
    } while (next_tuple(x, y));
    Nat frho = band(fpsi, feq);
    std::vector<std::uint64_t> k(n - 1), m(n - 1);
    for (std::size_t t = 0; t + 1 < n - 1; ++t) {
        k[t] = to_u64(nat_pow(y, t), "identify weight");
        m[t] = k[t];
    }
    k[n - 2] = to_u64(pair_w, "identify weight");
    m[n - 2] = to_u64(slab_lo, "identify weight");
    return bva::swap_n(frho, yv, k, m);
}

Nat gen_explicit_add_dummy(const Nat& fpsi, std::size_t n, const Nat& y) {
    std::uint64_t yv = to_u64(y, "add_dummy y");
    std::uint64_t stride = to_u64(nat_pow(y, n), "add_dummy stride");
    return bv::rep(fpsi, yv, stride);
}

Nat gen_count(const GenPredicate& psi, const Poly& poly, const Nat& z) {
    if (z < 1) throw DomainError("gen_count: z must be >= 1");
    const std::size_t n = psi.arity;
    if (poly.arity != n) throw DomainError("gen_count: poly arity mismatch");
    Nat qn = poly.eval_all(z) + z + 1;
    check_table_budget(nat_pow(qn, n + 2), "gen_count");
    std::uint64_t q = to_u64(qn, "gen_count q");
    std::uint64_t zv = to_u64(z, "gen_count z");

    // rho(x, x1..xn, y) == psi(x, x2..xn) and x < poly(x1..xn); y is a dummy
    GenPredicate rho;
    rho.arity = n + 2;
    rho.chi = [&psi, &poly, n](const std::vector<Nat>& v) {
        std::vector<Nat> pargs(v.begin() + 1, v.begin() + 1 + n);
        if (v[0] >= poly.eval(pargs)) return 0;
        std::vector<Nat> sargs;
        sargs.push_back(v[0]);
        for (std::size_t i = 2; i <= n; ++i) sargs.push_back(v[i]);
        return psi.chi(sargs);
    };
    Nat frho = genfn_bruteforce(rho, qn);

    std::uint64_t q_pow_n = to_u64(nat_pow(qn, n), "gen_count q^n");
    std::uint64_t q_pow_n1 = to_u64(nat_pow(qn, n + 1), "gen_count q^{n+1}");
    std::uint64_t q_pow_n2 = to_u64(nat_pow(qn, n + 2), "gen_count q^{n+2}");

    Nat fprime = bva::incr(frho, q_pow_n2, q);
    Nat u = bv::sum(fprime, q_pow_n1, q, q);

    Nat v = 0;
    for (std::uint64_t y = 0; y < q; ++y)
        v += Nat(static_cast<unsigned long>(y)) * pow2(Nat(y) * Nat(q_pow_n2));
    Nat comb = 0;
    for (std::uint64_t i = 0; i < q_pow_n; ++i)
        comb += pow2(Nat(static_cast<unsigned long>(q)) * Nat(static_cast<unsigned long>(q)) *
                     Nat(static_cast<unsigned long>(i)));
    v *= comb;

    Nat w = 1;
    for (std::size_t j = 1; j <= n + 1; ++j) {
        Nat part = 0;
        for (std::uint64_t i = 0; i < zv; ++i)
            part += pow2(Nat(static_cast<unsigned long>(i)) * nat_pow(qn, j - 1));
        w *= part;
    }

    Nat sel = band(bva::cmpeq(u, v, q_pow_n1, q * q), w);
    std::vector<std::uint64_t> ks(n + 1), ms(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        ks[j] = to_u64(nat_pow(qn, j), "gen_count weight");
        ms[j] = to_u64(nat_pow(z, j), "gen_count weight");
    }
    return bva::swap_n(sel, zv, ks, ms);
}

Nat xs_extract(const GenPredicate& psi, const Poly& bound, const std::vector<Nat>& args) {
    const std::size_t n = args.size();
    if (psi.arity != n + 1) throw DomainError("xs_extract: psi must have arity n+1");
    Nat z = 1;
    for (const auto& a : args) z += a;
    Nat table = genfn_bruteforce(psi, z);
    Nat e = 0, w = 1;
    for (std::size_t i = 0; i < n; ++i) {
        e += args[i] * w;
        w *= z;
    }
    Nat zn = nat_pow(z, n);
    Nat t = bound.eval(args);
    return bva::decr(div_floor(table, pow2(e)), to_u64(t * zn, "xs_extract blocks"),
                    to_u64(zn, "xs_extract width"));
}

}  // namespace recfun
