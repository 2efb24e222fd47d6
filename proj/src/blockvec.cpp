#include "recfun/blockvec.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace recfun {

Nat encode(const BlockVec& v) {
    Nat acc = 0;
    for (std::size_t i = v.blocks.size(); i-- > 0;) {
        acc <<= static_cast<unsigned long>(v.width);
        acc += v.blocks[i];
    }
    return acc;
}

BlockVec decode(const Nat& x, std::uint64_t n, std::uint64_t l) {
    BlockVec v;
    v.width = l;
    v.blocks.reserve(n);
    Nat mask = (Nat(1) << static_cast<unsigned long>(l)) - 1;
    Nat rest = x;
    for (std::uint64_t i = 0; i < n; ++i) {
        v.blocks.push_back(band(rest, mask));
        rest >>= static_cast<unsigned long>(l);
    }
    return v;
}

namespace bv {

namespace {

// Geometric divisor sum_{i<n} 2^{il} = floor((2^{nl}-1)/(2^l-1)); the l=0
// degenerate case is the mathematical limit n (n copies at stride zero).
Nat geom(std::uint64_t n, std::uint64_t l) {
    if (l == 0) return Nat(static_cast<unsigned long>(n));
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, Nat> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, l);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Nat g = div_floor(monus(pow2(Nat(n) * Nat(l)), 1), monus(pow2(Nat(l)), 1));
    cache.emplace(key, g);
    return g;
}

std::string swap_key(std::uint64_t q, const std::vector<std::uint64_t>& k,
                     const std::vector<std::uint64_t>& m) {
    std::ostringstream os;
    os << q;
    for (auto v : k) os << 'k' << v;
    for (auto v : m) os << 'm' << v;
    return os.str();
}

}  // namespace

Nat rep(const Nat& x, std::uint64_t n, std::uint64_t l) { return x * geom(n, l); }

Nat incrx(const Nat& x, std::uint64_t n, std::uint64_t l1, std::uint64_t l2) {
    Nat spread = rep(x, n, l2 - l1);
    Nat mask = rep(monus(pow2(Nat(l1)), 1), n, l2);
    return band(spread, mask);
}

Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m) {
    const std::size_t n = k.size();
    Nat sum_k = 0, sum_m = 0;
    for (auto v : k) sum_k += v;
    for (auto v : m) sum_m += v;
    Nat qn = Nat(static_cast<unsigned long>(q));
    Nat p;
    mpz_pow_ui(p.get_mpz_t(), qn.get_mpz_t(), static_cast<unsigned long>(2 * n));
    p += qn * (sum_m + 1);
    // Weights above the nominal q^n range (incr/decr with a large stride)
    // need the stride to cover the whole input index range as well.
    p += sum_k * monus(qn, 1);
    Nat a = qn * p * (sum_k + 1);

    // Spread window: every admissible weight sum is <= sum_k*(q-1), and the
    // grouping argument needs the window <= p-1.
    Nat window = sum_k * monus(qn, 1) + 1;
    if (window > p - 1) window = p - 1;
    Nat spread = incrx(x, to_u64(window, "swap window"), 1, to_u64(p, "swap stride"));

    // The product of the n block-transport factors depends only on (q,k,m).
    static std::mutex mu;
    static std::map<std::string, Nat> cache;
    Nat factors;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto key = swap_key(q, k, m);
        auto it = cache.find(key);
        if (it != cache.end()) {
            factors = it->second;
        } else {
            factors = 1;
            for (std::size_t r = 0; r < n; ++r) {
                Nat kp = Nat(static_cast<unsigned long>(k[r])) * p;
                Nat delta = qn * monus(kp, Nat(static_cast<unsigned long>(m[r])));
                Nat num = monus(pow2(a + kp), pow2(monus(a + kp, delta)));
                Nat den = monus(pow2(kp), pow2(Nat(static_cast<unsigned long>(m[r]))));
                factors *= div_floor(num, den);
            }
            cache.emplace(key, factors);
        }
    }

    Nat shifted = div_floor(spread * factors, pow2(Nat(static_cast<unsigned long>(n)) * a));
    return rm(shifted, pow2(p));
}

Nat incr(const Nat& x, std::uint64_t q, std::uint64_t l) { return swap_n(x, q, {1}, {l}); }
Nat decr(const Nat& x, std::uint64_t q, std::uint64_t l) { return swap_n(x, q, {l}, {1}); }

Nat bnot(const Nat& x, std::uint64_t n) { return monus(monus(pow2(Nat(n)), 1), x); }

Nat bor(const Nat& x, const Nat& y, std::uint64_t n) {
    return bnot(band(bnot(x, n), bnot(y, n)), n);
}

Nat bxor(const Nat& x, const Nat& y, std::uint64_t n) {
    return band(bor(x, y, n), bnot(band(x, y), n));
}

Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    Nat sx = incr(x, n * l, 2);
    Nat sy = incr(y, n * l, 2);
    Nat high = pow2(Nat(2 * l - 1));
    Nat mask = rep(high, n, 2 * l);
    Nat t = band(monus(mask + sx, sy), mask);
    return decr(div_floor(t, high), n, 2 * l);
}

Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    return band(cmp(x, y, n, l), cmp(y, x, n, l));
}

Nat sum(const Nat& x, std::uint64_t n, std::uint64_t l, std::uint64_t k) {
    Nat g = geom(k, l);
    Nat t = div_floor(x * g, pow2(Nat((k - 1) * l)));
    return band(t, rep(monus(pow2(Nat(l)), 1), n, k * l));
}

Nat reverse_bits(const Nat& x, std::uint64_t n) {
    if (n <= 1) return band(x, 1);
    Nat m = div_floor(monus(pow2(Nat(n * n - 1)), pow2(Nat(n - 1))),
                      monus(pow2(Nat(n - 1)), 1));
    Nat t = div_floor(band(rep(x, n, n), m), pow2(Nat(n - 1)));
    return decr(t, n, n - 1);
}

Nat ssqrt(const Nat& y) {
    Nat f = exp_logsq(y);
    Nat f4 = f * f * f * f;
    Nat y2 = y * y;
    Nat a = div_floor(monus(f4, 1), monus(y2, 1));
    Nat b = div_floor(monus(div_floor(f4, 2), 1), monus(div_floor(y2, 2), 1));
    Nat bc = band(a, monus(f, 1)) * b;
    Nat y3 = y2 * y;
    Nat den = div_floor(2 * f, y3);
    Nat d;
    if (den != 0) {
        d = band(div_floor(bc, den), monus(y, 1));
    } else {
        // right shift by a negative amount: multiply by floor(y^3/(2f))
        d = band(bc * div_floor(y3, 2 * f), monus(y, 1));
    }
    return monus(y, d);
}

}  // namespace bv

namespace bvo {

Nat rep(const Nat& x, std::uint64_t n, std::uint64_t l) {
    BlockVec v;
    v.width = l;
    v.blocks.assign(n, x);
    return encode(v);
}

Nat incrx(const Nat& x, std::uint64_t n, std::uint64_t l1, std::uint64_t l2) {
    BlockVec v = decode(x, n, l1);
    v.width = l2;
    return encode(v);
}

Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m) {
    const std::size_t n = k.size();
    Nat out = 0;
    std::vector<std::uint64_t> idx(n, 0);
    for (;;) {
        std::uint64_t wk = 0, wm = 0;
        for (std::size_t j = 0; j < n; ++j) {
            wk += k[j] * idx[j];
            wm += m[j] * idx[j];
        }
        if (mpz_tstbit(x.get_mpz_t(), wk)) mpz_setbit(out.get_mpz_t(), wm);
        std::size_t j = 0;
        while (j < n && ++idx[j] == q) idx[j++] = 0;
        if (j == n) break;
    }
    return out;
}

Nat incr(const Nat& x, std::uint64_t q, std::uint64_t l) {
    Nat out = 0;
    for (std::uint64_t i = 0; i < q; ++i)
        if (mpz_tstbit(x.get_mpz_t(), i)) mpz_setbit(out.get_mpz_t(), i * l);
    return out;
}

Nat decr(const Nat& x, std::uint64_t q, std::uint64_t l) {
    Nat out = 0;
    for (std::uint64_t i = 0; i < q; ++i)
        if (mpz_tstbit(x.get_mpz_t(), i * l)) mpz_setbit(out.get_mpz_t(), i);
    return out;
}

Nat bnot(const Nat& x, std::uint64_t n) {
    Nat out = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (!mpz_tstbit(x.get_mpz_t(), i)) mpz_setbit(out.get_mpz_t(), i);
    return out;
}

Nat bor(const Nat& x, const Nat& y, std::uint64_t n) {
    Nat out = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (mpz_tstbit(x.get_mpz_t(), i) || mpz_tstbit(y.get_mpz_t(), i))
            mpz_setbit(out.get_mpz_t(), i);
    return out;
}

Nat bxor(const Nat& x, const Nat& y, std::uint64_t n) {
    Nat out = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (mpz_tstbit(x.get_mpz_t(), i) != mpz_tstbit(y.get_mpz_t(), i))
            mpz_setbit(out.get_mpz_t(), i);
    return out;
}

Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    BlockVec a = decode(x, n, l), b = decode(y, n, l);
    Nat out = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (a.blocks[i] >= b.blocks[i]) mpz_setbit(out.get_mpz_t(), i);
    return out;
}

Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    BlockVec a = decode(x, n, l), b = decode(y, n, l);
    Nat out = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (a.blocks[i] == b.blocks[i]) mpz_setbit(out.get_mpz_t(), i);
    return out;
}

Nat sum(const Nat& x, std::uint64_t n, std::uint64_t l, std::uint64_t k) {
    BlockVec in = decode(x, n * k, l);
    BlockVec v;
    v.width = l * k;
    for (std::uint64_t i = 0; i < n; ++i) {
        Nat s = 0;
        for (std::uint64_t j = 0; j < k; ++j) s += in.blocks[i * k + j];
        v.blocks.push_back(s);
    }
    return encode(v);
}

Nat reverse_bits(const Nat& x, std::uint64_t n) {
    Nat out = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (mpz_tstbit(x.get_mpz_t(), i)) mpz_setbit(out.get_mpz_t(), n - 1 - i);
    return out;
}

}  // namespace bvo

namespace bva {

namespace {

bool swap_fits_budget(std::uint64_t q, const std::vector<std::uint64_t>& k,
                      const std::vector<std::uint64_t>& m) {
    const std::size_t n = k.size();
    Nat sum_k = 0, sum_m = 0, max_k = 0;
    for (auto v : k) {
        sum_k += v;
        if (Nat(static_cast<unsigned long>(v)) > max_k) max_k = v;
    }
    for (auto v : m) sum_m += v;
    Nat qn = Nat(static_cast<unsigned long>(q));
    Nat p;
    mpz_pow_ui(p.get_mpz_t(), qn.get_mpz_t(), static_cast<unsigned long>(2 * n));
    p += qn * (sum_m + 1);
    // Weights above the nominal q^n range (incr/decr with a large stride)
    // need the stride to cover the whole input index range as well.
    p += sum_k * monus(qn, 1);
    Nat a = qn * p * (sum_k + 1);
    // largest materialized exponent: the n*a divisor plus one factor numerator
    Nat peak = Nat(static_cast<unsigned long>(n)) * a + a + max_k * p;
    return peak <= Nat(static_cast<unsigned long>(bit_budget()));
}

}  // namespace

Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m) {
    return swap_fits_budget(q, k, m) ? bv::swap_n(x, q, k, m) : bvo::swap_n(x, q, k, m);
}

Nat incr(const Nat& x, std::uint64_t q, std::uint64_t l) {
    return swap_fits_budget(q, {1}, {l}) ? bv::incr(x, q, l) : bvo::incr(x, q, l);
}

Nat decr(const Nat& x, std::uint64_t q, std::uint64_t l) {
    return swap_fits_budget(q, {l}, {1}) ? bv::decr(x, q, l) : bvo::decr(x, q, l);
}

Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    Nat sx = incr(x, n * l, 2);
    Nat sy = incr(y, n * l, 2);
    Nat high = pow2(Nat(2 * l - 1));
    Nat mask = bv::rep(high, n, 2 * l);
    Nat t = band(monus(mask + sx, sy), mask);
    return decr(div_floor(t, high), n, 2 * l);
}

Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    return band(cmp(x, y, n, l), cmp(y, x, n, l));
}

}  // namespace bva

namespace bvc {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

void require_blocks(const Nat& x, std::uint64_t n, std::uint64_t l, const char* who) {
    require(len(x) <= Nat(Nat(static_cast<unsigned long>(n)) * Nat(static_cast<unsigned long>(l))),
            who);
}

}  // namespace

Nat rep(const Nat& x, std::uint64_t n, std::uint64_t l) {
    require(n >= 1 && l >= 1, "rep: n and l must be >= 1");
    return bv::rep(x, n, l);
}

Nat incrx(const Nat& x, std::uint64_t n, std::uint64_t l1, std::uint64_t l2) {
    require(n >= 1 && l1 >= 1, "incrx: n and l1 must be >= 1");
    require(l2 >= (n + 1) * l1, "incrx: need l2 >= (n+1)*l1");
    require_blocks(x, n, l1, "incrx: x wider than n blocks of l1 bits");
    return bv::incrx(x, n, l1, l2);
}

Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m) {
    const std::size_t n = k.size();
    require(n >= 1 && n == m.size(), "swap_n: need |k| = |m| >= 1");
    require(q >= 1, "swap_n: q must be >= 1");
    Nat sum_k = 0, sum_m = 0;
    for (auto v : k) {
        require(v >= 1, "swap_n: k_i must be >= 1");
        sum_k += v;
    }
    for (auto v : m) sum_m += v;
    Nat qn = Nat(static_cast<unsigned long>(q));
    Nat p;
    mpz_pow_ui(p.get_mpz_t(), qn.get_mpz_t(), static_cast<unsigned long>(2 * n));
    p += qn * (sum_m + 1);
    require(sum_k * monus(qn, 1) <= p - 2, "swap_n: weight range exceeds the stride");
    // all weighted sums k*i over [0,q)^n must be distinct
    if (n >= 2) {
        std::map<std::uint64_t, int> seen;
        std::vector<std::uint64_t> idx(n, 0);
        for (;;) {
            std::uint64_t wk = 0;
            for (std::size_t j = 0; j < n; ++j) wk += k[j] * idx[j];
            require(seen.emplace(wk, 1).second, "swap_n: weight sums not distinct");
            std::size_t j = 0;
            while (j < n && ++idx[j] == q) idx[j++] = 0;
            if (j == n) break;
        }
    }
    return bv::swap_n(x, q, k, m);
}

Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    require(n >= 1 && l >= 1, "cmp: n and l must be >= 1");
    require_blocks(x, n, l, "cmp: x wider than declared");
    require_blocks(y, n, l, "cmp: y wider than declared");
    return bv::cmp(x, y, n, l);
}

Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l) {
    require(n >= 1 && l >= 1, "cmpeq: n and l must be >= 1");
    require_blocks(x, n, l, "cmpeq: x wider than declared");
    require_blocks(y, n, l, "cmpeq: y wider than declared");
    return bv::cmpeq(x, y, n, l);
}

Nat sum(const Nat& x, std::uint64_t n, std::uint64_t l, std::uint64_t k) {
    require(n >= 1 && l >= 1 && k >= 1, "sum: n, l, k must be >= 1");
    require(len(Nat(static_cast<unsigned long>(k))) <= Nat(static_cast<unsigned long>(l)),
            "sum: need k < 2^l");
    require_blocks(x, n * k, l, "sum: x wider than n*k blocks");
    return bv::sum(x, n, l, k);
}

Nat reverse_bits(const Nat& x, std::uint64_t n) {
    require(n >= 1, "reverse_bits: n must be >= 1");
    require(len(x) <= Nat(static_cast<unsigned long>(n)), "reverse_bits: x must be < 2^n");
    return bv::reverse_bits(x, n);
}

}  // namespace bvc

}  // namespace recfun
