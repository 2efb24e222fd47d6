#include "recfun/nat.hpp"

#include <atomic>
#include <cstdlib>

namespace recfun {

namespace {

std::uint64_t initial_budget() {
    if (const char* env = std::getenv("RECFUN_BIT_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t(1) << 24;
}

std::atomic<std::uint64_t>& budget_cell() {
    static std::atomic<std::uint64_t> cell{initial_budget()};
    return cell;
}

}  // namespace

std::uint64_t bit_budget() { return budget_cell().load(); }
void set_bit_budget(std::uint64_t bits) { budget_cell().store(bits); }

std::uint64_t to_u64(const Nat& x, const char* what) {
    if (x < 0 || !x.fits_ulong_p())
        throw BudgetError(std::string(what) + ": value does not fit a machine word");
    return static_cast<std::uint64_t>(x.get_ui());
}

Nat monus(const Nat& x, const Nat& y) { return x > y ? Nat(x - y) : Nat(0); }

Nat rm(const Nat& x, const Nat& y) {
    if (y == 0) return 0;
    Nat r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

Nat div_floor(const Nat& x, const Nat& y) {
    if (y == 0) return 0;
    Nat q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

Nat bit_get(const Nat& x, const Nat& y) {
    if (!y.fits_ulong_p()) return 0;  // far beyond the bit length of any value in budget
    return mpz_tstbit(x.get_mpz_t(), y.get_ui()) ? 1 : 0;
}

Nat len(const Nat& x) {
    if (x == 0) return 0;
    return Nat(static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2)));
}

Nat log2_floor(const Nat& x) {
    if (x == 0) return 0;
    return Nat(static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2) - 1));
}

Nat band(const Nat& x, const Nat& y) {
    Nat r;
    mpz_and(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

Nat rot_r(const Nat& x, const Nat& y) {
    if (x <= 1) return x;
    std::uint64_t n = mpz_sizeinbase(x.get_mpz_t(), 2);  // rotation width
    Nat yr = y % Nat(static_cast<unsigned long>(n));
    std::uint64_t s = yr.get_ui();
    if (s == 0) return x;
    // bit j of the result is bit (j+s mod n) of x
    Nat high = x >> static_cast<unsigned long>(s);
    Nat lowmask = (Nat(1) << static_cast<unsigned long>(s)) - 1;
    Nat low = band(x, lowmask) << static_cast<unsigned long>(n - s);
    return high + low;
}

Nat pow2(const Nat& y) {
    std::uint64_t e = to_u64(y, "pow2 exponent");
    if (e > bit_budget())
        throw BudgetError("pow2: exponent " + Nat(y).get_str() + " exceeds bit budget");
    Nat r = 1;
    r <<= static_cast<unsigned long>(e);
    return r;
}

Nat min_pow2(const Nat& x, const Nat& y) {
    // decide x < 2^y by length without materializing 2^y
    if (len(x) <= y) return x;
    return pow2(y);
}

Nat exp_logsq(const Nat& x) {
    Nat e = log2_floor(x);
    return pow2(e * e);
}

Nat pow_log(const Nat& x, const Nat& y) {
    Nat e = log2_floor(y);
    std::uint64_t eu = to_u64(e, "pow_log exponent");
    if (eu > 0 && x > 1) {
        std::uint64_t xbits = mpz_sizeinbase(x.get_mpz_t(), 2);
        if (xbits > bit_budget() / (eu ? eu : 1) + 1)
            throw BudgetError("pow_log: result exceeds bit budget");
    }
    Nat r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(eu));
    return r;
}

Nat sg(const Nat& x) { return x > 0 ? 1 : 0; }
Nat sgbar(const Nat& x) { return x == 0 ? 1 : 0; }

Nat bounded_sum(const Nat& x, const std::function<Nat(const Nat&)>& g) {
    std::uint64_t bound = to_u64(x, "bounded_sum bound");
    if (bound > bit_budget())
        throw BudgetError("bounded_sum: iteration count exceeds budget");
    Nat acc = 0;
    for (Nat y = 0; y < x; ++y) acc += g(y);
    return acc;
}

Nat bounded_mu(const Nat& x, const std::function<Nat(const Nat&)>& g) {
    std::uint64_t bound = to_u64(x, "bounded_mu bound");
    if (bound > bit_budget())
        throw BudgetError("bounded_mu: iteration count exceeds budget");
    for (Nat y = 0; y < x; ++y)
        if (g(y) != 0) return y;
    return 0;
}

}  // namespace recfun
