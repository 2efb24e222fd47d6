#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace recfun {

// Exact non-negative integer of unbounded size. All operations below are
// total; conventions for the degenerate cases (rm(x,0)=0, div(x,0)=0,
// log2(0)=0, len(0)=0) are fixed once here and relied on everywhere else.
using Nat = mpz_class;

// Raised when an operation would materialize a value beyond the configured
// bit budget (see bit_budget / RECFUN_BIT_BUDGET).
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by checked wrappers when a documented precondition is violated.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Value budget in bits. Default 2^24, overridable via the RECFUN_BIT_BUDGET
// environment variable; heavy verification suites may raise it locally with
// ScopedBudget.
std::uint64_t bit_budget();
void set_bit_budget(std::uint64_t bits);

struct ScopedBudget {
    explicit ScopedBudget(std::uint64_t bits) : saved_(bit_budget()) {
        set_bit_budget(bits);
    }
    ~ScopedBudget() { set_bit_budget(saved_); }
    ScopedBudget(const ScopedBudget&) = delete;
    ScopedBudget& operator=(const ScopedBudget&) = delete;

  private:
    std::uint64_t saved_;
};

// Narrowing helper: converts to uint64, throwing BudgetError when the value
// is absurdly large for a count/shift argument.
std::uint64_t to_u64(const Nat& x, const char* what);

// --- basis catalog -------------------------------------------------------

Nat monus(const Nat& x, const Nat& y);           // max(x-y, 0)
Nat rm(const Nat& x, const Nat& y);              // remainder; rm(x,0)=0
Nat div_floor(const Nat& x, const Nat& y);       // floor division; x/0 = 0
Nat bit_get(const Nat& x, const Nat& y);         // y-th binary digit of x
Nat len(const Nat& x);                           // bit length; len(0)=0
Nat log2_floor(const Nat& x);                    // floor(log2 x); 0 for x=0
Nat band(const Nat& x, const Nat& y);            // bitwise conjunction
Nat rot_r(const Nat& x, const Nat& y);           // cyclic right shift, width len(x)
Nat min_pow2(const Nat& x, const Nat& y);        // min(x, 2^y)
Nat exp_logsq(const Nat& x);                     // 2^([log2 x]^2); exp_logsq(0)=1
Nat pow_log(const Nat& x, const Nat& y);         // x^[log2 y]
Nat pow2(const Nat& y);                          // 2^y (budget-guarded)
Nat sg(const Nat& x);                            // 1 if x>0 else 0
Nat sgbar(const Nat& x);                         // 1 if x=0 else 0

// Bounded summation: sum of g(y) over y < x (empty sum is 0).
Nat bounded_sum(const Nat& x, const std::function<Nat(const Nat&)>& g);

// Bounded minimization: least y < x with g(y) != 0, else 0.
Nat bounded_mu(const Nat& x, const std::function<Nat(const Nat&)>& g);

}  // namespace recfun
