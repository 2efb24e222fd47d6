#pragma once

#include "recfun/blockvec.hpp"
#include "recfun/nat.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace recfun {

// A total 0/1-valued predicate over Nat^n.
struct GenPredicate {
    std::string name;
    std::size_t arity = 1;
    std::function<int(const std::vector<Nat>&)> chi;
};

// Polynomial over N_0 with non-negative coefficients, stored as a sparse
// term list (coefficient, one exponent per variable).
struct PolyTerm {
    Nat coef;
    std::vector<std::uint64_t> exps;
};

struct Poly {
    std::size_t arity = 1;
    std::vector<PolyTerm> terms;

    Nat eval(const std::vector<Nat>& args) const;
    Nat eval_all(const Nat& v) const;  // all variables set to v
};

// Defining sum f_rho(y) = sum chi(x1..xn) 2^{x1 + x2 y + ... + xn y^{n-1}}.
Nat genfn_bruteforce(const GenPredicate& rho, const Nat& y);

enum class GenLogicOp { Not, And };

// a (and b for And) are generating-function values at the same y and arity n.
Nat gen_logic(const Nat& a, const Nat& b, std::size_t n, const Nat& y, GenLogicOp op);

// Generating function of p(x~) >= q(x~) at y.
Nat gen_poly_cmp(const Poly& p, const Poly& q, const Nat& y);

// Explicit transformations of a generating function of psi (arity n) at y.
Nat gen_explicit_permute(const Nat& fpsi, std::size_t n,
                         const std::vector<std::size_t>& sigma, const Nat& y);
Nat gen_explicit_subst_const(const Nat& fpsi, std::size_t n, const Nat& a, const Nat& y);
Nat gen_explicit_identify_last(const Nat& fpsi, std::size_t n, const Nat& y);
Nat gen_explicit_add_dummy(const Nat& fpsi, std::size_t n, const Nat& y);

// Counting: psi has arity n, poly has arity n; the result is the generating
// function at z of phi(x1..xn, y) == [ y = #{ x < poly(x1..xn) : psi(x, x2..xn) } ].
Nat gen_count(const GenPredicate& psi, const Poly& poly, const Nat& z);

// XS extraction: psi (arity n+1) is the bit graph of the target function f
// (psi(x~, y) == bit y of f(x~)); bound satisfies f(args) < 2^{bound(args)}.
// Recovers f(args) through the generating function at z = sum(args)+1.
Nat xs_extract(const GenPredicate& psi, const Poly& bound, const std::vector<Nat>& args);

}  // namespace recfun
