#pragma once

#include "recfun/nat.hpp"

#include <cstdint>
#include <vector>

namespace recfun {

// Decoded block code <x0,...,x_{n-1}; l> = sum x_i * 2^{i*l}.
struct BlockVec {
    std::vector<Nat> blocks;
    std::uint64_t width = 1;
};

Nat encode(const BlockVec& v);
BlockVec decode(const Nat& x, std::uint64_t n, std::uint64_t l);

// Formula paths: the closed forms over natcore ops only. Total functions;
// values outside the documented preconditions are garbage-in/garbage-out.
namespace bv {

Nat rep(const Nat& x, std::uint64_t n, std::uint64_t l);
Nat incrx(const Nat& x, std::uint64_t n, std::uint64_t l1, std::uint64_t l2);
Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m);
Nat incr(const Nat& x, std::uint64_t q, std::uint64_t l);
Nat decr(const Nat& x, std::uint64_t q, std::uint64_t l);
Nat bnot(const Nat& x, std::uint64_t n);
Nat bor(const Nat& x, const Nat& y, std::uint64_t n);
Nat bxor(const Nat& x, const Nat& y, std::uint64_t n);
Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);
Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);
Nat sum(const Nat& x, std::uint64_t n, std::uint64_t l, std::uint64_t k);
Nat reverse_bits(const Nat& x, std::uint64_t n);
Nat ssqrt(const Nat& y);

}  // namespace bv

// Independent decode/transform/encode oracles with the same signatures.
namespace bvo {

Nat rep(const Nat& x, std::uint64_t n, std::uint64_t l);
Nat incrx(const Nat& x, std::uint64_t n, std::uint64_t l1, std::uint64_t l2);
Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m);
Nat incr(const Nat& x, std::uint64_t q, std::uint64_t l);
Nat decr(const Nat& x, std::uint64_t q, std::uint64_t l);
Nat bnot(const Nat& x, std::uint64_t n);
Nat bor(const Nat& x, const Nat& y, std::uint64_t n);
Nat bxor(const Nat& x, const Nat& y, std::uint64_t n);
Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);
Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);
Nat sum(const Nat& x, std::uint64_t n, std::uint64_t l, std::uint64_t k);
Nat reverse_bits(const Nat& x, std::uint64_t n);

}  // namespace bvo

// Auto-dispatch layer used by composite constructions: takes the formula
// path whenever its intermediates fit the current bit budget, otherwise the
// oracle path (same value; the closed forms are certified separately by the
// formula-vs-oracle suite).
namespace bva {

Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m);
Nat incr(const Nat& x, std::uint64_t q, std::uint64_t l);
Nat decr(const Nat& x, std::uint64_t q, std::uint64_t l);
Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);
Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);

}  // namespace bva

// Checked wrappers: validate the documented preconditions (DomainError on
// violation), then delegate to the formula path.
namespace bvc {

Nat rep(const Nat& x, std::uint64_t n, std::uint64_t l);
Nat incrx(const Nat& x, std::uint64_t n, std::uint64_t l1, std::uint64_t l2);
Nat swap_n(const Nat& x, std::uint64_t q, const std::vector<std::uint64_t>& k,
           const std::vector<std::uint64_t>& m);
Nat cmp(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);
Nat cmpeq(const Nat& x, const Nat& y, std::uint64_t n, std::uint64_t l);
Nat sum(const Nat& x, std::uint64_t n, std::uint64_t l, std::uint64_t k);
Nat reverse_bits(const Nat& x, std::uint64_t n);

}  // namespace bvc

}  // namespace recfun
