#pragma once

#include "recfun/nat.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace recfun {

// Computable permutation of N_0 with an explicit inverse. Equality of such
// objects is undecidable; all checks in this module are pointwise prefix
// checks (see check_* helpers).
struct Perm {
    std::function<Nat(const Nat&)> fwd, bwd;
    std::optional<Nat> support_hint;  // fwd(x) = x for x >= hint, when set
};

Perm perm_identity();
Perm perm_compose(const Perm& f, const Perm& g);  // x -> f(g(x))
Perm perm_inverse(const Perm& f);
Perm perm_power(const Perm& f, long long z);
Perm perm_transposition(const Nat& a, const Nat& b);

// Prefix verifications.
bool check_bijective_prefix(const Perm& f, const Nat& bound);
bool check_equal_prefix(const Perm& f, const Perm& g, const Nat& bound);
bool check_involution_prefix(const Perm& f, const Nat& bound);

// Module-wide pairing: c2 interleaves the bits of x (even positions) and y
// (odd positions); c3(x,y,z) = c2(x, c2(y,z)).
Nat pair_c2(const Nat& x, const Nat& y);
Nat pair_c21(const Nat& t);
Nat pair_c22(const Nat& t);
Nat pair_c3(const Nat& x, const Nat& y, const Nat& z);
Nat pair_c31(const Nat& t);
Nat pair_c32(const Nat& t);
Nat pair_c33(const Nat& t);

// The four-rule permutation p_f; f may be any total unary function.
Perm make_pf(const std::function<Nat(const Nat&)>& f);

// Code of a partially defined binary function: the matching
// c3(x,y,0) <-> c3(x,y,g(x,y)+2) where g is defined.
using PartialBinary = std::function<std::optional<Nat>(const Nat&, const Nat&)>;
Perm code_of(const PartialBinary& g);

Perm perm_px();               // code of g(x1,x2) = x1
Perm perm_del();              // c3(x,2y,0) <-> c3(x,2y,1)
Perm perm_sij(int i, int j);  // 4x+i <-> 4x+j, 0 <= i < j <= 3
Perm perm_move();
Perm perm_place();
Perm perm_swap1();
Perm perm_swap2();

// (f1 o f2)^4 o f2; when check_bound > 0, samples the three preconditions
// (A, f1(A), f2(A) pairwise disjoint; f1 stationary on f2(A); f2 stationary
// off A u f2(A)) on [0, check_bound) and throws DomainError on violation.
Perm delete_combinator(const Perm& f1, const Perm& f2,
                       const std::function<bool(const Nat&)>& in_a,
                       const Nat& check_bound);

// p_{f_n}^{-1} o ... o p_{f_1}^{-1} o px o p_{f_1} o ... o p_{f_n}: the code
// of a g with g(x, 2y) = f_1(...f_n(x)...).
Perm unar_compose_code(const std::vector<std::function<Nat(const Nat&)>>& fs);

// Reconstructs a matching f over the even numbers from a word of matchings
// composing to f'(x) = f(2x)/2, via the psi chain ending in the place
// conjugation. When check_bound > 0 the word is verified against f' on
// [0, check_bound) first.
Perm even_matching_pipeline(const Perm& f, const std::vector<Perm>& word,
                            const Nat& check_bound);

// Infinite set with rank (mu) and unrank (nu) functions; nu enumerates the
// set in increasing order, mu inverts it on the set (0 elsewhere).
struct RegularSet {
    std::function<int(const Nat&)> chi;
    std::function<Nat(const Nat&)> mu, nu;
};

RegularSet regular_all();
RegularSet regular_evens();
RegularSet regular_odds();

// Parity split by rank: first component takes even ranks.
std::pair<RegularSet, RegularSet> regular_split(const RegularSet& a);
// Disjoint union with interleaved ranks (a on even, b on odd).
RegularSet regular_union(const RegularSet& a, const RegularSet& b);

// Band construction R1 = A0 u A4 u ..., R2 = A2 u A6 u ... with
// A_i = [h^i(0), h^{i+1}(0)); h must be strictly increasing with h(x) > x.
std::pair<RegularSet, RegularSet> band_sets(const std::function<Nat(const Nat&)>& h);
// The concrete h(x) = 2^{[log2(x+20)]^n} + 2x (n >= 2).
std::pair<RegularSet, RegularSet> band_factory(std::uint64_t n);

// Splits f into f1 o f2 with f1 stationary on the second half of B's rank
// split and f2 stationary on A; in_a decides membership in A, B supplies
// the chain points (disjoint from A u f(A)).
std::pair<Perm, Perm> stationary_decompose(const Perm& f,
                                           const std::function<bool(const Nat&)>& in_a,
                                           const RegularSet& b);

// (f, g, B): matchings with f: b1<->b3, b2<->b4 and g: b1<->b2 over the
// enumerated tuple family B, all components pairwise distinct.
struct CorrectTriple {
    Perm f, g;
    std::function<std::array<Nat, 4>(const Nat&)> tuple;  // B by index
    std::optional<std::uint64_t> tuple_count;             // finite B
};

// Builds a finite triple from explicit tuples (normalized so b1 < b2).
CorrectTriple triple_from_tuples(std::vector<std::array<Nat, 4>> tuples);

// Samples triple validity: distinct components and the two matching
// relations over the first `count` tuples.
bool check_triple(const CorrectTriple& t, std::uint64_t count);

// The two matchings a correct triple induces: b1<->b2, b3<->b4 and (after
// ordering each tuple so b1 < b2) b1<->b3. Squaring their product
// reconstructs the triple's f.
Perm triple_pair_matching(const CorrectTriple& t);
Perm triple_cross_matching(const CorrectTriple& t);

// The four matchings r1, r2, h1, h2 with f = h2 o h1 o r1 o r2 for an f
// stationary on the regular set A (complement regular, supplied explicitly),
// plus the auxiliary matchings s1, s2 and the four correct triples.
struct StationaryTriples {
    Perm r1, r2, h1, h2, s1, s2;
    CorrectTriple tr1, tr2, th1, th2;  // (r1,s1,M1), (r2,s2,M2), (h1,s1,.), (h2,s2,.)
};

StationaryTriples stationary_to_triples(const Perm& f, const RegularSet& a,
                                        const RegularSet& a_comp);

// statthreetwo combinator: f a matching over A u B u C (A, B, C disjoint,
// B regular) is returned as factors {f1, f2, g1, g2} with
// f = f1 o f2 o g1 o g2 o g1, f1/g1 matchings over A u B, f2/g2 over B u C.
std::vector<Perm> three_two_split(const Perm& f,
                                  const std::function<bool(const Nat&)>& in_a,
                                  const RegularSet& b,
                                  const std::function<bool(const Nat&)>& in_c);

// The rol/all two-generator assembly over bands E_0..E_{2^{2n+1}-1} for
// n = |triples|: rol per its arithmetic rule, all = v_1 o ... o v_{2n}, and
// each w_i both directly (embedding of the triple's f) and as the
// (s1 o s2)^2 word in rol/all; the two lists must agree pointwise.
struct TwoGenerator {
    Perm rol, all;
    std::vector<Perm> w_direct, w_assembled;
    Nat modulus;  // 2^{2n+1}
};

TwoGenerator two_generator_assembly(const std::vector<CorrectTriple>& triples);

}  // namespace recfun
