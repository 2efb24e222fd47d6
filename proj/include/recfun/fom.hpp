#pragma once

#include "recfun/blockvec.hpp"
#include "recfun/nat.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace recfun {

// Terms of the first-order-with-majority word logic: 1, |X|, or a variable.
struct FomTerm {
    enum class Kind { One, WordLen, Var };
    Kind kind = Kind::One;
    std::size_t index = 0;  // 1-based, for Kind::Var
};

struct FomFormula;
using FomPtr = std::shared_ptr<const FomFormula>;

struct FomFormula {
    enum class Kind { Leq, Bit, WordBit, And, Or, Not, Exists, Forall, Majority };
    Kind kind;
    FomTerm t1, t2;     // Leq/Bit: both; WordBit: t1 only
    FomPtr a, b;        // children
    std::size_t var = 0;  // bound variable for quantifiers
};

FomPtr fom_leq(FomTerm t1, FomTerm t2);
FomPtr fom_bit(FomTerm t1, FomTerm t2);
FomPtr fom_wbit(FomTerm t1);
FomPtr fom_and(FomPtr a, FomPtr b);
FomPtr fom_or(FomPtr a, FomPtr b);
FomPtr fom_not(FomPtr a);
FomPtr fom_exists(std::size_t var, FomPtr a);
FomPtr fom_forall(std::size_t var, FomPtr a);
FomPtr fom_majority(std::size_t var, FomPtr a);

// S-expression grammar: (leq t t), (bit t t), (wbit t), (and f f), (or f f),
// (not f), (E v f), (A v f), (M v f); terms 1, len, y1..ym.
FomPtr parse_fom(const std::string& text);
std::string print_fom(const FomPtr& f);

// Largest variable index used anywhere in the formula (0 if none).
std::size_t fom_max_var(const FomPtr& f);

// A word together with an assignment of 1-based positions to variables.
struct WordModel {
    std::string word;                    // non-empty 0/1 string
    std::vector<std::uint64_t> assign;   // assign[i-1] = value of y_i, in [1,|word|]
};

Nat eval_term(const FomTerm& t, const WordModel& model);
bool eval_formula(const FomPtr& f, const WordModel& model);

// Number encoders. code() produces the word 01 s_1 01 ... 01 s_n 01 where
// s_i doubles every binary digit of x_i; ext right-pads with zeros.
std::string code(const std::vector<Nat>& xs);
std::string ext(const std::string& alpha, std::uint64_t n);
std::string code_var_k(const std::vector<Nat>& xs, std::uint64_t k);
// Interleaves the padded code with the bits of y (lowest bit first);
// requires y < 2^{|code|^k}.
std::string code_alt_k(const std::vector<Nat>& xs, std::uint64_t k, const Nat& y);

// Value of a 0/1 word read most-significant-symbol first.
Nat word_value(const std::string& word);

// Numeric codec: lcode is the length of code_var_k, code_nk the value of
// that word, both computed arithmetically.
Nat lcode_nk(const std::vector<Nat>& xs, std::uint64_t k);
Nat code_nk(const std::vector<Nat>& xs, std::uint64_t k);

// Replaces every X<t> by the two-case re-coding disjunction so that the
// formula can be evaluated against the var-padded encoding instead of the
// bit-interleaved one. New variables are appended deterministically after m.
FomPtr rewrite_alt_to_var(const FomPtr& f, std::size_t m);
// Index of the distinguished bit-selector variable introduced by the rewrite.
std::size_t rewrite_y_index(std::size_t m);

// Compiled table: f(x, 2^l) packs the characteristic bit of the formula for
// every assignment (y_1..y_m) in [1,l]^m at bit position sum (y_i-1) l^i.
struct HFunctionTable {
    std::size_t arity = 0;
    std::function<Nat(const Nat& x, const Nat& z)> f;
};

HFunctionTable compile_fom(const FomPtr& phi, std::size_t m);

// Recovers the coded function from the compiled table of its bit-graph
// formula over (z_1..z_{m}, y): arity of `table` is m+1, y last.
Nat ffom_assemble(const HFunctionTable& table, const std::vector<Nat>& xs,
                  std::uint64_t k);

}  // namespace recfun
