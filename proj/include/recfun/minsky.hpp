#pragma once

#include "recfun/genfn.hpp"
#include "recfun/nat.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace recfun {

// Multitape non-erasing counter machine: state 1 initial, 0 final; a command
// fires when the read vector e (e_i = 1 iff head i sits on cell 0) and the
// state match; e_i = 1 forbids moving head i left.
struct MinskyCommand {
    std::vector<int> reads;   // e in {0,1}^k
    std::size_t state = 1;    // q != 0
    std::vector<int> moves;   // d in {-1,0,1}^k
    std::size_t next = 0;     // q'
};

struct MinskyMachine {
    std::size_t tapes = 1;
    std::size_t states = 2;
    std::vector<MinskyCommand> commands;
};

// Reduced machine: each nonzero state reads a single tape and branches on
// the symbol; exactly states-1 rows, rows[q-1] belongs to state q.
struct ReducedRow {
    std::size_t tape = 1;          // 1-based read tape
    std::vector<int> moves0;       // branch e = 0 (head off cell 0)
    std::size_t next0 = 0;
    std::vector<int> moves1;       // branch e = 1 (head on cell 0)
    std::size_t next1 = 0;
};

struct ReducedMachine {
    std::size_t tapes = 1;
    std::size_t states = 2;
    std::vector<ReducedRow> rows;
};

struct Configuration {
    std::vector<Nat> heads;
    std::size_t state = 1;
};

// Line-based machine file: '#' comments, `tapes K`, `states S`, then either
// general commands `E1..EK Q -> D1..DK Q'` or reduced rows
// `Q -> I ; D1..DK Q0 ; D1..DK Q1` with D in {L,N,R}.
struct MachineFile {
    std::optional<MinskyMachine> general;
    std::optional<ReducedMachine> reduced;
};

MachineFile parse_machine_file(const std::string& text);

struct RunResult {
    Nat output;  // head-1 position at the final state
    Nat steps;
};

// One-step map Con: final configurations are fixpoints; a nonfinal
// configuration with no matching command is a stuck error.
Configuration con_step(const MinskyMachine& m, const Configuration& c);
Configuration con_step(const ReducedMachine& m, const Configuration& c);

RunResult run(const MinskyMachine& m, const std::vector<Nat>& input,
              const Nat& max_steps);
RunResult run(const ReducedMachine& m, const std::vector<Nat>& input,
              const Nat& max_steps);

// Equivalent reduced machine; every original step becomes exactly k reduced
// steps (states remember the partially read vector).
ReducedMachine reduce(const MinskyMachine& m);

// Guarded vector shift: adds `shifts` and switches to next_state when
// heads[guard_tape-1] = 0 (guard_tape = 0 means always) and state =
// guard_state; identity otherwise.
struct SimpleVectorFn {
    std::vector<long> shifts;
    std::size_t guard_tape = 0;
    std::size_t guard_state = 0;
    std::size_t next_state = 0;
};

Configuration apply_simple(const SimpleVectorFn& f, const Configuration& c);

// Simple vector functions whose right-to-left composition (last element
// applied first) is the one-step map of m, over a doubled state space
// [0, 2*states): shadow states mark already-stepped configurations.
std::vector<SimpleVectorFn> decompose(const ReducedMachine& m);
std::size_t decompose_state_count(const ReducedMachine& m);

struct ConfigCodeParams {
    std::uint64_t w = 1;  // state field width, 2^w >= state count
    std::uint64_t l = 1;  // head field width
};

// Canonical minimal code: head i in bits [l(i-1), l*i), state in bits
// [kl, kl+w). Decoding ignores bits at kl+w and above (codes are not
// unique); encoding checks heads < 2^l and state < 2^w.
Nat config_code(const Configuration& c, const ConfigCodeParams& p);
Configuration config_decode(const Nat& x, std::size_t k, const ConfigCodeParams& p);

// f(x) = x + v if x & u = 0, else x.
struct SimplisticFn {
    Nat u, v;
};

Nat apply_simplistic(const SimplisticFn& f, const Nat& x);

// The three simplistic functions whose composition (first element applied
// first) maps any (w;l)-code of C to a (w;l)-code of F(C), provided all head
// positions before and after stay below 2^l. state_count validates 2^w.
std::array<SimplisticFn, 3> simple_to_simplistic(const SimpleVectorFn& f,
                                                 const ConfigCodeParams& p,
                                                 std::size_t state_count);

struct QParams {
    Nat x, p1, p2, c1, c2, t;
};

// R(x, y): cyclic right shift of the binary notation of x by y digits.
Nat cyc_r(const Nat& x, const Nat& y);

// The bounded recursion: Q_0 = x; Q_{t+1} = Q_t if Q_t & R(p1, c1*t) != 0,
// else Q_t + R(p2, c2*t).
Nat q_eval(const QParams& p);

// Validates the ten hypotheses relating (u, v) to p (DomainError naming the
// first violated clause, numbered 1..10 in statement order), then checks
// h_{c2}(q_eval) against the explicit cyclic composition of length t.
bool q_prop_check(const std::vector<Nat>& u, const std::vector<Nat>& v,
                  const QParams& p);

struct CompiledQ {
    QParams params;
    std::vector<Nat> u, v;  // simplistic constants, cycle order, u/v[r-1] last
    std::uint64_t w = 1;
    Nat l;   // head field width 2^l bound
    Nat c2;
};

// Realizes f(input) = rm(rm(Q(params), 2^c2), 2^l): reduces m, decomposes
// the step map, codes the start configuration, and solves for the Q
// parameters. time_poly must bound the step count of m on this input
// (checked by simulation) and be >= 1.
CompiledQ compile(const MinskyMachine& m, const std::vector<Nat>& input,
                  const Poly& time_poly);

Nat extract(const CompiledQ& c, const Nat& q_value);

// Mini polynomial grammar for time bounds: terms joined by '+', each term
// an optional coefficient times factors xN or xN^E ('x' alone = x1), e.g.
// "x+2", "x2+2", "3x1x2^2+x1+5".
Poly parse_time_poly(const std::string& text, std::size_t arity);

}  // namespace recfun
