#include "recfun/minsky.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace recfun {

namespace {

int move_of(const std::string& tok) {
    if (tok == "L") return -1;
    if (tok == "N") return 0;
    if (tok == "R") return 1;
    throw DomainError("machine file: bad move '" + tok + "' (want L/N/R)");
}

std::size_t state_of(const std::string& tok, std::size_t states) {
    std::size_t q = 0;
    try {
        q = std::stoull(tok);
    } catch (const std::exception&) {
        throw DomainError("machine file: bad state '" + tok + "'");
    }
    if (q >= states) throw DomainError("machine file: state " + tok + " out of range");
    return q;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        out.push_back(t);
    }
    return out;
}

Nat pow2n(const Nat& e) { return pow2(e); }

}  // namespace

MachineFile parse_machine_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t tapes = 0, states = 0;
    bool have_reduced = false, have_general = false;
    MinskyMachine gen;
    std::map<std::size_t, ReducedRow> rows;
    std::map<std::pair<std::vector<int>, std::size_t>, bool> seen;

    while (std::getline(in, line)) {
        auto tok = tokens_of(line);
        if (tok.empty()) continue;
        if (tok[0] == "tapes" || tok[0] == "states") {
            if (tok.size() != 2) throw DomainError("machine file: bad header line");
            std::size_t v = std::stoull(tok[1]);
            if (v == 0) throw DomainError("machine file: zero " + tok[0]);
            (tok[0] == "tapes" ? tapes : states) = v;
            continue;
        }
        if (tapes == 0 || states == 0)
            throw DomainError("machine file: commands before tapes/states headers");
        const std::size_t k = tapes;
        bool reduced_line = std::find(tok.begin(), tok.end(), ";") != tok.end();
        if (reduced_line) {
            // Q -> I ; D1..DK Q0 ; D1..DK Q1
            if (have_general) throw DomainError("machine file: mixed command kinds");
            have_reduced = true;
            if (tok.size() != 2 * (k + 1) + 5 || tok[1] != "->" || tok[3] != ";" ||
                tok[3 + k + 2] != ";")
                throw DomainError("machine file: bad reduced command line");
            ReducedRow row;
            std::size_t q = state_of(tok[0], states);
            if (q == 0) throw DomainError("machine file: command for final state");
            row.tape = std::stoull(tok[2]);
            if (row.tape < 1 || row.tape > k)
                throw DomainError("machine file: read tape out of range");
            for (std::size_t i = 0; i < k; ++i) row.moves0.push_back(move_of(tok[4 + i]));
            row.next0 = state_of(tok[4 + k], states);
            for (std::size_t i = 0; i < k; ++i)
                row.moves1.push_back(move_of(tok[6 + k + i]));
            row.next1 = state_of(tok[6 + 2 * k], states);
            if (rows.count(q)) throw DomainError("machine file: duplicate state row");
            rows[q] = row;
        } else {
            // E1..EK Q -> D1..DK Q'
            if (have_reduced) throw DomainError("machine file: mixed command kinds");
            have_general = true;
            if (tok.size() != 2 * (k + 1) + 1 || tok[k + 1] != "->")
                throw DomainError("machine file: bad command line");
            MinskyCommand c;
            for (std::size_t i = 0; i < k; ++i) {
                if (tok[i] != "0" && tok[i] != "1")
                    throw DomainError("machine file: read symbol must be 0/1");
                c.reads.push_back(tok[i] == "1" ? 1 : 0);
            }
            c.state = state_of(tok[k], states);
            if (c.state == 0) throw DomainError("machine file: command for final state");
            for (std::size_t i = 0; i < k; ++i) {
                c.moves.push_back(move_of(tok[k + 2 + i]));
                if (c.reads[i] == 1 && c.moves[i] == -1)
                    throw DomainError("machine file: left move on end cell");
            }
            c.next = state_of(tok[2 * k + 2], states);
            auto key = std::make_pair(c.reads, c.state);
            if (seen.count(key))
                throw DomainError("machine file: duplicate (reads, state) command");
            seen[key] = true;
            gen.commands.push_back(c);
        }
    }
    if (tapes == 0 || states == 0)
        throw DomainError("machine file: missing tapes/states headers");

    MachineFile out;
    if (have_reduced) {
        ReducedMachine r;
        r.tapes = tapes;
        r.states = states;
        for (std::size_t q = 1; q < states; ++q) {
            auto it = rows.find(q);
            if (it == rows.end())
                throw DomainError("machine file: missing row for state " + std::to_string(q));
            r.rows.push_back(it->second);
        }
        out.reduced = std::move(r);
    } else {
        gen.tapes = tapes;
        gen.states = states;
        out.general = std::move(gen);
    }
    return out;
}

Configuration con_step(const MinskyMachine& m, const Configuration& c) {
    if (c.state == 0) return c;
    for (const auto& cmd : m.commands) {
        if (cmd.state != c.state) continue;
        bool hit = true;
        for (std::size_t i = 0; i < m.tapes; ++i)
            if ((c.heads[i] == 0 ? 1 : 0) != cmd.reads[i]) {
                hit = false;
                break;
            }
        if (!hit) continue;
        Configuration n = c;
        for (std::size_t i = 0; i < m.tapes; ++i) {
            if (cmd.moves[i] == -1) {
                if (n.heads[i] == 0) throw DomainError("minsky: head left of cell 0");
                n.heads[i] -= 1;
            } else if (cmd.moves[i] == 1) {
                n.heads[i] += 1;
            }
        }
        n.state = cmd.next;
        return n;
    }
    throw DomainError("minsky: stuck, no command for (reads, state)");
}

Configuration con_step(const ReducedMachine& m, const Configuration& c) {
    if (c.state == 0) return c;
    if (c.state >= m.states) throw DomainError("minsky: state out of range");
    const ReducedRow& row = m.rows[c.state - 1];
    bool end = c.heads[row.tape - 1] == 0;
    const auto& moves = end ? row.moves1 : row.moves0;
    Configuration n = c;
    for (std::size_t i = 0; i < m.tapes; ++i) {
        if (moves[i] == -1) {
            if (n.heads[i] == 0) throw DomainError("minsky: head left of cell 0");
            n.heads[i] -= 1;
        } else if (moves[i] == 1) {
            n.heads[i] += 1;
        }
    }
    n.state = end ? row.next1 : row.next0;
    return n;
}

namespace {

template <class Machine>
RunResult run_impl(const Machine& m, const std::vector<Nat>& input,
                   const Nat& max_steps) {
    if (input.size() > m.tapes) throw DomainError("minsky: more inputs than tapes");
    if (m.states < 2) throw DomainError("minsky: no initial state");
    Configuration c;
    c.heads = input;
    c.heads.resize(m.tapes, Nat(0));
    c.state = 1;
    Nat steps = 0;
    while (c.state != 0) {
        if (steps >= max_steps) throw BudgetError("minsky: step budget exhausted");
        c = con_step(m, c);
        steps += 1;
    }
    return {c.heads[0], steps};
}

}  // namespace

RunResult run(const MinskyMachine& m, const std::vector<Nat>& input,
              const Nat& max_steps) {
    return run_impl(m, input, max_steps);
}

RunResult run(const ReducedMachine& m, const std::vector<Nat>& input,
              const Nat& max_steps) {
    return run_impl(m, input, max_steps);
}

// Reduction: original state q becomes sub-states (q, j, prefix) that read the
// tapes one by one, remembering the bits seen so far. Sub-state numbering
// id = loc * s + q with loc = 2^{j-1} - 1 + prefix keeps 0 final and 1
// initial; every original step expands to exactly k reduced steps.
ReducedMachine reduce(const MinskyMachine& m) {
    const std::size_t k = m.tapes, s = m.states;
    const std::size_t locs = (std::size_t(1) << k) - 1;
    ReducedMachine r;
    r.tapes = k;
    r.states = s * locs;

    std::map<std::pair<std::vector<int>, std::size_t>, const MinskyCommand*> table;
    for (const auto& c : m.commands) table[{c.reads, c.state}] = &c;

    for (std::size_t id = 1; id < r.states; ++id) {
        std::size_t q = id % s, loc = id / s;
        // loc = 2^{j-1} - 1 + prefix with prefix < 2^{j-1}, so j is the bit
        // length of loc + 1.
        std::size_t j = 0;
        for (std::size_t v = loc + 1; v != 0; v >>= 1) ++j;
        std::size_t prefix = loc + 1 - (std::size_t(1) << (j - 1));

        ReducedRow row;
        row.moves0.assign(k, 0);
        row.moves1.assign(k, 0);
        if (q == 0) {  // unreachable shadow of the final state: trap
            row.tape = 1;
            row.next0 = row.next1 = id;
            r.rows.push_back(row);
            continue;
        }
        row.tape = j;
        for (int e = 0; e <= 1; ++e) {
            std::size_t pref2 = prefix | (std::size_t(e) << (j - 1));
            std::size_t next;
            std::vector<int> moves(k, 0);
            if (j < k) {
                std::size_t loc2 = ((std::size_t(1) << j) - 1) + pref2;
                next = loc2 * s + q;
            } else {
                std::vector<int> reads(k);
                for (std::size_t i = 0; i < k; ++i)
                    reads[i] = (pref2 >> i) & 1 ? 1 : 0;
                auto it = table.find({reads, q});
                if (it == table.end()) {
                    next = id;  // stuck in the original machine: loop trap
                } else {
                    moves = it->second->moves;
                    next = it->second->next;
                }
            }
            if (e == 0) {
                row.moves0 = moves;
                row.next0 = next;
            } else {
                row.moves1 = moves;
                row.next1 = next;
            }
        }
        r.rows.push_back(row);
    }
    return r;
}

Configuration apply_simple(const SimpleVectorFn& f, const Configuration& c) {
    if (c.state != f.guard_state) return c;
    if (f.guard_tape != 0 && c.heads[f.guard_tape - 1] != 0) return c;
    Configuration n = c;
    for (std::size_t i = 0; i < f.shifts.size(); ++i) {
        long a = f.shifts[i];
        if (a < 0) {
            Nat d(static_cast<unsigned long>(-a));
            if (n.heads[i] < d) throw DomainError("simple fn: head below cell 0");
            n.heads[i] -= d;
        } else {
            n.heads[i] += static_cast<unsigned long>(a);
        }
    }
    n.state = f.next_state;
    return n;
}

std::size_t decompose_state_count(const ReducedMachine& m) { return 2 * m.states; }

// Three sweeps over the doubled state space: (A) the end-cell branch moves
// matching states to shadow targets, (B) the remaining states take the
// other branch unconditionally, (C) shadows are unmarked. Returned with the
// last-applied function first.
std::vector<SimpleVectorFn> decompose(const ReducedMachine& m) {
    const std::size_t k = m.tapes, s = m.states;
    std::vector<SimpleVectorFn> exec;
    if (s == 1) return exec;
    for (std::size_t q = 1; q < s; ++q) {
        const ReducedRow& row = m.rows[q - 1];
        SimpleVectorFn f;
        f.shifts.assign(row.moves1.begin(), row.moves1.end());
        f.guard_tape = row.tape;
        f.guard_state = q;
        f.next_state = row.next1 + s;
        exec.push_back(f);
    }
    for (std::size_t q = 1; q < s; ++q) {
        const ReducedRow& row = m.rows[q - 1];
        SimpleVectorFn f;
        f.shifts.assign(row.moves0.begin(), row.moves0.end());
        f.guard_tape = 0;
        f.guard_state = q;
        f.next_state = row.next0 + s;
        exec.push_back(f);
    }
    for (std::size_t q = 0; q < s; ++q) {
        SimpleVectorFn f;
        f.shifts.assign(k, 0);
        f.guard_tape = 0;
        f.guard_state = s + q;
        f.next_state = q;
        exec.push_back(f);
    }
    std::reverse(exec.begin(), exec.end());
    return exec;
}

Nat config_code(const Configuration& c, const ConfigCodeParams& p) {
    Nat lim = pow2n(Nat(static_cast<unsigned long>(p.l)));
    Nat out = 0;
    for (std::size_t i = 0; i < c.heads.size(); ++i) {
        if (c.heads[i] >= lim) throw DomainError("config_code: head >= 2^l");
        out += c.heads[i] << static_cast<unsigned long>(p.l * i);
    }
    Nat q(static_cast<unsigned long>(c.state));
    if (q >= pow2n(Nat(static_cast<unsigned long>(p.w))))
        throw DomainError("config_code: state >= 2^w");
    out += q << static_cast<unsigned long>(p.l * c.heads.size());
    return out;
}

Configuration config_decode(const Nat& x, std::size_t k, const ConfigCodeParams& p) {
    Configuration c;
    Nat lim = pow2n(Nat(static_cast<unsigned long>(p.l)));
    for (std::size_t i = 0; i < k; ++i)
        c.heads.push_back(rm(x >> static_cast<unsigned long>(p.l * i), lim));
    Nat q = rm(x >> static_cast<unsigned long>(p.l * k),
               pow2n(Nat(static_cast<unsigned long>(p.w))));
    c.state = to_u64(q, "config_decode state");
    return c;
}

Nat apply_simplistic(const SimplisticFn& f, const Nat& x) {
    return band(x, f.u) == 0 ? Nat(x + f.v) : x;
}

std::array<SimplisticFn, 3> simple_to_simplistic(const SimpleVectorFn& f,
                                                 const ConfigCodeParams& p,
                                                 std::size_t state_count) {
    const std::size_t k = f.shifts.size();
    Nat pw = pow2n(Nat(static_cast<unsigned long>(p.w)));
    Nat pl = pow2n(Nat(static_cast<unsigned long>(p.l)));
    Nat plk = pow2n(Nat(static_cast<unsigned long>(p.l)) * Nat(static_cast<unsigned long>(k)));
    if (Nat(static_cast<unsigned long>(state_count)) > pw)
        throw DomainError("simple_to_simplistic: 2^w < state count");
    if (f.guard_state >= state_count || f.next_state >= state_count)
        throw DomainError("simple_to_simplistic: state out of range");
    Nat qpp(static_cast<unsigned long>(f.guard_state));
    Nat qp(static_cast<unsigned long>(f.next_state));

    SimplisticFn f1{Nat(0), (pw - qpp) * plk};
    Nat u2 = (pw - 1) * plk;
    if (f.guard_tape > 0)
        u2 += (pl - 1) * pow2n(Nat(static_cast<unsigned long>(p.l)) *
                               Nat(static_cast<unsigned long>(f.guard_tape - 1)));
    Nat v2 = plk * pw + (pw + qp - qpp) * plk;
    for (std::size_t j = 0; j < k; ++j) {
        Nat field = pow2n(Nat(static_cast<unsigned long>(p.l)) *
                          Nat(static_cast<unsigned long>(j)));
        if (f.shifts[j] >= 0)
            v2 += Nat(static_cast<unsigned long>(f.shifts[j])) * field;
        else
            v2 -= Nat(static_cast<unsigned long>(-f.shifts[j])) * field;
    }
    if (v2 < 0) throw DomainError("simple_to_simplistic: negative v2");
    SimplisticFn f2{u2, v2};
    SimplisticFn f3{Nat(0), qpp * plk};
    return {f1, f2, f3};
}

Nat cyc_r(const Nat& x, const Nat& y) { return rot_r(x, y); }

Nat q_eval(const QParams& p) {
    std::uint64_t t = to_u64(p.t, "q_eval t");
    if (len(p.x + 2 * p.p2 * p.t) > Nat(static_cast<unsigned long>(bit_budget())))
        throw BudgetError("q_eval: value bound exceeds bit budget");
    Nat q = p.x;
    for (std::uint64_t i = 0; i < t; ++i) {
        Nat step(static_cast<unsigned long>(i));
        if (band(q, rot_r(p.p1, p.c1 * step)) != 0) continue;
        q += rot_r(p.p2, p.c2 * step);
    }
    return q;
}

bool q_prop_check(const std::vector<Nat>& u, const std::vector<Nat>& v,
                  const QParams& p) {
    const std::size_t r = u.size();
    if (r < 1 || v.size() != r)
        throw DomainError("q_prop: need matching u, v lists with r >= 1");
    auto fail = [](int clause) {
        throw DomainError("q_prop: hypothesis (" + std::to_string(clause) +
                          ") violated");
    };
    Nat pc1 = pow2(p.c1), pc2 = pow2(p.c2);
    if (p.t < 1) fail(1);
    if (u[r - 1] != pc1 - 1) fail(2);
    if (p.c2 == 0 || v[r - 1] < pc2 / 2 || v[r - 1] >= pc2) fail(3);
    Nat p1 = 0, p2 = 0;
    for (std::size_t i = r; i-- > 0;) {
        p1 = p1 * pc1 + u[i];
        p2 = p2 * pc2 + v[i];
    }
    if (p.p1 != p1) fail(4);
    if (p.p2 != p2) fail(5);
    if (p.x + 2 * p.p2 * p.t >= pc1) fail(6);
    Nat vmax = 0;
    for (std::size_t i = 0; i + 1 < r; ++i) vmax = std::max(vmax, v[i]);
    if (p.x + p.t * vmax >= pc2) fail(7);
    for (std::size_t i = 0; i + 1 < r; ++i)
        if (u[i] >= pc2) fail(8);
    if (p.c1 < p.c2) fail(9);
    if (p.x < 1) fail(10);

    Nat rhs = p.x;
    std::uint64_t t = to_u64(p.t, "q_prop t");
    for (std::uint64_t i = 0; i < t; ++i) {
        std::size_t j = i % r;
        if (j == r - 1) continue;
        rhs = apply_simplistic({u[j], v[j]}, rhs);
    }
    return rm(q_eval(p), pc2) == rhs;
}

CompiledQ compile(const MinskyMachine& m, const std::vector<Nat>& input,
                  const Poly& time_poly) {
    const std::size_t k = m.tapes;
    if (input.size() != time_poly.arity)
        throw DomainError("compile: time_poly arity mismatch");
    Nat t_bound = time_poly.eval(input);
    if (t_bound < 1) throw DomainError("compile: time_poly must be >= 1");
    try {
        run(m, input, t_bound);
    } catch (const BudgetError&) {
        throw DomainError("compile: time_poly insufficient for this input");
    }

    ReducedMachine red = reduce(m);
    Nat t_con = Nat(static_cast<unsigned long>(k)) * t_bound + 1;
    std::vector<SimpleVectorFn> simples = decompose(red);
    const std::size_t s_dec = decompose_state_count(red);
    std::uint64_t w = 0;
    while ((std::size_t(1) << w) < s_dec) ++w;

    Nat sum_y = 0;
    for (const auto& y : input) sum_y += y;
    Nat m_val = t_con + sum_y;
    Nat l = len(m_val);
    std::uint64_t lu = to_u64(l, "compile l");
    ConfigCodeParams cp{w, lu};

    std::vector<Nat> us, vs;
    for (auto it = simples.rbegin(); it != simples.rend(); ++it) {
        auto triple = simple_to_simplistic(*it, cp, s_dec);
        for (const auto& f : triple) {
            us.push_back(f.u);
            vs.push_back(f.v);
        }
    }
    const std::size_t rp = us.size();

    Nat x = (pow2(Nat(static_cast<unsigned long>(w))) + 1) *
            pow2(l * Nat(static_cast<unsigned long>(k)));
    for (std::size_t i = 0; i < input.size(); ++i)
        x += input[i] * pow2(l * Nat(static_cast<unsigned long>(i)));

    Nat t_total = t_con * Nat(static_cast<unsigned long>(rp + 1));
    Nat su = 0, sv = 0;
    for (const auto& e : us) su += e;
    for (const auto& e : vs) sv += e;
    Nat c2 = len(x + su + t_total * sv);
    vs.push_back(pow2(c2 - 1));
    Nat pc2 = pow2(c2);
    Nat p2 = 0;
    for (std::size_t i = vs.size(); i-- > 0;) p2 = p2 * pc2 + vs[i];
    Nat c1 = len(x + 2 * t_total * p2);
    us.push_back(pow2(c1) - 1);
    Nat pc1 = pow2(c1);
    Nat p1 = 0;
    for (std::size_t i = us.size(); i-- > 0;) p1 = p1 * pc1 + us[i];

    CompiledQ out;
    out.params = {x, p1, p2, c1, c2, t_total};
    out.u = std::move(us);
    out.v = std::move(vs);
    out.w = w;
    out.l = l;
    out.c2 = c2;
    return out;
}

Nat extract(const CompiledQ& c, const Nat& q_value) {
    return rm(rm(q_value, pow2(c.c2)), pow2(c.l));
}

Poly parse_time_poly(const std::string& text, std::size_t arity) {
    Poly p;
    p.arity = arity;
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw DomainError("time poly: empty expression");
    std::size_t pos = 0;
    while (pos < s.size()) {
        PolyTerm term;
        term.coef = 1;
        term.exps.assign(arity, 0);
        bool saw_coef = false, saw_var = false;
        std::size_t start = pos;
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            std::string num;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                num += s[pos++];
            term.coef = Nat(num);
            saw_coef = true;
        }
        while (pos < s.size() && (s[pos] == 'x' || s[pos] == '*')) {
            if (s[pos] == '*') {
                ++pos;
                continue;
            }
            ++pos;  // 'x'
            std::size_t idx = 1;
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::string num;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                    num += s[pos++];
                idx = std::stoull(num);
            }
            if (idx < 1 || idx > arity)
                throw DomainError("time poly: variable x" + std::to_string(idx) +
                                  " out of range");
            std::uint64_t e = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                std::string num;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                    num += s[pos++];
                if (num.empty()) throw DomainError("time poly: missing exponent");
                e = std::stoull(num);
            }
            term.exps[idx - 1] += e;
            saw_var = true;
        }
        if (pos == start || (!saw_coef && !saw_var))
            throw DomainError("time poly: parse error at '" + s.substr(pos) + "'");
        p.terms.push_back(std::move(term));
        if (pos < s.size()) {
            if (s[pos] != '+')
                throw DomainError("time poly: expected '+' at '" + s.substr(pos) + "'");
            ++pos;
            if (pos == s.size()) throw DomainError("time poly: trailing '+'");
        }
    }
    return p;
}

}  // namespace recfun
