#include "recfun/fom.hpp"

#include "recfun/formula.hpp"  // ParseError

#include <cctype>
#include <sstream>

namespace recfun {

namespace {

FomPtr node(FomFormula f) { return std::make_shared<const FomFormula>(std::move(f)); }

Nat nat_pow(const Nat& base, std::uint64_t e) {
    Nat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

FomPtr fom_leq(FomTerm t1, FomTerm t2) {
    return node({FomFormula::Kind::Leq, t1, t2, nullptr, nullptr, 0});
}
FomPtr fom_bit(FomTerm t1, FomTerm t2) {
    return node({FomFormula::Kind::Bit, t1, t2, nullptr, nullptr, 0});
}
FomPtr fom_wbit(FomTerm t1) {
    return node({FomFormula::Kind::WordBit, t1, {}, nullptr, nullptr, 0});
}
FomPtr fom_and(FomPtr a, FomPtr b) {
    return node({FomFormula::Kind::And, {}, {}, std::move(a), std::move(b), 0});
}
FomPtr fom_or(FomPtr a, FomPtr b) {
    return node({FomFormula::Kind::Or, {}, {}, std::move(a), std::move(b), 0});
}
FomPtr fom_not(FomPtr a) {
    return node({FomFormula::Kind::Not, {}, {}, std::move(a), nullptr, 0});
}
FomPtr fom_exists(std::size_t var, FomPtr a) {
    return node({FomFormula::Kind::Exists, {}, {}, std::move(a), nullptr, var});
}
FomPtr fom_forall(std::size_t var, FomPtr a) {
    return node({FomFormula::Kind::Forall, {}, {}, std::move(a), nullptr, var});
}
FomPtr fom_majority(std::size_t var, FomPtr a) {
    return node({FomFormula::Kind::Majority, {}, {}, std::move(a), nullptr, var});
}

// ---------------------------------------------------------------- parsing

namespace {

struct FomParser {
    std::vector<std::pair<std::string, std::size_t>> toks;
    std::size_t pos = 0;

    explicit FomParser(const std::string& text) {
        std::size_t i = 0;
        while (i < text.size()) {
            char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            if (c == '(' || c == ')') { toks.push_back({std::string(1, c), i}); ++i; continue; }
            std::size_t j = i;
            while (j < text.size() && text[j] != '(' && text[j] != ')' &&
                   !std::isspace(static_cast<unsigned char>(text[j])))
                ++j;
            toks.push_back({text.substr(i, j - i), i});
            i = j;
        }
    }

    const std::pair<std::string, std::size_t>& peek() {
        if (pos >= toks.size()) throw ParseError("unexpected end of formula", toks.empty() ? 0 : toks.back().second);
        return toks[pos];
    }
    std::pair<std::string, std::size_t> next() { auto t = peek(); ++pos; return t; }
    void expect(const std::string& s) {
        auto t = next();
        if (t.first != s) throw ParseError("expected '" + s + "', got '" + t.first + "'", t.second);
    }

    FomTerm term() {
        auto t = next();
        if (t.first == "1") return {FomTerm::Kind::One, 0};
        if (t.first == "len") return {FomTerm::Kind::WordLen, 0};
        if (t.first.size() >= 2 && t.first[0] == 'y') {
            std::size_t idx = 0;
            for (std::size_t i = 1; i < t.first.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(t.first[i])))
                    throw ParseError("bad variable '" + t.first + "'", t.second);
                idx = idx * 10 + (t.first[i] - '0');
            }
            if (idx == 0) throw ParseError("variable index must be >= 1", t.second);
            return {FomTerm::Kind::Var, idx};
        }
        throw ParseError("bad term '" + t.first + "'", t.second);
    }

    std::size_t var_index() {
        auto t = term();
        if (t.kind != FomTerm::Kind::Var)
            throw ParseError("quantifier needs a variable", toks[pos - 1].second);
        return t.index;
    }

    FomPtr formula() {
        expect("(");
        auto head = next();
        FomPtr out;
        if (head.first == "leq") { auto a = term(); auto b = term(); out = fom_leq(a, b); }
        else if (head.first == "bit") { auto a = term(); auto b = term(); out = fom_bit(a, b); }
        else if (head.first == "wbit") { out = fom_wbit(term()); }
        else if (head.first == "and") { auto a = formula(); out = fom_and(a, formula()); }
        else if (head.first == "or") { auto a = formula(); out = fom_or(a, formula()); }
        else if (head.first == "not") { out = fom_not(formula()); }
        else if (head.first == "E") { auto v = var_index(); out = fom_exists(v, formula()); }
        else if (head.first == "A") { auto v = var_index(); out = fom_forall(v, formula()); }
        else if (head.first == "M") { auto v = var_index(); out = fom_majority(v, formula()); }
        else throw ParseError("unknown operator '" + head.first + "'", head.second);
        expect(")");
        return out;
    }
};

std::string print_term(const FomTerm& t) {
    switch (t.kind) {
        case FomTerm::Kind::One: return "1";
        case FomTerm::Kind::WordLen: return "len";
        case FomTerm::Kind::Var: return "y" + std::to_string(t.index);
    }
    return "?";
}

}  // namespace

FomPtr parse_fom(const std::string& text) {
    FomParser p(text);
    FomPtr f = p.formula();
    if (p.pos != p.toks.size())
        throw ParseError("trailing input", p.toks[p.pos].second);
    return f;
}

std::string print_fom(const FomPtr& f) {
    using K = FomFormula::Kind;
    switch (f->kind) {
        case K::Leq: return "(leq " + print_term(f->t1) + " " + print_term(f->t2) + ")";
        case K::Bit: return "(bit " + print_term(f->t1) + " " + print_term(f->t2) + ")";
        case K::WordBit: return "(wbit " + print_term(f->t1) + ")";
        case K::And: return "(and " + print_fom(f->a) + " " + print_fom(f->b) + ")";
        case K::Or: return "(or " + print_fom(f->a) + " " + print_fom(f->b) + ")";
        case K::Not: return "(not " + print_fom(f->a) + ")";
        case K::Exists: return "(E y" + std::to_string(f->var) + " " + print_fom(f->a) + ")";
        case K::Forall: return "(A y" + std::to_string(f->var) + " " + print_fom(f->a) + ")";
        case K::Majority: return "(M y" + std::to_string(f->var) + " " + print_fom(f->a) + ")";
    }
    return "?";
}

std::size_t fom_max_var(const FomPtr& f) {
    std::size_t m = 0;
    if (f->t1.kind == FomTerm::Kind::Var) m = std::max(m, f->t1.index);
    if (f->t2.kind == FomTerm::Kind::Var) m = std::max(m, f->t2.index);
    m = std::max(m, f->var);
    if (f->a) m = std::max(m, fom_max_var(f->a));
    if (f->b) m = std::max(m, fom_max_var(f->b));
    return m;
}

// ------------------------------------------------------------- evaluation

Nat eval_term(const FomTerm& t, const WordModel& model) {
    switch (t.kind) {
        case FomTerm::Kind::One: return 1;
        case FomTerm::Kind::WordLen: return Nat(static_cast<unsigned long>(model.word.size()));
        case FomTerm::Kind::Var:
            if (t.index == 0 || t.index > model.assign.size() || model.assign[t.index - 1] == 0)
                throw DomainError("unassigned variable y" + std::to_string(t.index));
            return Nat(static_cast<unsigned long>(model.assign[t.index - 1]));
    }
    throw std::logic_error("bad term");
}

namespace {

bool eval_rec(const FomPtr& f, WordModel& model) {
    using K = FomFormula::Kind;
    const std::uint64_t len = model.word.size();
    switch (f->kind) {
        case K::Leq:
            return eval_term(f->t1, model) <= eval_term(f->t2, model);
        case K::Bit: {
            Nat h1 = eval_term(f->t1, model);
            Nat h2 = eval_term(f->t2, model);
            return bit_get(h1, monus(h2, 1)) == 1;
        }
        case K::WordBit: {
            std::uint64_t p = to_u64(eval_term(f->t1, model), "word position");
            return model.word.at(p - 1) == '1';
        }
        case K::And: return eval_rec(f->a, model) && eval_rec(f->b, model);
        case K::Or: return eval_rec(f->a, model) || eval_rec(f->b, model);
        case K::Not: return !eval_rec(f->a, model);
        case K::Exists:
        case K::Forall:
        case K::Majority: {
            if (f->var == 0 || f->var > model.assign.size())
                throw DomainError("bad bound variable");
            std::uint64_t saved = model.assign[f->var - 1];
            std::uint64_t hits = 0;
            for (std::uint64_t v = 1; v <= len; ++v) {
                model.assign[f->var - 1] = v;
                if (eval_rec(f->a, model)) ++hits;
            }
            model.assign[f->var - 1] = saved;
            if (f->kind == K::Exists) return hits > 0;
            if (f->kind == K::Forall) return hits == len;
            return 2 * hits > len;  // strictly more than |X|/2
        }
    }
    throw std::logic_error("bad formula");
}

}  // namespace

bool eval_formula(const FomPtr& f, const WordModel& model) {
    if (model.word.empty()) throw DomainError("empty word");
    for (char c : model.word)
        if (c != '0' && c != '1') throw DomainError("word must be 0/1");
    WordModel local = model;
    std::size_t need = fom_max_var(f);
    if (local.assign.size() < need) local.assign.resize(need, 0);
    for (std::uint64_t v : model.assign)
        if (v > model.word.size()) throw DomainError("assignment out of range");
    return eval_rec(f, local);
}

// --------------------------------------------------------------- encoders

std::string code(const std::vector<Nat>& xs) {
    std::string out;
    for (const auto& x : xs) {
        out += "01";
        if (x != 0) {
            std::string bin = x.get_str(2);
            for (char c : bin) out += (c == '1') ? "11" : "00";
        }
    }
    out += "01";
    return out;
}

std::string ext(const std::string& alpha, std::uint64_t n) {
    std::string out = alpha;
    if (out.size() < n) out.append(n - out.size(), '0');
    return out;
}

namespace {

std::uint64_t code_pow(const std::string& base_code, std::uint64_t k) {
    Nat p = nat_pow(Nat(static_cast<unsigned long>(base_code.size())), k);
    if (p > bit_budget()) throw BudgetError("code length exceeds bit budget");
    return to_u64(p, "code length");
}

}  // namespace

std::string code_var_k(const std::vector<Nat>& xs, std::uint64_t k) {
    std::string c = code(xs);
    return ext(c, 2 * code_pow(c, k));
}

std::string code_alt_k(const std::vector<Nat>& xs, std::uint64_t k, const Nat& y) {
    std::string c = code(xs);
    std::uint64_t half = code_pow(c, k);
    if (y >= pow2(Nat(half))) throw DomainError("code_alt_k: y out of range");
    std::string alpha = ext(c, half);
    std::string out;
    out.reserve(2 * half);
    for (std::uint64_t t = 0; t < half; ++t) {
        out += alpha[t];
        out += bit_get(y, t) ? '1' : '0';
    }
    return out;
}

Nat word_value(const std::string& word) {
    Nat v = 0;
    for (char c : word) {
        v <<= 1;
        if (c == '1') v += 1;
    }
    return v;
}

Nat lcode_nk(const std::vector<Nat>& xs, std::uint64_t k) {
    Nat s = 0;
    for (const auto& x : xs) s += len(x);
    s += xs.size() + 1;
    return pow2(Nat(k + 1)) * nat_pow(s, k);
}

Nat code_nk(const std::vector<Nat>& xs, std::uint64_t k) {
    const Nat l = lcode_nk(xs, k);
    if (l > bit_budget()) throw BudgetError("code_nk exceeds bit budget");
    // Doubles every binary digit of x: a_1..a_r becomes a_1 a_1 .. a_r a_r.
    auto dbl = [](const Nat& x) {
        std::uint64_t r = to_u64(log2_floor(x) + 1, "digit count");
        return Nat(3 * bv::incr(x, r, 2));
    };
    Nat acc = 0;
    Nat prefix = 0;  // 2i + l_1 + ... + l_{i-1} for the current i
    for (std::size_t i = 1; i <= xs.size(); ++i) {
        Nat li = 2 * len(xs[i - 1]);
        acc += pow2(monus(l, prefix + 2 * Nat(static_cast<unsigned long>(i))));
        acc += pow2(monus(l, prefix + 2 * Nat(static_cast<unsigned long>(i)) + li)) * dbl(xs[i - 1]);
        prefix += li;
    }
    // trailing "01" separator
    acc += pow2(monus(l, prefix + 2 * Nat(static_cast<unsigned long>(xs.size() + 1))));
    return acc;
}

// ---------------------------------------------------------------- rewrite

namespace {

FomTerm tvar(std::size_t i) { return {FomTerm::Kind::Var, i}; }

FomPtr f_geq(FomTerm a, FomTerm b) { return fom_leq(b, a); }
FomPtr f_gt(FomTerm a, FomTerm b) {
    return fom_and(f_geq(a, b), fom_not(f_geq(b, a)));
}
// y = x + 1
FomPtr f_eq_succ(FomTerm y, FomTerm x, std::size_t spare) {
    return fom_and(f_gt(y, x),
                   fom_not(fom_exists(spare, fom_and(f_gt(y, tvar(spare)),
                                                     f_gt(tvar(spare), x)))));
}
FomPtr f_iff(FomPtr p, FomPtr q) {
    return fom_and(fom_or(fom_not(p), q), fom_or(fom_not(q), p));
}
// y = 2x, via bitwise shift: u = v+1 -> (BIT(y,u) <-> BIT(x,v)), no low bit
// in y, no overflow in x.
FomPtr f_eq_dbl(FomTerm y, FomTerm x, std::size_t sa, std::size_t sb, std::size_t sc) {
    FomPtr shift = fom_forall(
        sa, fom_forall(sb, fom_or(fom_not(f_eq_succ(tvar(sa), tvar(sb), sc)),
                                  f_iff(fom_bit(y, tvar(sa)), fom_bit(x, tvar(sb))))));
    FomPtr lo = fom_not(fom_bit(y, {FomTerm::Kind::One, 0}));
    FomPtr hi = fom_not(fom_bit(x, {FomTerm::Kind::WordLen, 0}));
    return fom_and(fom_and(shift, lo), hi);
}

struct RewriteVars {
    std::size_t u, v, w, y, s1, s2, s3;
};

FomPtr rewrite_rec(const FomPtr& f, const RewriteVars& rv) {
    using K = FomFormula::Kind;
    switch (f->kind) {
        case K::WordBit: {
            FomTerm t = f->t1;
            // even position: bit (t/2 - 1) of the selector value
            FomPtr even = fom_exists(
                rv.u, fom_and(f_eq_dbl(t, tvar(rv.u), rv.s1, rv.s2, rv.s3),
                              fom_bit(tvar(rv.y), tvar(rv.u))));
            // odd position: symbol (t+1)/2 of the word itself
            FomPtr odd = fom_exists(
                rv.v, fom_exists(rv.w, fom_and(fom_and(f_eq_dbl(tvar(rv.w), tvar(rv.v),
                                                                rv.s1, rv.s2, rv.s3),
                                                       f_eq_succ(tvar(rv.w), t, rv.s1)),
                                               fom_wbit(tvar(rv.v)))));
            return fom_or(even, odd);
        }
        case K::Leq:
        case K::Bit:
            return f;
        case K::And: return fom_and(rewrite_rec(f->a, rv), rewrite_rec(f->b, rv));
        case K::Or: return fom_or(rewrite_rec(f->a, rv), rewrite_rec(f->b, rv));
        case K::Not: return fom_not(rewrite_rec(f->a, rv));
        case K::Exists: return fom_exists(f->var, rewrite_rec(f->a, rv));
        case K::Forall: return fom_forall(f->var, rewrite_rec(f->a, rv));
        case K::Majority: return fom_majority(f->var, rewrite_rec(f->a, rv));
    }
    throw std::logic_error("bad formula");
}

}  // namespace

std::size_t rewrite_y_index(std::size_t m) { return m + 4; }

FomPtr rewrite_alt_to_var(const FomPtr& f, std::size_t m) {
    RewriteVars rv{m + 1, m + 2, m + 3, m + 4, m + 5, m + 6, m + 7};
    return rewrite_rec(f, rv);
}

// ---------------------------------------------------------------- compile

namespace {

// Per-word-length context for table construction.
struct TableCtx {
    std::uint64_t l;            // word length
    std::size_t m;              // declared arity
    Nat x;                      // word value
    std::vector<Nat> lp;        // lp[i] = l^i, i = 0..m+1
    std::uint64_t blocks;       // l^m
    Nat ones;                   // rep(1, l^m, l): 1 at every entry position
};

Nat geom_ratio(const Nat& top, const Nat& bottom) {
    return div_floor(monus(pow2(top), 1), monus(pow2(bottom), 1));
}

// Table of h_t values (or of 2^{h_t - 1} when pw is set).
Nat term_table(const FomTerm& t, const TableCtx& c, bool pw) {
    Nat E = geom_ratio(c.lp[c.m + 1], c.lp[1]);
    switch (t.kind) {
        case FomTerm::Kind::One:
            return E;  // value 1 either way (2^0 = 1)
        case FomTerm::Kind::WordLen:
            return pw ? E * pow2(Nat(c.l - 1)) : E * Nat(c.l);
        case FomTerm::Kind::Var: {
            if (t.index == 0 || t.index > c.m) throw DomainError("variable out of arity");
            Nat out = 1;
            for (std::size_t j = 1; j <= c.m; ++j) {
                if (j == t.index) {
                    Nat s = 0;
                    for (std::uint64_t y = 1; y <= c.l; ++y) {
                        Nat e = Nat(static_cast<unsigned long>(y - 1)) * c.lp[j];
                        s += pw ? pow2(e + Nat(static_cast<unsigned long>(y - 1)))
                                : pow2(e) * Nat(static_cast<unsigned long>(y));
                    }
                    out *= s;
                } else {
                    out *= geom_ratio(c.lp[j + 1], c.lp[j]);
                }
            }
            return out;
        }
    }
    throw std::logic_error("bad term");
}

Nat formula_table(const FomPtr& f, const TableCtx& c);

// Conjugation that swaps variable axes 1 and i (self-inverse).
Nat axis_swap(const Nat& table, const TableCtx& c, std::size_t i) {
    std::vector<std::uint64_t> kk(c.m), mm(c.m);
    for (std::size_t j = 0; j < c.m; ++j)
        kk[j] = mm[j] = to_u64(c.lp[j + 1], "axis weight");
    std::swap(mm[0], mm[i - 1]);
    return bva::swap_n(table, c.l, kk, mm);
}

Nat quantifier_table(const FomPtr& f, const TableCtx& c) {
    using K = FomFormula::Kind;
    if (f->var == 0 || f->var > c.m) throw DomainError("bound variable out of arity");
    Nat sub = formula_table(f->a, c);
    if (f->var != 1) sub = axis_swap(sub, c, f->var);
    std::uint64_t outer = to_u64(c.lp[c.m - 1], "table blocks");
    Nat g = bv::sum(sub, outer, c.l, c.l);
    std::uint64_t thr = f->kind == K::Exists ? 1
                       : f->kind == K::Forall ? c.l
                                              : c.l / 2 + 1;
    Nat p = bv::rep(Nat(static_cast<unsigned long>(thr)), outer, c.l * c.l);
    Nat r = bva::cmp(g, p, outer, c.l * c.l);
    r = bva::incr(r, outer, c.l * c.l);
    // replicate across the (now dummy) first axis
    Nat out = geom_ratio(Nat(c.l) * Nat(c.l), c.lp[1]) * r;
    if (f->var != 1) out = axis_swap(out, c, f->var);
    return out;
}

Nat formula_table(const FomPtr& f, const TableCtx& c) {
    using K = FomFormula::Kind;
    switch (f->kind) {
        case K::Leq: {
            Nat f1 = term_table(f->t1, c, false);
            Nat f2 = term_table(f->t2, c, false);
            Nat r = bva::cmp(f2, f1, c.blocks, c.l);
            return bva::incr(r, c.blocks, c.l);
        }
        case K::Bit:
        case K::WordBit: {
            Nat f1 = f->kind == K::Bit
                         ? term_table(f->t1, c, false)
                         : bv::rep(bv::reverse_bits(c.x, c.l), c.blocks, c.l);
            Nat f2 = term_table(f->kind == K::Bit ? f->t2 : f->t1, c, true);
            Nat zero = bva::cmpeq(band(f1, f2), 0, c.blocks, c.l);
            return monus(c.ones, bva::incr(zero, c.blocks, c.l));
        }
        case K::And:
            return band(formula_table(f->a, c), formula_table(f->b, c));
        case K::Or:
            return bv::bor(formula_table(f->a, c), formula_table(f->b, c),
                           to_u64(c.lp[c.m + 1], "table width"));
        case K::Not:
            return monus(c.ones, formula_table(f->a, c));
        case K::Exists:
        case K::Forall:
        case K::Majority:
            return quantifier_table(f, c);
    }
    throw std::logic_error("bad formula");
}

}  // namespace

HFunctionTable compile_fom(const FomPtr& phi, std::size_t m) {
    if (fom_max_var(phi) > m) throw DomainError("formula uses variables beyond arity");
    FomPtr f = phi;
    HFunctionTable out;
    out.arity = m;
    out.f = [f, m](const Nat& x, const Nat& z) {
        if (z < 2) throw DomainError("z must be a power of two, >= 2");
        std::uint64_t l = to_u64(log2_floor(z), "word length");
        if (pow2(Nat(l)) != z) throw DomainError("z must be a power of two");
        TableCtx c;
        c.l = l;
        c.m = m;
        c.x = x;
        c.lp.resize(m + 2);
        for (std::size_t i = 0; i <= m + 1; ++i) c.lp[i] = nat_pow(Nat(l), i);
        if (c.lp[m + 1] > bit_budget()) throw BudgetError("table exceeds bit budget");
        c.blocks = to_u64(c.lp[m], "table blocks");
        c.ones = bv::rep(1, c.blocks, l);
        return formula_table(f, c);
    };
    return out;
}

Nat ffom_assemble(const HFunctionTable& table, const std::vector<Nat>& xs,
                  std::uint64_t k) {
    if (table.arity < 1) throw DomainError("ffom_assemble: table needs a bit-selector variable");
    const std::size_t mm = table.arity;  // z_1..z_{mm-1}, y = z_mm
    Nat lc = lcode_nk(xs, k);
    std::uint64_t l = to_u64(lc, "code length");
    Nat xc = code_nk(xs, k);
    Nat g = table.f(xc, pow2(lc));
    Nat stride = nat_pow(lc, mm);  // bit y sits at stride l^{mm}
    Nat r = div_floor(g, geom_ratio(stride, lc));
    return bva::decr(r, l, to_u64(stride, "selector stride"));
}

}  // namespace recfun
