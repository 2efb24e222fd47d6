#include "recfun/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace recfun {

namespace {

struct SymInfo {
    Sym sym;
    const char* name;
    int arity;
};

constexpr std::array<SymInfo, 18> kSyms = {{
    {Sym::Succ, "succ", 1},
    {Sym::Add, "add", 2},
    {Sym::Mul, "mul", 2},
    {Sym::Monus, "monus", 2},
    {Sym::Band, "band", 2},
    {Sym::Div, "div", 2},
    {Sym::Rm, "rm", 2},
    {Sym::Pow2, "pow2", 1},
    {Sym::Powvar, "powvar", 2},
    {Sym::MinPow2, "min_pow2", 2},
    {Sym::Log2, "log2", 1},
    {Sym::Len, "len", 1},
    {Sym::Rot, "rot", 2},
    {Sym::ExpLogsq, "exp_logsq", 1},
    {Sym::PowLog, "pow_log", 2},
    {Sym::Sg, "sg", 1},
    {Sym::Sgbar, "sgbar", 1},
    {Sym::Bit, "bit", 2},
}};

const SymInfo* lookup_sym(const std::string& name) {
    for (const auto& s : kSyms)
        if (name == s.name) return &s;
    return nullptr;
}

const SymInfo& info_of(Sym s) {
    for (const auto& i : kSyms)
        if (i.sym == s) return i;
    throw std::logic_error("unknown symbol");
}

}  // namespace

int sym_arity(Sym s) { return info_of(s).arity; }
const char* sym_name(Sym s) { return info_of(s).name; }

FormulaPtr Formula::var(std::string n) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Variable;
    f->name = std::move(n);
    return f;
}

FormulaPtr Formula::constant(Nat v) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Constant;
    f->value = std::move(v);
    return f;
}

FormulaPtr Formula::apply(Sym s, std::vector<FormulaPtr> args) {
    if (static_cast<int>(args.size()) != sym_arity(s))
        throw DomainError(std::string("arity mismatch for ") + sym_name(s));
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Apply;
    f->sym = s;
    f->args = std::move(args);
    return f;
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    FormulaPtr run() {
        FormulaPtr f = formula();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
        return f;
    }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    FormulaPtr formula() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::islower(static_cast<unsigned char>(c))) return name();
        throw ParseError("expected name or number", pos_);
    }

    FormulaPtr number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Formula::constant(Nat(text_.substr(start, pos_ - start)));
    }

    FormulaPtr name() {
        std::size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::islower(static_cast<unsigned char>(c)) ||
                std::isdigit(static_cast<unsigned char>(c)) || c == '_')
                ++pos_;
            else
                break;
        }
        std::string id = text_.substr(start, pos_ - start);
        if (peek() == '(') {
            const SymInfo* s = lookup_sym(id);
            if (!s) throw ParseError("unknown function '" + id + "'", start);
            ++pos_;  // '('
            std::vector<FormulaPtr> args;
            args.push_back(formula());
            while (peek() == ',') {
                ++pos_;
                args.push_back(formula());
            }
            expect(')');
            if (static_cast<int>(args.size()) != s->arity)
                throw ParseError("arity mismatch for '" + id + "'", start);
            return Formula::apply(s->sym, std::move(args));
        }
        if (lookup_sym(id))
            throw ParseError("basis symbol '" + id + "' used as a variable", start);
        return Formula::var(std::move(id));
    }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).run(); }

std::string print_formula(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Variable:
            return f->name;
        case Formula::Kind::Constant:
            return f->value.get_str();
        case Formula::Kind::Apply: {
            std::string out = sym_name(f->sym);
            out += '(';
            for (std::size_t i = 0; i < f->args.size(); ++i) {
                if (i) out += ',';
                out += print_formula(f->args[i]);
            }
            out += ')';
            return out;
        }
    }
    throw std::logic_error("bad formula node");
}

namespace {

Nat eval_powvar(const Nat& base, const Nat& exp) {
    if (base <= 1) return base == 1 || exp == 0 ? Nat(1) : Nat(0);
    std::uint64_t e = to_u64(exp, "powvar exponent");
    std::uint64_t bits = mpz_sizeinbase(base.get_mpz_t(), 2);
    if (e > 0 && bits > bit_budget() / e + 1)
        throw BudgetError("powvar: result exceeds bit budget");
    Nat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

}  // namespace

Nat evaluate(const FormulaPtr& f, const Env& env) {
    switch (f->kind) {
        case Formula::Kind::Variable: {
            auto it = env.find(f->name);
            if (it == env.end()) throw DomainError("unbound variable '" + f->name + "'");
            return it->second;
        }
        case Formula::Kind::Constant:
            return f->value;
        case Formula::Kind::Apply: {
            std::vector<Nat> a;
            a.reserve(f->args.size());
            for (const auto& arg : f->args) a.push_back(evaluate(arg, env));
            switch (f->sym) {
                case Sym::Succ: return a[0] + 1;
                case Sym::Add: return a[0] + a[1];
                case Sym::Mul: return a[0] * a[1];
                case Sym::Monus: return monus(a[0], a[1]);
                case Sym::Band: return band(a[0], a[1]);
                case Sym::Div: return div_floor(a[0], a[1]);
                case Sym::Rm: return rm(a[0], a[1]);
                case Sym::Pow2: return pow2(a[0]);
                case Sym::Powvar: return eval_powvar(a[0], a[1]);
                case Sym::MinPow2: return min_pow2(a[0], a[1]);
                case Sym::Log2: return log2_floor(a[0]);
                case Sym::Len: return len(a[0]);
                case Sym::Rot: return rot_r(a[0], a[1]);
                case Sym::ExpLogsq: return exp_logsq(a[0]);
                case Sym::PowLog: return pow_log(a[0], a[1]);
                case Sym::Sg: return sg(a[0]);
                case Sym::Sgbar: return sgbar(a[0]);
                case Sym::Bit: return bit_get(a[0], a[1]);
            }
        }
    }
    throw std::logic_error("bad formula node");
}

namespace {

std::uint64_t height_rec(const FormulaPtr& f, Tower tower) {
    switch (f->kind) {
        case Formula::Kind::Variable:
        case Formula::Kind::Constant:
            return 1;
        case Formula::Kind::Apply: {
            if (f->sym == Sym::Powvar && tower == Tower::Exp2)
                throw DomainError("powvar cannot be classified in the exp2 tower");
            std::uint64_t h = 1;
            for (const auto& a : f->args) h = std::max(h, height_rec(a, tower));
            if (f->sym == Sym::Pow2) return height_rec(f->args[0], tower) + 1;
            if (f->sym == Sym::Powvar)
                return std::max(height_rec(f->args[0], tower),
                                height_rec(f->args[1], tower) + 1);
            return h;
        }
    }
    throw std::logic_error("bad formula node");
}

}  // namespace

HeightClass exp_height(const FormulaPtr& f, Tower tower) {
    return HeightClass{tower, height_rec(f, tower)};
}

FormulaPtr binomial_formula() {
    auto x = Formula::var("x");
    auto y = Formula::var("y");
    auto sx = Formula::apply(Sym::Succ, {x});                          // x+1
    auto base = Formula::apply(Sym::Succ, {Formula::apply(Sym::Pow2, {sx})});  // 2^{x+1}+1
    auto big = Formula::apply(Sym::Powvar, {base, x});                 // (2^{x+1}+1)^x
    auto t1 = Formula::apply(
        Sym::Div, {big, Formula::apply(Sym::Pow2, {Formula::apply(Sym::Mul, {sx, y})})});
    auto t2 = Formula::apply(
        Sym::Div,
        {big, Formula::apply(Sym::Pow2,
                             {Formula::apply(Sym::Mul, {sx, Formula::apply(Sym::Succ, {y})})})});
    auto shifted = Formula::apply(Sym::Mul, {t2, Formula::apply(Sym::Pow2, {sx})});
    return Formula::apply(Sym::Monus, {t1, shifted});
}

}  // namespace recfun
