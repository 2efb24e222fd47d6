#pragma once

#include "recfun/nat.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace recfun {

// Basis-function symbols allowed in formula ASTs. `pow2` is the counted
// exponential of the 2^x tower, `powvar` (f^g) the counted one of the x^y
// tower; everything else is exponent-free.
enum class Sym {
    Succ, Add, Mul, Monus, Band, Div, Rm, Pow2, Powvar, MinPow2,
    Log2, Len, Rot, ExpLogsq, PowLog, Sg, Sgbar, Bit,
};

int sym_arity(Sym s);
const char* sym_name(Sym s);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Variable, Constant, Apply };
    Kind kind;
    std::string name;             // Variable
    Nat value;                    // Constant
    Sym sym = Sym::Succ;          // Apply
    std::vector<FormulaPtr> args; // Apply

    static FormulaPtr var(std::string n);
    static FormulaPtr constant(Nat v);
    static FormulaPtr apply(Sym s, std::vector<FormulaPtr> args);
};

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Grammar: formula := NAME '(' formula {',' formula} ')' | NAME | NUMBER
FormulaPtr parse_formula(const std::string& text);
std::string print_formula(const FormulaPtr& f);

using Env = std::map<std::string, Nat>;
Nat evaluate(const FormulaPtr& f, const Env& env);

enum class Tower { Exp2, PowXY };

struct HeightClass {
    Tower tower;
    std::uint64_t height;  // >= 1
};

// Exponent-height classifier. powvar under the exp2 tower is a
// classification error (DomainError).
HeightClass exp_height(const FormulaPtr& f, Tower tower);

// The closed binomial-coefficient formula
//   C(x,y) = floor((2^{x+1}+1)^x / 2^{(x+1)y})
//            monus floor((2^{x+1}+1)^x / 2^{(x+1)(y+1)}) * 2^{x+1}
// over variables x, y.
FormulaPtr binomial_formula();

}  // namespace recfun
