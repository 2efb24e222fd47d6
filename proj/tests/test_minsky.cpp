#include "recfun/minsky.hpp"
#include "recfun/suites.hpp"

#include "doctest.h"

using namespace recfun;

namespace {

MinskyMachine builtin(const char* name) {
    return *parse_machine_file(builtin_machine(name)).general;
}

}  // namespace

TEST_CASE("simulator on the built-in machines") {
    MinskyMachine inc = builtin("increment");
    MinskyMachine idm = builtin("identity");
    MinskyMachine add = builtin("adder");
    for (unsigned long x = 0; x <= 6; ++x) {
        CHECK(run(inc, {Nat(x)}, Nat(x + 2)).output == x + 1);
        CHECK(run(idm, {Nat(x)}, Nat(2)).output == x);
    }
    for (unsigned long x = 0; x <= 4; ++x)
        for (unsigned long y = 0; y <= 4; ++y)
            CHECK(run(add, {Nat(x), Nat(y)}, Nat(y + 2)).output == x + y);
}

TEST_CASE("reduction preserves the step semantics") {
    MinskyMachine add = builtin("adder");
    ReducedMachine red = reduce(add);
    // every original step becomes exactly k reduced steps
    Configuration c{{Nat(3), Nat(2)}, 1};
    Configuration want = c;
    Configuration got = c;
    for (int step = 0; step < 6; ++step) {
        want = con_step(add, want);
        for (std::size_t i = 0; i < add.tapes; ++i) got = con_step(red, got);
        CHECK(got.heads == want.heads);
        CHECK(got.state == want.state);
    }
}

TEST_CASE("configuration codes round trip and ignore junk") {
    ConfigCodeParams p{3, 5};
    Configuration c{{Nat(7), Nat(0), Nat(30)}, 5};
    Nat x = config_code(c, p);
    Configuration back = config_decode(x, 3, p);
    CHECK(back.heads == c.heads);
    CHECK(back.state == c.state);
    // bits at kl+w and above are junk
    Configuration junked = config_decode(x + pow2(Nat(3 * 5 + 3)), 3, p);
    CHECK(junked.heads == c.heads);
    CHECK(junked.state == c.state);
    CHECK_THROWS_AS(config_code(Configuration{{Nat(32), Nat(0), Nat(0)}, 1}, p),
                    DomainError);
}

TEST_CASE("simplistic functions") {
    SimplisticFn f{Nat(5), Nat(3)};
    CHECK(apply_simplistic(f, Nat(8)) == 11);   // 8 & 5 = 0
    CHECK(apply_simplistic(f, Nat(12)) == 12);  // 12 & 5 = 4
}

TEST_CASE("time polynomial grammar") {
    CHECK(parse_time_poly("x+2", 1).eval({Nat(5)}) == 7);
    CHECK(parse_time_poly("x2+2", 2).eval({Nat(5), Nat(3)}) == 5);
    CHECK(parse_time_poly("3x1x2^2+x1+5", 2).eval({Nat(2), Nat(3)}) == 61);
    CHECK_THROWS(parse_time_poly("x3+1", 2));
}

TEST_CASE("compiled Q reproduces the simulator") {
    MinskyMachine inc = builtin("increment");
    for (unsigned long x = 0; x <= 5; ++x) {
        CompiledQ cq = compile(inc, {Nat(x)}, parse_time_poly("x+2", 1));
        CHECK(extract(cq, q_eval(cq.params)) == x + 1);
    }
    MinskyMachine add = builtin("adder");
    for (unsigned long x = 0; x <= 3; ++x)
        for (unsigned long y = 0; y <= 3; ++y) {
            CompiledQ cq = compile(add, {Nat(x), Nat(y)}, parse_time_poly("x2+2", 2));
            CHECK(extract(cq, q_eval(cq.params)) == x + y);
        }
    // a time bound below the actual step count is rejected
    CHECK_THROWS_AS(compile(add, {Nat(2), Nat(5)}, parse_time_poly("2", 2)),
                    DomainError);
}
