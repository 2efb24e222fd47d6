#pragma once

#include "recfun/fom.hpp"
#include "recfun/genfn.hpp"
#include "recfun/minsky.hpp"
#include "recfun/nat.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace recfun {

// Outcome of one property suite. `detail` carries the first counterexample
// when a suite fails, or a short summary when it passes.
struct SuiteResult {
    std::string name;
    std::uint64_t cases = 0;
    bool passed = true;
    std::string detail;
};

SuiteResult suite_binomial();                       // Pascal oracle, 0<=y<=x<=40
SuiteResult suite_heights();                        // tower height classifier
SuiteResult suite_blockvec(std::uint64_t seed, std::uint64_t instances);
SuiteResult suite_ssqrt();                          // ssqrt(2^2x) = 2^x, x<=200
SuiteResult suite_genfn();                          // constructions vs brute force
SuiteResult suite_xs_extract();                     // function recovery corpus
SuiteResult suite_fom();                            // compiled table vs model checker
SuiteResult suite_minsky(std::uint64_t seed);       // end-to-end Q + q_prop instances
SuiteResult suite_perm(std::uint64_t seed);         // permutation identities

// Everything, in acceptance order. The seed drives every randomized part.
std::vector<SuiteResult> suite_all(std::uint64_t seed);

// One line per suite, identical for identical seeds.
std::string format_suite_report(const std::vector<SuiteResult>& results);

// Named corpus pieces shared with the CLI front end.
const std::vector<GenPredicate>& genfn_corpus();
const std::vector<std::string>& fom_corpus();
const char* builtin_machine(const std::string& name);  // increment/identity/adder

}  // namespace recfun
