#pragma once

// Seeded property suites.  Trials are independent; results are merged by
// trial index so a (suite, trials, seed, n) tuple always gives the same summary.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace perronlab {

struct SuiteOptions {
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::size_t n = 8;  // dimension cap
};

struct SuiteSummary {
    std::string suite;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::vector<std::string> failures;      // first few, "trial k: detail"
    std::map<std::string, double> counters;  // suite specific tallies
    bool ok() const { return passed == trials; }
};

const std::vector<std::string>& suite_names();
// Unknown names throw ParseError.
SuiteSummary run_suite(const std::string& name, const SuiteOptions& opts);

}  // namespace perronlab
