#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace gsums::selftest {

struct Options {
    std::uint64_t seed = 1;
    // Caps the group orders the random suites draw; the full-scale runs use the
    // documented defaults. Values below the default scale every suite down.
    std::int64_t max_order = 2000;
    bool verbose = false;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

using Suite = std::function<std::string(const Options&)>; // empty string = pass

const std::vector<std::pair<std::string, Suite>>& suites();

/// Runs every suite, printing one pass/fail line per suite; returns true when
/// all pass.
bool run_all(const Options& opts, std::ostream& out);

} // namespace gsums::selftest
