#include "gsums/selftest.hpp"

#include <chrono>
#include <iomanip>

namespace gsums::selftest {

const std::vector<std::pair<std::string, Suite>>& suites() {
    static const std::vector<std::pair<std::string, Suite>> all = {};
    return all;
}

bool run_all(const Options& opts, std::ostream& out) {
    bool ok = true;
    for (const auto& [name, fn] : suites()) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = fn(opts);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = detail.empty();
        ok = ok && pass;
        out << (pass ? "[PASS] " : "[FAIL] ") << name << " (" << std::fixed
            << std::setprecision(1) << secs << "s)";
        if (!pass) out << " -- " << detail;
        out << "\n" << std::flush;
    }
    return ok;
}

} // namespace gsums::selftest
