#pragma once
// Failure taxonomy shared across modules. The CLI maps these to exit codes.

#include <stdexcept>
#include <string>
#include <vector>

namespace swlw {

// a state invariant broke (nonpositive density, degenerate map, ...)
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the fixed-point iteration stopped contracting
struct PicardDivergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// configuration rejected; carries every violation found, not just the first
struct ConfigError : std::runtime_error {
    std::vector<std::string> issues;
    explicit ConfigError(std::vector<std::string> list)
        : std::runtime_error(join(list)), issues(std::move(list)) {}

  private:
    static std::string join(const std::vector<std::string>& list) {
        std::string s = "config error:";
        for (const auto& e : list) s += "\n  - " + e;
        return s;
    }
};

} // namespace swlw
