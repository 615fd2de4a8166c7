#pragma once
// Manufactured-solution and self-convergence studies: temporal order of the
// NLS splitting, the backward-Euler momentum solve, and the coupled step,
// plus spatial-floor checks on band-limited manufactured fields.

#include <string>
#include <vector>

#include "swlw/config.hpp"

namespace swlw {

struct MmsReport {
    std::string solver;
    std::vector<double> dts;
    std::vector<double> errors;
    double observed_order = 0.0; // least-squares slope in log2
    double spatial_floor = 0.0;  // error of the time-independent companion
};

// levels = number of dt refinements (>= 2)
std::vector<MmsReport> run_mms(const RunConfig& cfg, int levels);

std::string mms_to_text(const std::vector<MmsReport>& reports);

} // namespace swlw
