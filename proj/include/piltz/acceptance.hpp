#ifndef PILTZ_ACCEPTANCE_HPP
#define PILTZ_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace piltz::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;       // deterministic values only (no wall times)
    double seconds = 0.0;     // measured, excluded from render()
};

struct Report {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
};

// Runs every verification criterion.  Executes the computational battery
// twice and compares the rendered reports byte for byte (criterion 10), so
// the returned report is itself reproducible.
Report run_all();

// one line per criterion: "PASS|FAIL  <id>. <name>: <detail>"
std::string render(const Report& report);

}  // namespace piltz::acceptance

#endif
