#pragma once

#include <string>
#include <vector>

#include "subdiv/subdivision.hpp"

namespace subdiv {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

class Report {
public:
    void add(std::string name, bool passed, std::string detail = {});
    // Records an equality, with both sides in the detail on failure.
    void expect_equal(std::string name, const LaurentPoly& got, const LaurentPoly& want);
    void merge(const Report& other, const std::string& prefix = {});

    const std::vector<CheckResult>& results() const { return results_; }
    bool all_passed() const;
    std::size_t failures() const;

private:
    std::vector<CheckResult> results_;
};

// Identities that every strong formal subdivision satisfies. Absolute
// properties are included when Gamma is lower Eulerian and B is Eulerian;
// non-negativity is asserted only for geometric subdivisions.
Report check_sfs(Sfs& s);

// Composition laws for tau: Omega -> Gamma followed by sigma: Gamma -> B.
Report check_composition(Sfs& tau, Sfs& sigma);

}  // namespace subdiv
