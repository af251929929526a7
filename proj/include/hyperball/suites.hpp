#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperball/rng.hpp"
#include "hyperball/selfmap.hpp"

namespace hyperball {

// One named invariant over a sample population. For one-sided (>=) checks
// `worst` is the minimum slack seen (negative = violation); for two-sided
// identity checks it is the largest |residual|.
struct CheckResult {
    std::string name;
    std::size_t samples = 0;
    std::size_t failures = 0;
    double worst = 0.0;
    bool pass = true;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// which: geometry | siegel | nonexpansive | rates | all
std::vector<SuiteReport> run_suites(const std::string& which, std::uint64_t seed,
                                    const std::vector<int>& dims);

std::string format_report(const std::vector<SuiteReport>& reports, const std::string& which,
                          std::uint64_t seed, const std::vector<int>& dims);

// Seeded generator covering every map variant; used by the Schwarz-Pick
// sweep and reusable from tests. `random_selfmap_variant` pins the variant
// (0..7) so sweeps can guarantee coverage.
SelfMapPtr random_selfmap(Rng& rng, int dim, bool allow_composite = true);
SelfMapPtr random_selfmap_variant(Rng& rng, int dim, std::size_t variant);

cmat random_contraction_matrix(Rng& rng, int dim);
cmat random_unitary_matrix(Rng& rng, int dim);

}  // namespace hyperball
