#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperball/dynamics.hpp"
#include "hyperball/selfmap.hpp"

namespace hyperball {

// JSON wire format for map expressions. Complex scalars are [re, im] pairs,
// vectors are arrays of pairs, matrices are flat row-major arrays of pairs.
// Serialization is canonical: fixed field order per variant, floats as %.17g.
SelfMapPtr selfmap_from_json_text(const std::string& text);
std::string selfmap_to_json_text(const SelfMapExpr& f);

struct ExperimentConfig {
    int dimension = 0;
    SelfMapPtr map;
    std::optional<BoundaryPoint> tau;
    std::vector<BallPoint> z0;  // may be empty: orbit commands start at the
                                // origin, classify synthesizes seeded starts
    std::size_t n_max = 10000;
    std::uint64_t seed = 0;
    std::string output_path;
    double eps_fix = tol::eps_fix;
    double eps_sink = tol::eps_sink;
    double eps_rate = tol::eps_rate;

    IterationLimits limits() const { return {n_max, eps_fix, eps_sink}; }
};

ExperimentConfig config_from_json_text(const std::string& text);
ExperimentConfig config_from_file(const std::string& path);

}  // namespace hyperball
