#pragma once

#include "hyperball/matrix.hpp"

namespace hyperball {

// Spectral diagnostics of a derivative matrix A = F'(zeta). The radius comes
// from Gelfand's formula with repeated squaring (log-scaled against
// under/overflow); when that fails to settle, `radius_is_norm_bound` is set
// and the operator norm stands in as an upper bound.
struct SpectrumSummary {
    cmat jacobian;
    double spectral_radius = 0.0;
    double contraction_margin = 0.0;  // 1 - spectral_radius
    bool radius_is_norm_bound = false;
};

double spectral_radius(const cmat& m, bool* converged = nullptr);

SpectrumSummary spectrum_summary(const cmat& m);

}  // namespace hyperball
