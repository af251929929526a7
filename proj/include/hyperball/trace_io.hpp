#pragma once

#include <optional>
#include <string>

#include "hyperball/dynamics.hpp"

namespace hyperball {

// Orbit CSV. Header: n, z0_re, z0_im, ..., norm, d_to_tau, rho_step,
// alpha_bound. rho_step on row n is rho(z_{n-1}, z_n) and is blank on row 0;
// d_to_tau and alpha_bound are blank when tau / rate parameters are absent.
std::string trace_to_csv(const IterationTrace& trace,
                         const std::optional<RateParams>& rate = std::nullopt);

// Rate-comparison CSV: n, d_to_tau, alpha_bound, ratio.
std::string rates_to_csv(const IterationTrace& trace, const RateParams& rate);

void write_trace_csv(const IterationTrace& trace, const std::optional<RateParams>& rate,
                     const std::string& path);
void write_rates_csv(const IterationTrace& trace, const RateParams& rate,
                     const std::string& path);

}  // namespace hyperball
