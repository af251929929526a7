#pragma once

// Numeric policy for the whole library. Everything is IEEE-754 binary64;
// identities are only asserted away from the boundary, where 1/(1-|z|^2)
// is well conditioned.
namespace hyperball::tol {

// validation
inline constexpr double eps_unit = 1e-9;       // | |tau| - 1 | for boundary points
inline constexpr double eps_ball = 1e-12;      // membership: |z| <= 1 - eps_ball
inline constexpr double eps_ball_eval = 1e-13; // interior guard for map evaluation
inline constexpr double eps_den = 1e-14;       // denominator guards

// identity checks
inline constexpr double eps_id = 1e-9;       // at |z| <= 0.95
inline constexpr double eps_id_near = 1e-6;  // relaxed, |z| <= 1 - 1e-4

// iteration / classification
inline constexpr double eps_fix = 1e-11;   // interior step stop
inline constexpr double eps_sink = 1e-8;   // d(z_n, tau) stop
inline constexpr double eps_edge = 1e-11;  // 1 - |z_n| floor, orbit truncation
inline constexpr double delta_eh = 1e-3;   // strictly-inside margin

// boundary limits
inline constexpr double eta_rad = 1e-6;  // radial extrapolation, relative
inline constexpr double eta_k = 1e-3;    // k-limit consistency, relative
inline constexpr double eps_bfp = 1e-6;  // boundary fixed point acceptance
inline constexpr int r_sched_begin = 3;  // r_j = 1 - 2^-j
inline constexpr int r_sched_end = 36;

// derivatives / rates
inline constexpr double eps_jac = 1e-6;
inline constexpr double eps_rate = 1e-7;

}  // namespace hyperball::tol
