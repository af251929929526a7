#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperball/selfmap.hpp"
#include "hyperball/spectrum.hpp"

namespace hyperball {

enum class StopReason {
    max_steps,
    interior_converged,   // |z_{n+1} - z_n| <= eps_fix
    sink_reached,         // d(z_n, tau) <= eps_sink
    boundary_proximity,   // 1 - |z_n| under the representable floor
};

struct IterationLimits {
    std::size_t n_max = 10000;
    double eps_fix = tol::eps_fix;
    double eps_sink = tol::eps_sink;
};

// Recorded orbit z_0 = z, z_{n+1} = F(z_n), with per-step diagnostics.
struct IterationTrace {
    std::vector<BallPoint> iterates;  // z_0 .. z_N
    std::vector<double> norms;        // |z_n|
    std::vector<double> d_to_tau;     // d(z_n, tau); empty when tau unset
    std::vector<double> rho_steps;    // rho(z_n, z_{n+1}), size N
    std::optional<BoundaryPoint> tau;
    StopReason stop = StopReason::max_steps;

    std::size_t steps() const { return iterates.empty() ? 0 : iterates.size() - 1; }
};

IterationTrace iterate(const SelfMapExpr& f, const BallPoint& z0, const IterationLimits& limits,
                       std::optional<BoundaryPoint> tau = std::nullopt);

// Inputs of the convergence-rate bound: the radial derivative beta at the
// sink, the limit coefficient k, and d0 = d(z_0, tau).
struct RateParams {
    double beta;
    double k;
    double d0;
};

// alpha(n, z):  2 / (2 + n k d0)                      when beta = 1
//               2 beta^n / (2(1-beta) + (1-beta^n) k) when beta < 1
double rate_bound(const RateParams& p, std::size_t n);

struct RateReport {
    bool pass = true;
    std::size_t violations = 0;
    double worst_ratio = 0.0;          // max d_n / (alpha(n) d0)
    std::vector<double> ratios;
};
RateReport verify_rate(const IterationTrace& trace, const RateParams& p,
                       double eps = tol::eps_rate);

// One-step inequality 1/d(F(z),tau) >= (1/beta)(k/2 + 1/d(z,tau)) - eps.
bool step_inequality_check(const SelfMapExpr& f, const BallPoint& z, const BoundaryPoint& tau,
                           double beta, double k, double* residual = nullptr);

// Julia-type bound d(F(z), eta) <= L d(z, eta) + eps at a boundary regular
// fixed point eta with radial derivative L.
bool julia_check(const SelfMapExpr& f, const BallPoint& z, const BoundaryPoint& eta, double L,
                 double* residual = nullptr);

// Invariance of every ellipsoid E(tau, k) in `levels`: random z with
// d(z, tau) < k must land at d(F(z), tau) < k + eps.
bool sink_invariance_check(const SelfMapExpr& f, const BoundaryPoint& tau,
                           const std::vector<double>& levels, std::uint64_t seed,
                           std::string* diagnostic = nullptr);

// d(F(z), tau) <= d((z + F(z))/2, tau) + eps for fixed-point-free F with
// sink tau.
bool midpoint_inequality_check(const SelfMapExpr& f, const BallPoint& z,
                               const BoundaryPoint& tau, double* residual = nullptr);

struct ClassifyOptions {
    std::vector<BallPoint> starts;  // empty: origin plus 7 seeded points
    std::size_t n_max = 10000;
    std::optional<BoundaryPoint> tau;  // sink candidate, if known
    std::uint64_t seed = 1;
    int image_samples = 1000;
};

struct Classification {
    enum class Outcome { interior_fixed_point, sink_convergence, undetermined };
    Outcome outcome = Outcome::undetermined;

    // interior case
    std::optional<BallPoint> zeta;
    std::optional<SpectrumSummary> spectrum;
    double multi_start_spread = 0.0;
    bool strictly_inside_image = false;  // Earle-Hamilton regime

    // sink case; k may be NaN when no horosphere bound is available
    std::optional<BoundaryPoint> tau;
    double beta = 0.0;
    double k = 0.0;

    std::string diagnostic;
};

Classification classify(const SelfMapExpr& f, const ClassifyOptions& opts);

// Radial scan of boundary fixed point candidates; under a horosphere bound
// m only tau itself can be a boundary regular fixed point.
struct CandidateResult {
    BoundaryPoint eta;
    bool matches_tau = false;
    double fixed_gap = 0.0;   // tail sup of |F(r eta) - eta|
    bool regular = false;     // boundary regular fixed point (finite derivative)
    double derivative = 0.0;  // meaningful when regular
};
struct UniquenessReport {
    bool tau_accepted = false;
    bool others_rejected = true;
    std::vector<CandidateResult> rows;
};
UniquenessReport boundary_uniqueness_check(const SelfMapExpr& f, const BoundaryPoint& tau,
                                           double m, const std::vector<BoundaryPoint>& candidates);

}  // namespace hyperball
