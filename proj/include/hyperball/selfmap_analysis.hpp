#pragma once

#include <string>
#include <vector>

#include "hyperball/selfmap.hpp"

namespace hyperball {

// sup of |F(r tau) - tau| over the tail of the radial schedule r_j = 1-2^-j.
// Below eps_bfp the caller may treat tau as a boundary fixed point of F.
double radial_fixed_point_check(const SelfMapExpr& f, const BoundaryPoint& tau);

// Radial derivative at a boundary fixed point,
//   lim_{r->1} (1 - <F(r tau), tau>) / (1 - r),
// by first-order Richardson extrapolation over the schedule, cross-checked
// against the norm route lim (1 - |F(r tau)|)/(1 - r). Raises numeric_error
// when either limit fails to settle or the routes disagree beyond eta_rad.
double radial_derivative(const SelfMapExpr& f, const BoundaryPoint& tau);

struct RadialRoutes {
    double inner_route;  // from 1 - <F(r tau), tau>
    double norm_route;   // from 1 - |F(r tau)|
};
RadialRoutes radial_derivative_routes(const SelfMapExpr& f, const BoundaryPoint& tau);

// Empirical sup of d(F(z), tau). Random interior samples plus geometric
// near-boundary sweeps along many directions (always including +/- tau).
struct BoundSampler {
    std::uint64_t seed = 1;
    int interior_samples = 2000;
    int directions = 64;
    int schedule_depth = 20;  // radii 1 - 2^-j, j = 1..depth
    std::vector<double> extra_radii = {0.5, 0.9, 0.99, 0.999, 1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6};
    double divergence_cap = 1e6;
};

struct HorosphereBoundEstimate {
    double sup = 0.0;
    bool divergent = false;  // growth past the cap along the schedule
};
HorosphereBoundEstimate horosphere_bound(const SelfMapExpr& f, const BoundaryPoint& tau,
                                         const BoundSampler& sampler);

// The transfer coefficients of the shifted map, for a certified horosphere
// bound m (a = 1/m):
//   b = 4a [S(C(F(z))) + S(C(F(w))) - a] / |T|^2
//   c = 4a [Re T - a] / |T|^2,     T = T(C(F(z)), C(F(w)))
//   p = (b - sigma(z,w) c) / (1 - sigma(z,w))
struct BcpCoefficients {
    double b;
    double c;
    double p;
};
BcpCoefficients bcp_coefficients(const SelfMapExpr& f, const BallPoint& z, const BallPoint& w,
                                 const BoundaryPoint& tau, double m);

// lim_{r->1} p_F(z, r tau)/(1 - r), extrapolated over the radial schedule.
double k_limit(const SelfMapExpr& f, const BallPoint& z, const BoundaryPoint& tau, double m);

// sigma(F(z),F(w)) >= (1-p) sigma(z,w) + p  and the sandwich
// sigma(z,w) <= sigma(F(z),F(w)) <= b/c, all up to eps_id.
bool strong_nonexpansivity_check(const SelfMapExpr& f, const BallPoint& z, const BallPoint& w,
                                 const BoundaryPoint& tau, double m,
                                 std::string* diagnostic = nullptr);

}  // namespace hyperball
