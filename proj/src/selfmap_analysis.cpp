#include "hyperball/selfmap_analysis.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hyperball/rng.hpp"

namespace hyperball {

namespace {

double schedule_r(int j) { return 1.0 - std::ldexp(1.0, -j); }

struct Extrapolation {
    cnum value{0.0};
    bool converged = false;
    double last_delta = std::numeric_limits<double>::infinity();
    int j_stop = 0;
};

// First-order Richardson over g(r_j), r_j = 1 - 2^-j: with the step halving,
// E_j = 2 g(r_{j+1}) - g(r_j) kills the linear term. Successive extrapolant
// deltas decay 4x per level until boundary cancellation noise takes over, so
// the loop keeps the best extrapolant, exits early once deltas reach the
// tight target, and bails out when they start growing again. The acceptance
// threshold sits well under eta_rad so downstream route comparisons keep
// headroom. A numeric_error from g truncates the schedule and the best
// extrapolant so far stands.
Extrapolation radial_extrapolate(const std::function<cnum(double)>& g,
                                 double tight_tol = 1e-10, double accept_tol = 1e-7) {
    Extrapolation best;
    cnum g_prev;
    bool have_g = false;
    cnum e_prev;
    bool have_e = false;
    double prev_delta = std::numeric_limits<double>::infinity();
    int rising = 0;
    for (int j = tol::r_sched_begin; j <= tol::r_sched_end; ++j) {
        cnum gj;
        try {
            gj = g(schedule_r(j));
        } catch (const numeric_error&) {
            break;  // boundary evaluation failure: keep what the tail gave us
        }
        if (have_g) {
            const cnum e = 2.0 * gj - g_prev;
            if (have_e) {
                const double delta = std::abs(e - e_prev);
                const double scale = std::max(std::abs(e), 1e-9);
                if (delta < best.last_delta) {
                    best.value = e;
                    best.last_delta = delta;
                    best.j_stop = j;
                }
                if (delta <= tight_tol * scale) break;
                rising = delta > prev_delta ? rising + 1 : 0;
                if (rising >= 2) break;  // noise regime reached
                prev_delta = delta;
            }
            e_prev = e;
            have_e = true;
        }
        g_prev = gj;
        have_g = true;
    }
    best.converged = best.last_delta <= accept_tol * std::max(std::abs(best.value), 1e-9);
    return best;
}

cvec radial_point(const BoundaryPoint& tau, double r) {
    cvec z(tau.vec());
    for (cnum& c : z) c *= r;
    return z;
}

double sigma_raw(const cvec& z, const cvec& w) {
    const std::span<const cnum> zs(z.data(), z.size());
    const std::span<const cnum> ws(w.data(), w.size());
    const cnum zw = inner(zs, ws);
    return (1.0 - norm_sq(zs)) * (1.0 - norm_sq(ws)) / std::norm(1.0 - zw);
}

BcpCoefficients bcp_raw(const SelfMapExpr& f, const cvec& z, const cvec& w,
                        const HoroContext& ctx, double shift) {
    const cvec fz = evaluate_raw(f, z);
    const cvec fw = evaluate_raw(f, w);
    const SiegelPoint x = cayley(BallPoint::unchecked(fz), ctx);
    const SiegelPoint y = cayley(BallPoint::unchecked(fw), ctx);
    const double sx = x.height();
    const double sy = y.height();
    const cnum t = t_form(x.span(), y.span(), ctx);
    const double t2 = std::norm(t);
    if (t2 < tol::eps_den * tol::eps_den)
        throw numeric_error("bcp_coefficients: |T| vanished");
    const double b = 4.0 * shift * (sx + sy - shift) / t2;
    const double c = 4.0 * shift * (t.real() - shift) / t2;
    const double s = sigma_raw(z, w);
    const double one_minus = 1.0 - s;
    if (std::abs(one_minus) < 1e-15)
        throw numeric_error("bcp_coefficients: sigma(z,w) = 1, pair too close");
    return {b, c, (b - s * c) / one_minus};
}

}  // namespace

double radial_fixed_point_check(const SelfMapExpr& f, const BoundaryPoint& tau) {
    std::vector<double> gaps;
    gaps.reserve(tol::r_sched_end - tol::r_sched_begin + 1);
    for (int j = tol::r_sched_begin; j <= tol::r_sched_end; ++j) {
        cvec z = radial_point(tau, schedule_r(j));
        try {
            const cvec fz = evaluate_raw(f, z);
            const cvec gap = sub(std::span<const cnum>(fz.data(), fz.size()), tau.span());
            gaps.push_back(norm(std::span<const cnum>(gap.data(), gap.size())));
        } catch (const numeric_error&) {
            if (gaps.size() >= 8) break;
            throw;
        }
    }
    // limsup surrogate: worst value over the deepest tail
    const std::size_t tail = std::min<std::size_t>(4, gaps.size());
    double sup = 0.0;
    for (std::size_t i = gaps.size() - tail; i < gaps.size(); ++i) sup = std::max(sup, gaps[i]);
    return sup;
}

RadialRoutes radial_derivative_routes(const SelfMapExpr& f, const BoundaryPoint& tau) {
    const auto inner_route = radial_extrapolate([&](double r) -> cnum {
        const cvec fz = evaluate_raw(f, radial_point(tau, r));
        return (1.0 - inner(std::span<const cnum>(fz.data(), fz.size()), tau.span())) / (1.0 - r);
    });
    const auto norm_route = radial_extrapolate([&](double r) -> cnum {
        const cvec fz = evaluate_raw(f, radial_point(tau, r));
        return cnum((1.0 - norm(std::span<const cnum>(fz.data(), fz.size()))) / (1.0 - r), 0.0);
    });
    if (!inner_route.converged || !norm_route.converged)
        throw numeric_error("radial_derivative: difference quotients did not converge");
    return {inner_route.value.real(), norm_route.value.real()};
}

double radial_derivative(const SelfMapExpr& f, const BoundaryPoint& tau) {
    if (radial_fixed_point_check(f, tau) > tol::eps_bfp)
        throw numeric_error("radial_derivative: tau is not a boundary fixed point of F");
    const RadialRoutes r = radial_derivative_routes(f, tau);
    const double scale = std::max({std::abs(r.inner_route), std::abs(r.norm_route), 1e-12});
    if (std::abs(r.inner_route - r.norm_route) > tol::eta_rad * scale)
        throw numeric_error("radial_derivative: the two limit routes disagree");
    if (!(r.inner_route > 0.0))
        throw numeric_error("radial_derivative: nonpositive limit");
    return r.inner_route;
}

HorosphereBoundEstimate horosphere_bound(const SelfMapExpr& f, const BoundaryPoint& tau,
                                         const BoundSampler& sampler) {
    const int n = tau.dim();
    HorosphereBoundEstimate est;
    Rng rng(sampler.seed);

    auto probe = [&](const cvec& z) {
        try {
            const cvec fz = evaluate_raw(f, z);
            const double d = dhoro(BallPoint::unchecked(fz), tau.span());
            est.sup = std::max(est.sup, d);
            if (d > sampler.divergence_cap) est.divergent = true;
        } catch (const numeric_error&) {
            est.divergent = true;  // image squeezed onto the boundary
        }
    };

    for (int i = 0; i < sampler.interior_samples; ++i) probe(rng.ball_vec(n));

    std::vector<cvec> dirs;
    dirs.push_back(tau.vec());
    dirs.push_back(scale(-1.0, tau.span()));
    for (int i = 2; i < sampler.directions; ++i) dirs.push_back(rng.unit_vec(n));

    for (const cvec& u : dirs) {
        for (int j = 1; j <= sampler.schedule_depth; ++j) {
            probe(scale(schedule_r(j), std::span<const cnum>(u.data(), u.size())));
            if (est.divergent) break;
        }
        for (double r : sampler.extra_radii) probe(scale(r, std::span<const cnum>(u.data(), u.size())));
    }
    return est;
}

BcpCoefficients bcp_coefficients(const SelfMapExpr& f, const BallPoint& z, const BallPoint& w,
                                 const BoundaryPoint& tau, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("bcp_coefficients: m must be positive");
    const cvec gap = sub(z.span(), w.span());
    if (norm(std::span<const cnum>(gap.data(), gap.size())) <= tol::eps_id)
        throw std::invalid_argument("bcp_coefficients: z and w must be distinct");
    return bcp_raw(f, z.vec(), w.vec(), HoroContext(tau), 1.0 / m);
}

double k_limit(const SelfMapExpr& f, const BallPoint& z, const BoundaryPoint& tau, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("k_limit: m must be positive");
    const HoroContext ctx(tau);
    const double shift = 1.0 / m;
    const auto lim = radial_extrapolate([&](double r) -> cnum {
        const BcpCoefficients bcp = bcp_raw(f, z.vec(), radial_point(tau, r), ctx, shift);
        return cnum(bcp.p / (1.0 - r), 0.0);
    });
    if (!lim.converged) throw numeric_error("k_limit: extrapolation did not converge");
    return lim.value.real();
}

bool strong_nonexpansivity_check(const SelfMapExpr& f, const BallPoint& z, const BallPoint& w,
                                 const BoundaryPoint& tau, double m, std::string* diagnostic) {
    const BcpCoefficients bcp = bcp_coefficients(f, z, w, tau, m);
    const double s = sigma(z, w);
    const double sf = sigma(evaluate(f, z), evaluate(f, w));

    const double def_nc = sf - ((1.0 - bcp.p) * s + bcp.p);
    const double lower = sf - s;
    const double upper = (bcp.c > 0.0) ? bcp.b / bcp.c - sf
                                       : std::numeric_limits<double>::infinity();
    const bool ok = def_nc >= -tol::eps_id && lower >= -tol::eps_id && upper >= -tol::eps_id;
    if (!ok && diagnostic) {
        std::ostringstream os;
        os << "strong-nonexpansivity residual " << def_nc << ", sandwich lower " << lower << ", upper "
           << upper << " (b=" << bcp.b << ", c=" << bcp.c << ", p=" << bcp.p << ")";
        *diagnostic = os.str();
    }
    return ok;
}

}  // namespace hyperball
