#include "hyperball/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperball/rng.hpp"
#include "hyperball/selfmap_analysis.hpp"

namespace hyperball {

namespace {

double step_norm(const BallPoint& a, const BallPoint& b) {
    const cvec d = sub(a.span(), b.span());
    return norm(std::span<const cnum>(d.data(), d.size()));
}

std::vector<BallPoint> default_starts(int dim, std::uint64_t seed) {
    std::vector<BallPoint> starts;
    starts.push_back(BallPoint::origin(dim));
    Rng rng(seed);
    for (int i = 0; i < 7; ++i) starts.push_back(rng.ball_point(dim, 0.5));
    return starts;
}

// z with d(z, tau) < level: rejection from the ball plus guaranteed ray
// points r tau, whose d = (1-r)/(1+r) can be made arbitrarily small.
BallPoint sample_in_ellipsoid(Rng& rng, const BoundaryPoint& tau, double level) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        BallPoint z = rng.ball_point(tau.dim(), 0.95);
        if (dhoro(z, tau) < level * (1.0 - 1e-9)) return z;
    }
    const double cap = std::min(0.9, level / (2.0 + level));
    const double t = rng.uniform(1e-4, cap);  // d(r tau, tau) = t/(2-t) < level/2
    return BallPoint(scale(1.0 - t, tau.span()));
}

}  // namespace

IterationTrace iterate(const SelfMapExpr& f, const BallPoint& z0, const IterationLimits& limits,
                       std::optional<BoundaryPoint> tau) {
    if (limits.n_max < 1) throw std::invalid_argument("iterate: n_max must be >= 1");
    IterationTrace tr;
    tr.tau = std::move(tau);
    tr.iterates.reserve(std::min<std::size_t>(limits.n_max + 1, 1 << 16));

    auto push = [&](BallPoint z) {
        tr.norms.push_back(z.norm());
        if (tr.tau) tr.d_to_tau.push_back(dhoro(z, *tr.tau));
        tr.iterates.push_back(std::move(z));
    };

    push(z0);
    tr.stop = StopReason::max_steps;
    for (std::size_t n = 0; n < limits.n_max; ++n) {
        const BallPoint& cur = tr.iterates.back();
        std::optional<BallPoint> evaluated;
        try {
            evaluated = evaluate(f, cur);
        } catch (const numeric_error&) {
            if (tr.iterates.size() > 1) {
                tr.stop = StopReason::boundary_proximity;  // orbit squeezed out; truncate
                break;
            }
            throw;
        }
        BallPoint next = std::move(*evaluated);
        const double step = step_norm(cur, next);
        tr.rho_steps.push_back(rho(cur, next));
        push(std::move(next));

        if (step <= limits.eps_fix) {
            tr.stop = StopReason::interior_converged;
            break;
        }
        if (tr.tau && tr.d_to_tau.back() <= limits.eps_sink) {
            tr.stop = StopReason::sink_reached;
            break;
        }
        if (1.0 - tr.norms.back() <= tol::eps_edge) {
            tr.stop = StopReason::boundary_proximity;
            break;
        }
    }
    return tr;
}

double rate_bound(const RateParams& p, std::size_t n) {
    if (!(p.beta > 0.0) || p.beta > 1.0 + 1e-12)
        throw std::invalid_argument("rate_bound: beta must lie in (0, 1]");
    if (!(p.k > 0.0) || !(p.d0 > 0.0))
        throw std::invalid_argument("rate_bound: k and d0 must be positive");
    const double nn = static_cast<double>(n);
    if (p.beta >= 1.0) return 2.0 / (2.0 + nn * p.k * p.d0);
    const double bn = std::pow(p.beta, nn);
    return 2.0 * bn / (2.0 * (1.0 - p.beta) + (1.0 - bn) * p.k);
}

RateReport verify_rate(const IterationTrace& trace, const RateParams& p, double eps) {
    if (!trace.tau) throw std::invalid_argument("verify_rate: trace has no tau");
    RateReport rep;
    rep.ratios.reserve(trace.d_to_tau.size());
    for (std::size_t n = 0; n < trace.d_to_tau.size(); ++n) {
        const double bound = rate_bound(p, n) * p.d0;
        const double ratio = trace.d_to_tau[n] / bound;
        rep.ratios.push_back(ratio);
        rep.worst_ratio = std::max(rep.worst_ratio, ratio);
        if (trace.d_to_tau[n] > bound + eps) ++rep.violations;
    }
    rep.pass = rep.violations == 0;
    return rep;
}

bool step_inequality_check(const SelfMapExpr& f, const BallPoint& z, const BoundaryPoint& tau,
                           double beta, double k, double* residual) {
    const double lhs = 1.0 / dhoro(evaluate(f, z), tau);
    const double rhs = (k / 2.0 + 1.0 / dhoro(z, tau)) / beta;
    const double r = lhs - rhs;
    if (residual) *residual = r;
    return r >= -tol::eps_rate;
}

bool julia_check(const SelfMapExpr& f, const BallPoint& z, const BoundaryPoint& eta, double L,
                 double* residual) {
    const double r = L * dhoro(z, eta) - dhoro(evaluate(f, z), eta);
    if (residual) *residual = r;
    return r >= -tol::eps_rate;
}

bool sink_invariance_check(const SelfMapExpr& f, const BoundaryPoint& tau,
                           const std::vector<double>& levels, std::uint64_t seed,
                           std::string* diagnostic) {
    constexpr int kSamplesPerLevel = 200;
    Rng rng(seed);
    for (double level : levels) {
        if (!(level > 0.0)) throw std::invalid_argument("sink_invariance_check: level <= 0");
        for (int i = 0; i < kSamplesPerLevel; ++i) {
            const BallPoint z = sample_in_ellipsoid(rng, tau, level);
            const double din = dhoro(z, tau);
            const double dout = dhoro(evaluate(f, z), tau);
            if (dout >= level + tol::eps_rate) {
                if (diagnostic) {
                    std::ostringstream os;
                    os << "level " << level << ": d(z,tau) = " << din
                       << " mapped to d(F(z),tau) = " << dout;
                    *diagnostic = os.str();
                }
                return false;
            }
        }
    }
    return true;
}

bool midpoint_inequality_check(const SelfMapExpr& f, const BallPoint& z,
                               const BoundaryPoint& tau, double* residual) {
    const BallPoint fz = evaluate(f, z);
    cvec mid(z.vec().size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (z.vec()[i] + fz.vec()[i]);
    const double r = dhoro(BallPoint::unchecked(std::move(mid)), tau) - dhoro(fz, tau);
    if (residual) *residual = r;
    return r >= -tol::eps_rate;
}

Classification classify(const SelfMapExpr& f, const ClassifyOptions& opts) {
    Classification out;
    const int dim = f.dim != 0 ? f.dim : (opts.starts.empty() ? 0 : opts.starts.front().dim());
    if (dim == 0)
        throw std::invalid_argument("classify: dimension-free map needs explicit starts");

    std::vector<BallPoint> starts =
        opts.starts.empty() ? default_starts(dim, opts.seed) : opts.starts;
    const IterationLimits limits{opts.n_max, tol::eps_fix, tol::eps_sink};

    // Earle-Hamilton probe: is the sampled image strictly inside the ball?
    {
        Rng rng(opts.seed + 0x9e3779b97f4a7c15ull);
        double sup = 0.0;
        bool escaped = false;
        auto probe = [&](const cvec& z) {
            try {
                const cvec fz = evaluate_raw(f, z);
                sup = std::max(sup, norm(std::span<const cnum>(fz.data(), fz.size())));
            } catch (const numeric_error&) {
                escaped = true;
            }
        };
        for (int i = 0; i < opts.image_samples; ++i) probe(rng.ball_vec(dim));
        for (double r : {0.9, 0.99, 0.999, 1.0 - 1e-4, 1.0 - 1e-5, 1.0 - 1e-6})
            for (int i = 0; i < 32; ++i) probe(scale(r, std::span<const cnum>(rng.unit_vec(dim).data(),
                                                                              static_cast<std::size_t>(dim))));
        out.strictly_inside_image = !escaped && sup <= 1.0 - tol::delta_eh;
    }

    std::vector<IterationTrace> traces;
    traces.reserve(starts.size());
    for (const BallPoint& z0 : starts) traces.push_back(iterate(f, z0, limits, opts.tau));

    const bool all_interior =
        std::all_of(traces.begin(), traces.end(),
                    [](const IterationTrace& t) { return t.stop == StopReason::interior_converged; });

    if (all_interior) {
        double spread = 0.0;
        for (std::size_t i = 0; i < traces.size(); ++i)
            for (std::size_t j = i + 1; j < traces.size(); ++j)
                spread = std::max(spread,
                                  step_norm(traces[i].iterates.back(), traces[j].iterates.back()));
        if (spread > 100.0 * tol::eps_fix) {
            out.outcome = Classification::Outcome::undetermined;
            std::ostringstream os;
            os << "multi-start limits disagree (spread " << spread << ")";
            out.diagnostic = os.str();
            return out;
        }
        out.outcome = Classification::Outcome::interior_fixed_point;
        out.zeta = traces.front().iterates.back();
        out.multi_start_spread = spread;
        try {
            out.spectrum = spectrum_summary(jacobian(f, *out.zeta));
        } catch (const numeric_error&) {
            // fixed point too close to the boundary for a differencing step
        }
        return out;
    }

    // Boundary escape: look for a common sink direction.
    const auto* longest = &traces.front();
    for (const IterationTrace& t : traces)
        if (t.iterates.size() > longest->iterates.size()) longest = &t;

    const bool any_boundary = std::any_of(traces.begin(), traces.end(), [](const IterationTrace& t) {
        return t.stop == StopReason::sink_reached || t.stop == StopReason::boundary_proximity ||
               (t.stop == StopReason::max_steps && t.norms.back() > 0.999);
    });

    if (any_boundary) {
        std::optional<BoundaryPoint> tau_hat = opts.tau;
        if (!tau_hat) {
            const BallPoint& zn = longest->iterates.back();
            if (zn.norm() > 0.9) {
                cvec dir = zn.vec();
                const double s = zn.norm();
                for (cnum& c : dir) c /= s;
                tau_hat = BoundaryPoint(std::move(dir));
            }
        }
        if (tau_hat) {
            bool toward_tau = true;
            for (const IterationTrace& t : traces) {
                const cnum ip = inner(t.iterates.back().span(), tau_hat->span());
                if (std::abs(1.0 - ip) > 1e-3) toward_tau = false;
            }
            if (toward_tau) {
                try {
                    out.beta = radial_derivative(f, *tau_hat);
                } catch (const numeric_error& e) {
                    out.outcome = Classification::Outcome::undetermined;
                    out.diagnostic = std::string("orbit reached the boundary but ") + e.what();
                    return out;
                }
                out.outcome = Classification::Outcome::sink_convergence;
                out.tau = tau_hat;
                double m = 0.0;
                if (auto cert = horosphere_certificate(f, *tau_hat)) {
                    m = *cert;
                } else {
                    const HorosphereBoundEstimate est = horosphere_bound(f, *tau_hat, BoundSampler{opts.seed});
                    if (!est.divergent) m = est.sup * (1.0 + 1e-6);
                }
                out.k = m > 0.0 ? k_limit(f, starts.front(), *tau_hat, m)
                                : std::numeric_limits<double>::quiet_NaN();
                return out;
            }
        }
        out.outcome = Classification::Outcome::undetermined;
        out.diagnostic = "orbits reach the boundary without a common direction";
        return out;
    }

    out.outcome = Classification::Outcome::undetermined;
    out.diagnostic = "orbit did not settle within n_max (possible rotation)";
    return out;
}

UniquenessReport boundary_uniqueness_check(const SelfMapExpr& f, const BoundaryPoint& tau,
                                           double m, const std::vector<BoundaryPoint>& candidates) {
    if (!(m > 0.0)) throw std::invalid_argument("boundary_uniqueness_check: m must be positive");
    UniquenessReport rep;
    for (const BoundaryPoint& eta : candidates) {
        CandidateResult row{eta};
        const cvec gap = sub(eta.span(), tau.span());
        row.matches_tau = norm(std::span<const cnum>(gap.data(), gap.size())) <= 1e-9;
        row.fixed_gap = radial_fixed_point_check(f, eta);
        if (row.fixed_gap <= tol::eps_bfp) {
            try {
                row.derivative = radial_derivative(f, eta);
                row.regular = true;
            } catch (const numeric_error&) {
                row.regular = false;
            }
        }
        if (row.matches_tau) {
            rep.tau_accepted = row.regular;
        } else if (row.regular) {
            rep.others_rejected = false;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace hyperball
