#include "hyperball/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperball/dynamics.hpp"
#include "hyperball/selfmap_analysis.hpp"
#include "hyperball/textio.hpp"

namespace hyperball {

namespace {

constexpr std::size_t kIdentitySamples = 10000;  // per dimension
constexpr std::size_t kMapPairDraws = 1000;
constexpr std::size_t kPairsPerInstance = 1000;
constexpr std::size_t kMidpointSamples = 1000;
constexpr std::size_t kStepSamples = 100;

struct CheckBuilder {
    CheckResult r;
    double tol = 0.0;

    CheckBuilder(std::string name, double tolerance) : tol(tolerance) {
        r.name = std::move(name);
        r.worst = std::numeric_limits<double>::quiet_NaN();
    }

    // one-sided: slack must stay above -tol; worst = smallest slack
    void ge(double slack) {
        ++r.samples;
        if (!(slack >= -tol)) ++r.failures;
        if (std::isnan(r.worst) || slack < r.worst) r.worst = slack;
    }

    // two-sided: |residual| must stay below tol; worst = largest magnitude
    void le(double residual) {
        ++r.samples;
        const double mag = std::abs(residual);
        if (!(mag <= tol)) ++r.failures;
        if (std::isnan(r.worst) || mag > r.worst) r.worst = mag;
    }

    void ok(bool good) {
        ++r.samples;
        if (!good) ++r.failures;
    }

    CheckResult done() {
        r.pass = r.failures == 0;
        if (std::isnan(r.worst)) r.worst = 0.0;
        return r;
    }
};

struct Instance {
    double B;
    double a;
    int dim;
    SelfMapPtr map;
    BoundaryPoint tau;
};

std::vector<Instance> siegel_instances(const std::vector<int>& dims, Rng& rng) {
    std::vector<Instance> out;
    for (double B : {1.0, 2.0, 4.0})
        for (double a : {0.25, 1.0, 2.0})
            for (int dim : dims) {
                BoundaryPoint tau = rng.boundary_point(dim);
                out.push_back({B, a, dim, make_siegel_affine(B, a, HoroContext(tau)), tau});
            }
    return out;
}

std::pair<BallPoint, BallPoint> distinct_pair(Rng& rng, int dim, double rmax = 0.95) {
    for (;;) {
        BallPoint z = rng.ball_point(dim, rmax);
        BallPoint w = rng.ball_point(dim, rmax);
        const cvec gap = sub(z.span(), w.span());
        if (norm(std::span<const cnum>(gap.data(), gap.size())) > 1e-4) return {z, w};
    }
}

// unit vector orthogonal to tau (dim >= 2), or a rotated phase in dim 1
BoundaryPoint off_axis_candidate(Rng& rng, const BoundaryPoint& tau) {
    const int n = tau.dim();
    if (n == 1) {
        const cnum phase = std::polar(1.0, rng.uniform(0.5, 5.5));
        return BoundaryPoint({phase * tau.vec()[0]});
    }
    for (;;) {
        cvec v = rng.gaussian_vec(n);
        const cnum proj = inner(std::span<const cnum>(v.data(), v.size()), tau.span());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * tau.vec()[i];
        const double s = norm(std::span<const cnum>(v.data(), v.size()));
        if (s > 1e-6) {
            for (cnum& c : v) c /= s;
            return BoundaryPoint(std::move(v));
        }
    }
}

// ---------------------------------------------------------------- geometry

SuiteReport run_geometry(std::uint64_t seed, const std::vector<int>& dims) {
    SuiteReport rep;
    rep.suite = "geometry";
    Rng rng(seed);

    CheckBuilder sigma_range("sigma_range", 0.0);
    CheckBuilder sigma_diag("sigma_diagonal", tol::eps_id);
    CheckBuilder sigma_strict("sigma_strict_off_diagonal", 0.0);
    CheckBuilder msig("metric_sigma_consistency", tol::eps_id);
    CheckBuilder n3n4_near("metric_identity_near_boundary", tol::eps_id_near);
    CheckBuilder sig_route("sigma_mobius_route", tol::eps_id);
    CheckBuilder rho_sym("rho_symmetry", tol::eps_id);
    CheckBuilder rho_tri("rho_triangle", tol::eps_id);
    CheckBuilder mob_iso("mobius_isometry", tol::eps_id);

    for (int dim : dims) {
        for (std::size_t i = 0; i < kIdentitySamples; ++i) {
            const auto [z, w] = distinct_pair(rng, dim);
            const double s = sigma(z, w);
            sigma_range.ge(std::min(s, 1.0 + tol::eps_id - s));
            sigma_diag.le(sigma(z, z) - 1.0);
            sigma_strict.ge(1.0 - s);  // pairs are at least 1e-4 apart

            const double r = rho(z, w);
            const double th = std::tanh(r);
            msig.le(th * th - (1.0 - s));

            // identity ladder degrades gracefully up to |z| <= 1 - 1e-4
            {
                const BallPoint zn = rng.ball_point(dim, 1.0 - 1e-4);
                const BallPoint wn = rng.ball_point(dim, 1.0 - 1e-4);
                const double sn = sigma(zn, wn);
                const double tn = std::tanh(rho(zn, wn));
                n3n4_near.le(tn * tn - (1.0 - sn));
            }

            const BallPoint mzw = mobius(BallPoint(scale(-1.0, z.span())), w);
            sig_route.le(s - (1.0 - mzw.norm_sq()));

            rho_sym.le(r - rho(w, z));

            const BallPoint v = rng.ball_point(dim);
            rho_tri.ge(rho(z, v) + rho(v, w) - r);

            const BallPoint a = rng.ball_point(dim, 0.9);
            mob_iso.le(rho(mobius(a, z), mobius(a, w)) - r);
        }
    }
    rep.checks.push_back(sigma_range.done());
    rep.checks.push_back(sigma_diag.done());
    rep.checks.push_back(sigma_strict.done());
    rep.checks.push_back(msig.done());
    rep.checks.push_back(n3n4_near.done());
    rep.checks.push_back(sig_route.done());
    rep.checks.push_back(rho_sym.done());
    rep.checks.push_back(rho_tri.done());
    rep.checks.push_back(mob_iso.done());

    // d is not a metric: fixed 1-D witness with |z| != |w|
    {
        CheckBuilder c("d_asymmetry_witness", 0.0);
        const BallPoint z({cnum(0.3, 0.0)});
        const BallPoint w({cnum(0.5, 0.0)});
        c.ge(std::abs(dhoro(z, w) - dhoro(w, z)) - 0.1);
        rep.checks.push_back(c.done());
    }
    {
        CheckBuilder c("horosphere_strictness", 0.0);
        const BoundaryPoint tau = BoundaryPoint::axis(2);
        const BallPoint z = BallPoint::origin(2);
        c.ok(in_horosphere(z, HorosphereParams(tau, 1.5)));
        c.ok(!in_horosphere(z, HorosphereParams(tau, 1.0)));  // d(0,tau) = 1, strict
        rep.checks.push_back(c.done());
    }
    return rep;
}

// ------------------------------------------------------------------ siegel

SuiteReport run_siegel(std::uint64_t seed, const std::vector<int>& dims) {
    SuiteReport rep;
    rep.suite = "siegel";
    Rng rng(seed + 1);

    CheckBuilder hinv("height_inverts_dhoro", tol::eps_id);
    CheckBuilder hshift("height_shift_additivity", tol::eps_id);
    CheckBuilder tcov("tform_shift_covariance", tol::eps_id);
    CheckBuilder seq("sigma_halfspace_equivalence", tol::eps_id);
    CheckBuilder txx("t_form_diagonal_height", tol::eps_id);
    CheckBuilder treb("tform_re_height_bound", tol::eps_id);
    CheckBuilder tcs("axis_cauchy_schwarz", tol::eps_id);
    CheckBuilder tqb("tform_quadratic_bound", tol::eps_id);
    CheckBuilder rt_ball("cayley_roundtrip_ball", 1e-10);
    CheckBuilder rt_half("cayley_roundtrip_halfspace", 1e-10);

    for (int dim : dims) {
        for (std::size_t i = 0; i < kIdentitySamples; ++i) {
            const HoroContext ctx(rng.boundary_point(dim));
            const BallPoint z = rng.ball_point(dim);
            const BallPoint w = rng.ball_point(dim);

            const SiegelPoint cz = cayley(z, ctx);
            hinv.le(cz.height() * dhoro(z, ctx.tau()) - 1.0);

            const cvec x = rng.gaussian_vec(dim);
            const cvec y = rng.gaussian_vec(dim);
            const double a = rng.uniform(0.05, 2.0);

            hshift.le(s_height(axpy(a, ctx.tau_span(), x), ctx) - s_height(x, ctx) - a);

            const cvec xs = axpy(-a, ctx.tau_span(), x);
            const cvec ys = axpy(-a, ctx.tau_span(), y);
            tcov.le(std::abs(t_form(xs, ys, ctx) - (t_form(x, y, ctx) - 2.0 * a)));

            const SiegelPoint cw = cayley(w, ctx);
            seq.le(sigma_via_siegel(cz, cw) - sigma(z, w));

            txx.le(std::abs(t_form(x, x, ctx) - 2.0 * s_height(x, ctx)));

            const cnum txy = t_form(x, y, ctx);
            treb.ge(txy.real() - s_height(x, ctx) - s_height(y, ctx));

            const cvec d = sub(std::span<const cnum>(x.data(), x.size()),
                               std::span<const cnum>(y.data(), y.size()));
            tcs.ge(norm_sq(std::span<const cnum>(d.data(), d.size())) -
                   std::norm(inner(std::span<const cnum>(d.data(), d.size()), ctx.tau_span())));

            // x, y in the half-space with min(S) >= shift
            {
                const double sx = cz.height();
                const double sy = cw.height();
                const double shift = rng.uniform(0.05, 1.0) * std::min(sx, sy);
                const cnum t = t_form(cz.span(), cw.span(), ctx);
                const double lhs = std::norm(t) - 4.0 * shift * t.real() + 4.0 * shift * shift;
                const double gap = sx + sy - 2.0 * shift;
                tqb.ge(lhs - gap * gap);
            }

            const BallPoint back = cayley_inv(cz);
            const cvec gap = sub(back.span(), z.span());
            rt_ball.le(norm(std::span<const cnum>(gap.data(), gap.size())));

            const SiegelPoint xh(axpy(rng.uniform(0.0, 2.0), ctx.tau_span(), cz.span()), ctx);
            const SiegelPoint fwd = cayley(cayley_inv(xh), ctx);
            const cvec hgap = sub(fwd.span(), xh.span());
            rt_half.le(norm(std::span<const cnum>(hgap.data(), hgap.size())) /
                       (1.0 + norm(xh.span())));
        }
    }
    rep.checks.push_back(hinv.done());
    rep.checks.push_back(hshift.done());
    rep.checks.push_back(tcov.done());
    rep.checks.push_back(seq.done());
    rep.checks.push_back(txx.done());
    rep.checks.push_back(treb.done());
    rep.checks.push_back(tcs.done());
    rep.checks.push_back(tqb.done());
    rep.checks.push_back(rt_ball.done());
    rep.checks.push_back(rt_half.done());
    return rep;
}

// ------------------------------------------------------------ nonexpansive

SuiteReport run_nonexpansive(std::uint64_t seed, const std::vector<int>& dims) {
    SuiteReport rep;
    rep.suite = "nonexpansive";
    Rng rng(seed + 2);

    {
        CheckBuilder sp("schwarz_pick_all_variants", tol::eps_id);
        for (std::size_t i = 0; i < kMapPairDraws; ++i) {
            const int dim = dims[i % dims.size()];
            const SelfMapPtr f = random_selfmap_variant(rng, dim, i % 8);  // full coverage
            const auto [z, w] = distinct_pair(rng, dim);
            sp.ge(sigma(evaluate(*f, z), evaluate(*f, w)) - sigma(z, w));
        }
        rep.checks.push_back(sp.done());
    }

    std::vector<Instance> instances = siegel_instances(dims, rng);

    {
        CheckBuilder hb("horosphere_bound_certified", tol::eps_id);
        for (const Instance& inst : instances) {
            BoundSampler sampler;
            sampler.seed = rng.raw();
            sampler.interior_samples = 500;
            sampler.directions = 24;
            const HorosphereBoundEstimate est = horosphere_bound(*inst.map, inst.tau, sampler);
            hb.ok(!est.divergent);
            hb.ge(1.0 / inst.a - est.sup);
        }
        rep.checks.push_back(hb.done());
    }

    {
        CheckBuilder chain("coefficient_chain", tol::eps_id);
        CheckBuilder prange("p_range", 0.0);
        CheckBuilder defnc("strong_nonexpansivity", tol::eps_id);
        CheckBuilder sandwich("sigma_sandwich", tol::eps_id);
        CheckBuilder cident("condition_c_identity", tol::eps_id);
        for (const Instance& inst : instances) {
            const double m = 1.0 / inst.a;
            for (std::size_t i = 0; i < kPairsPerInstance; ++i) {
                const auto [z, w] = distinct_pair(rng, inst.dim);
                const BcpCoefficients bcp = bcp_coefficients(*inst.map, z, w, inst.tau, m);
                chain.ge(bcp.b);                  // 0 < b
                chain.ge(bcp.c - bcp.b);          // b <= c
                chain.ge(1.0 - bcp.c);            // c < 1
                prange.ge(std::min(bcp.p + tol::eps_id, 1.0 + tol::eps_id - bcp.p));

                const double s = sigma(z, w);
                const double sf = sigma(evaluate(*inst.map, z), evaluate(*inst.map, w));
                defnc.ge(sf - ((1.0 - bcp.p) * s + bcp.p));
                sandwich.ge(sf - s);
                sandwich.ge(bcp.b / bcp.c - sf);
                cident.le(((1.0 - bcp.p) * s + bcp.p) - ((1.0 - bcp.c) * s + bcp.b));
            }
        }
        rep.checks.push_back(chain.done());
        rep.checks.push_back(prange.done());
        rep.checks.push_back(defnc.done());
        rep.checks.push_back(sandwich.done());
        rep.checks.push_back(cident.done());
    }

    {
        CheckBuilder klim("k_limit_consistency", tol::eta_k);
        CheckBuilder kmb("k_limit_m_bound", tol::eps_id);
        for (const Instance& inst : instances) {
            const double m = 1.0 / inst.a;
            const double beta = radial_derivative(*inst.map, inst.tau);
            const BallPoint z1 = rng.ball_point(inst.dim, 0.6);
            const BallPoint z2 = rng.ball_point(inst.dim, 0.6);
            const double k1 = k_limit(*inst.map, z1, inst.tau, m);
            const double k2 = k_limit(*inst.map, z2, inst.tau, m);
            const double k_ref = 2.0 * beta / m;
            klim.le((k1 - k_ref) / k_ref);
            klim.le((k1 - k2) / k1);
            // equality holds for this family, so the exact derivative 1/B keeps
            // the residual inside the measurement budget of k alone
            kmb.ge(m - 2.0 / (inst.B * k1));
        }
        rep.checks.push_back(klim.done());
        rep.checks.push_back(kmb.done());
    }

    {
        CheckBuilder vals("radial_derivative_values", 1e-6);
        CheckBuilder routes("radial_route_agreement", tol::eta_rad);

        const SelfMapPtr disk_auto = make_mobius_auto(BallPoint({cnum(0.5, 0.0)}));
        const BoundaryPoint one = BoundaryPoint::axis(1);
        vals.le(radial_derivative(*disk_auto, one) - 1.0 / 3.0);
        {
            const RadialRoutes r = radial_derivative_routes(*disk_auto, one);
            routes.le((r.inner_route - r.norm_route) /
                      std::max(std::abs(r.inner_route), std::abs(r.norm_route)));
        }
        for (const Instance& inst : instances) {
            vals.le(radial_derivative(*inst.map, inst.tau) - 1.0 / inst.B);
            const RadialRoutes r = radial_derivative_routes(*inst.map, inst.tau);
            routes.le((r.inner_route - r.norm_route) /
                      std::max(std::abs(r.inner_route), std::abs(r.norm_route)));
        }
        rep.checks.push_back(vals.done());
        rep.checks.push_back(routes.done());
    }
    return rep;
}

// ------------------------------------------------------------------- rates

SuiteReport run_rates(std::uint64_t seed, const std::vector<int>& dims) {
    SuiteReport rep;
    rep.suite = "rates";
    Rng rng(seed + 3);
    std::vector<Instance> instances = siegel_instances(dims, rng);

    {
        CheckBuilder step("one_step_inequality", tol::eps_rate);
        CheckBuilder eq1("one_step_equality_parabolic", tol::eps_id);
        CheckBuilder dom("rate_domination", tol::eps_rate);
        CheckBuilder tight("parabolic_exactness", 1e-8);
        CheckBuilder mono("monotone_descent", 0.0);
        for (const Instance& inst : instances) {
            const double beta = 1.0 / inst.B;
            const double k = 2.0 * inst.a / inst.B;
            for (std::size_t i = 0; i < kStepSamples; ++i) {
                const BallPoint z = rng.ball_point(inst.dim);
                double resid = 0.0;
                step.ok(step_inequality_check(*inst.map, z, inst.tau, beta, k, &resid));
                step.ge(resid);
                if (inst.B == 1.0) {
                    const double lhs = 1.0 / dhoro(evaluate(*inst.map, z), inst.tau);
                    const double rhs = inst.a + 1.0 / dhoro(z, inst.tau);
                    eq1.le((lhs - rhs) / (1.0 + lhs));
                }
            }
        }
        for (const Instance& inst : instances) {
            const double beta = 1.0 / inst.B;
            const double k = 2.0 * inst.a / inst.B;
            std::vector<BallPoint> starts{BallPoint::origin(inst.dim),
                                          rng.ball_point(inst.dim, 0.4),
                                          rng.ball_point(inst.dim, 0.4)};
            for (const BallPoint& z0 : starts) {
                const IterationTrace tr =
                    iterate(*inst.map, z0, IterationLimits{200}, inst.tau);
                const double d0 = tr.d_to_tau.front();
                const RateReport rr = verify_rate(tr, RateParams{beta, k, d0});
                dom.ok(rr.pass);
                dom.ge(1.0 + tol::eps_rate - rr.worst_ratio);
                for (std::size_t n = 0; n + 1 < tr.d_to_tau.size(); ++n) {
                    mono.ge(tr.d_to_tau[n] - tr.d_to_tau[n + 1]);
                    // step inequality along the orbit itself, while 1/d is
                    // small enough for an absolute slack to mean anything
                    // (the subtraction noise of 1/d grows like 1e-15/d^2)
                    if (tr.d_to_tau[n] >= 1e-2) {
                        double resid = 0.0;
                        step.ok(step_inequality_check(*inst.map, tr.iterates[n], inst.tau,
                                                      beta, k, &resid));
                        step.ge(resid);
                    }
                }
                if (inst.B == 1.0) {
                    for (std::size_t n = 0; n < tr.d_to_tau.size(); ++n)
                        tight.le(1.0 / tr.d_to_tau[n] -
                                 (1.0 / d0 + static_cast<double>(n) * inst.a));
                }
            }
        }
        rep.checks.push_back(step.done());
        rep.checks.push_back(eq1.done());
        rep.checks.push_back(dom.done());
        rep.checks.push_back(tight.done());
        rep.checks.push_back(mono.done());
    }

    {
        CheckBuilder julia("julia_bound", tol::eps_rate);
        const SelfMapPtr disk_auto = make_mobius_auto(BallPoint({cnum(0.5, 0.0)}));
        const BoundaryPoint one = BoundaryPoint::axis(1);
        for (std::size_t i = 0; i < 200; ++i) {
            double resid = 0.0;
            julia.ok(julia_check(*disk_auto, rng.ball_point(1), one, 1.0 / 3.0, &resid));
            julia.ge(resid);
        }
        const SelfMapPtr ident = make_identity(2);
        const BoundaryPoint e0 = BoundaryPoint::axis(2);
        for (std::size_t i = 0; i < 200; ++i) {
            double resid = 0.0;
            julia.ok(julia_check(*ident, rng.ball_point(2), e0, 1.0, &resid));
            julia.le(resid);  // identity: equality
        }
        for (const Instance& inst : instances) {
            double resid = 0.0;
            julia.ok(julia_check(*inst.map, rng.ball_point(inst.dim), inst.tau, 1.0 / inst.B,
                                 &resid));
            julia.ge(resid);
        }
        rep.checks.push_back(julia.done());
    }

    {
        CheckBuilder mid("midpoint_inequality", tol::eps_rate);
        for (const Instance& inst : instances) {
            for (std::size_t i = 0; i < kMidpointSamples; ++i) {
                double resid = 0.0;
                mid.ok(midpoint_inequality_check(*inst.map, rng.ball_point(inst.dim), inst.tau,
                                                 &resid));
                mid.ge(resid);
            }
        }
        rep.checks.push_back(mid.done());
    }

    {
        CheckBuilder sink("sink_invariance", 0.0);
        const std::vector<double> levels{0.5, 1.0, 2.0, 5.0};
        for (const Instance& inst : instances)
            sink.ok(sink_invariance_check(*inst.map, inst.tau, levels, rng.raw()));
        rep.checks.push_back(sink.done());
    }

    {
        CheckBuilder ci("classification_interior", 0.0);
        CheckBuilder spread("interior_multi_start_spread", 1e-10);
        CheckBuilder contraction("interior_rho_contraction", 0.0);

        std::vector<SelfMapPtr> eh_maps;
        eh_maps.push_back(make_linear_contraction(cmat::scaled_identity(2, cnum(0.5, 0.0))));
        eh_maps.push_back(make_compose(
            {make_mobius_auto(BallPoint({cnum(0.2, 0.05), cnum(0.0, 0.1)})),
             make_linear_contraction(cmat::scaled_identity(2, cnum(0.45, 0.1)))}));
        eh_maps.push_back(make_convex_combination(
            {0.4, 0.6},
            {make_constant(BallPoint({cnum(0.3, 0.1), cnum(-0.2, 0.0), cnum(0.0, 0.25)})),
             make_linear_contraction(cmat::scaled_identity(3, cnum(0.0, 0.4)))}));

        for (const SelfMapPtr& f : eh_maps) {
            ClassifyOptions opts;
            opts.seed = rng.raw();
            const Classification cl = classify(*f, opts);
            ci.ok(cl.outcome == Classification::Outcome::interior_fixed_point);
            ci.ok(cl.strictly_inside_image);
            ci.ok(cl.spectrum && !cl.spectrum->radius_is_norm_bound);
            if (cl.spectrum) ci.ge(1.0 - cl.spectrum->spectral_radius);
            spread.le(cl.multi_start_spread);

            double q = 0.0;
            for (std::size_t i = 0; i < 200; ++i) {
                const auto [z, w] = distinct_pair(rng, f->dim, 0.9);
                q = std::max(q, rho(evaluate(*f, z), evaluate(*f, w)) / rho(z, w));
            }
            contraction.ge(1.0 - q);
        }
        rep.checks.push_back(ci.done());
        rep.checks.push_back(spread.done());
        rep.checks.push_back(contraction.done());
    }

    {
        CheckBuilder cs("classification_sink", 0.0);
        CheckBuilder cs_beta("classification_sink_beta", 1e-6);
        CheckBuilder cs_k("classification_sink_k", tol::eta_k);
        for (const Instance& inst : instances) {
            ClassifyOptions opts;
            opts.seed = rng.raw();
            opts.tau = inst.tau;
            const Classification cl = classify(*inst.map, opts);
            cs.ok(cl.outcome == Classification::Outcome::sink_convergence);
            if (cl.outcome != Classification::Outcome::sink_convergence) continue;
            const cvec gap = sub(cl.tau->span(), inst.tau.span());
            cs.ok(norm(std::span<const cnum>(gap.data(), gap.size())) <= 1e-9);
            cs_beta.le(cl.beta - 1.0 / inst.B);
            const double k_ref = 2.0 * inst.a / inst.B;
            cs_k.le((cl.k - k_ref) / k_ref);
        }
        rep.checks.push_back(cs.done());
        rep.checks.push_back(cs_beta.done());
        rep.checks.push_back(cs_k.done());
    }

    {
        CheckBuilder bu("boundary_uniqueness", 0.0);
        for (const Instance& inst : instances) {
            std::vector<BoundaryPoint> candidates;
            candidates.push_back(BoundaryPoint(scale(-1.0, inst.tau.span())));
            candidates.push_back(off_axis_candidate(rng, inst.tau));
            candidates.push_back(rng.boundary_point(inst.dim));
            candidates.push_back(inst.tau);
            const UniquenessReport ur =
                boundary_uniqueness_check(*inst.map, inst.tau, 1.0 / inst.a, candidates);
            bu.ok(ur.tau_accepted);
            bu.ok(ur.others_rejected);
        }
        rep.checks.push_back(bu.done());
    }

    {
        CheckBuilder und("classification_undetermined_rotation", 0.0);
        cmat u(2);
        u.at(0, 0) = std::polar(1.0, 1.0);
        u.at(1, 1) = std::polar(1.0, 0.7);
        const SelfMapPtr rot = make_unitary(u);
        ClassifyOptions opts;
        opts.seed = rng.raw();
        opts.n_max = 1500;
        const Classification cl = classify(*rot, opts);
        und.ok(cl.outcome == Classification::Outcome::undetermined);
        rep.checks.push_back(und.done());
    }
    return rep;
}

}  // namespace

cmat random_contraction_matrix(Rng& rng, int dim) {
    cmat m(dim);
    for (cnum& c : m.a) c = rng.cnormal();
    const double op = operator_norm(m);
    const double target = rng.uniform(0.2, 0.999);
    for (cnum& c : m.a) c *= target / op;
    return m;
}

cmat random_unitary_matrix(Rng& rng, int dim) {
    std::vector<cvec> cols;
    while (static_cast<int>(cols.size()) < dim) {
        cvec v = rng.gaussian_vec(dim);
        for (int pass = 0; pass < 2; ++pass) {  // MGS, re-orthogonalized
            for (const cvec& c : cols) {
                const cnum proj = inner(std::span<const cnum>(v.data(), v.size()),
                                        std::span<const cnum>(c.data(), c.size()));
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= proj * c[i];
            }
        }
        const double s = norm(std::span<const cnum>(v.data(), v.size()));
        if (s < 1e-6) continue;
        for (cnum& c : v) c /= s;
        cols.push_back(std::move(v));
    }
    cmat u(dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) u.at(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    return u;
}

SelfMapPtr random_selfmap(Rng& rng, int dim, bool allow_composite) {
    return random_selfmap_variant(rng, dim, rng.index(allow_composite ? 8 : 6));
}

SelfMapPtr random_selfmap_variant(Rng& rng, int dim, std::size_t variant) {
    switch (variant) {
        case 0: return make_identity(dim);
        case 1: return make_constant(rng.ball_point(dim, 0.9));
        case 2: return make_linear_contraction(random_contraction_matrix(rng, dim));
        case 3: return make_unitary(random_unitary_matrix(rng, dim));
        case 4: return make_mobius_auto(rng.ball_point(dim, 0.9));
        case 5:
            return make_siegel_affine(rng.uniform(1.0, 4.0), rng.uniform(0.0, 2.0),
                                      HoroContext(rng.boundary_point(dim)));
        case 6: {
            std::vector<SelfMapPtr> parts;
            const std::size_t count = 2 + rng.index(2);
            for (std::size_t i = 0; i < count; ++i)
                parts.push_back(random_selfmap(rng, dim, false));
            return make_compose(std::move(parts));
        }
        default: {
            const std::size_t count = 2 + rng.index(2);
            std::vector<SelfMapPtr> parts;
            std::vector<double> weights;
            double sum = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                parts.push_back(random_selfmap(rng, dim, false));
                weights.push_back(rng.uniform(0.1, 1.0));
                sum += weights.back();
            }
            for (double& w : weights) w /= sum;
            return make_convex_combination(std::move(weights), std::move(parts));
        }
    }
}

std::vector<SuiteReport> run_suites(const std::string& which, std::uint64_t seed,
                                    const std::vector<int>& dims) {
    if (dims.empty()) throw std::invalid_argument("run_suites: empty dimension list");
    for (int d : dims)
        if (d < 1) throw std::invalid_argument("run_suites: dimensions must be >= 1");
    std::vector<SuiteReport> out;
    if (which == "geometry" || which == "all") out.push_back(run_geometry(seed, dims));
    if (which == "siegel" || which == "all") out.push_back(run_siegel(seed, dims));
    if (which == "nonexpansive" || which == "all") out.push_back(run_nonexpansive(seed, dims));
    if (which == "rates" || which == "all") out.push_back(run_rates(seed, dims));
    if (out.empty()) throw std::invalid_argument("unknown suite '" + which + "'");
    return out;
}

std::string format_report(const std::vector<SuiteReport>& reports, const std::string& which,
                          std::uint64_t seed, const std::vector<int>& dims) {
    std::ostringstream os;
    os << "verify suite=" << which << " seed=" << seed << " dims=";
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << '\n';
    std::size_t total = 0;
    std::size_t passed = 0;
    for (const SuiteReport& rep : reports) {
        for (const CheckResult& c : rep.checks) {
            ++total;
            if (c.pass) ++passed;
            os << (c.pass ? "[PASS] " : "[FAIL] ") << rep.suite << '/' << c.name
               << " samples=" << c.samples << " failures=" << c.failures
               << " worst=" << fmt_g17(c.worst);
            if (!c.note.empty()) os << " note=" << c.note;
            os << '\n';
        }
    }
    os << "result: " << passed << '/' << total << " checks passed\n";
    return os.str();
}

}  // namespace hyperball
