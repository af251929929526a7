#include <doctest.h>

#include "hyperball/dynamics.hpp"
#include "hyperball/rng.hpp"
#include "hyperball/selfmap_analysis.hpp"

using namespace hyperball;

namespace {

const BoundaryPoint kOne({cnum(1.0, 0.0)});

SelfMapPtr siegel_affine_1d(double B, double a) {
    return make_siegel_affine(B, a, HoroContext(kOne));
}

}  // namespace

TEST_CASE("iterate stops on a constant map") {
    Rng rng(89);
    const BallPoint c = rng.ball_point(2, 0.5);
    const IterationTrace tr =
        iterate(*make_constant(c), rng.ball_point(2), IterationLimits{100});
    // z0, c, c: the zero step between the two copies ends the orbit
    REQUIRE(tr.iterates.size() == 3);
    CHECK(tr.stop == StopReason::interior_converged);
    CHECK(tr.iterates[1].vec() == c.vec());
    CHECK(tr.iterates[2].vec() == c.vec());
}

TEST_CASE("iterate halves norms under 0.5 I") {
    const SelfMapPtr half = make_linear_contraction(cmat::scaled_identity(1, cnum(0.5, 0.0)));
    const IterationTrace tr = iterate(*half, BallPoint({cnum(0.5, 0.0)}), IterationLimits{50});
    CHECK(tr.stop == StopReason::interior_converged);
    for (std::size_t n = 0; n + 1 < tr.norms.size(); ++n)
        CHECK(tr.norms[n + 1] == doctest::Approx(tr.norms[n] / 2.0).epsilon(1e-12));
}

TEST_CASE("parabolic telescoping: 1/d increments by a") {
    const SelfMapPtr f = siegel_affine_1d(1.0, 1.0);
    const IterationTrace tr = iterate(*f, BallPoint::origin(1), IterationLimits{100}, kOne);
    REQUIRE(tr.d_to_tau.size() == 101);
    for (std::size_t n = 0; n < tr.d_to_tau.size(); ++n)
        CHECK(1.0 / tr.d_to_tau[n] == doctest::Approx(1.0 + static_cast<double>(n)).epsilon(1e-10));
}

TEST_CASE("rate bound formula") {
    CHECK(rate_bound(RateParams{1.0, 1.0, 2.0}, 3) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(rate_bound(RateParams{1.0, 0.7, 1.3}, 0) == 1.0);
    // monotone, and vanishing for beta < 1
    double prev = 10.0;
    for (std::size_t n = 0; n < 60; ++n) {
        const double a = rate_bound(RateParams{0.5, 1.0, 1.0}, n);
        CHECK(a <= prev);
        prev = a;
    }
    CHECK(prev < 1e-15);
    CHECK_THROWS_AS(rate_bound(RateParams{1.5, 1.0, 1.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(rate_bound(RateParams{0.5, -1.0, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("verify_rate is tight for the parabolic family") {
    const SelfMapPtr f = siegel_affine_1d(1.0, 0.5);
    const IterationTrace tr = iterate(*f, BallPoint::origin(1), IterationLimits{200}, kOne);
    const RateReport rr = verify_rate(tr, RateParams{1.0, 1.0, tr.d_to_tau.front()});
    CHECK(rr.pass);
    CHECK(rr.violations == 0);
    CHECK(rr.worst_ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rr.ratios.front() == 1.0);  // n = 0 row
}

TEST_CASE("verify_rate dominates the hyperbolic family") {
    const SelfMapPtr f = siegel_affine_1d(2.0, 1.0);
    const IterationTrace tr = iterate(*f, BallPoint::origin(1), IterationLimits{200}, kOne);
    const RateReport rr = verify_rate(tr, RateParams{0.5, 1.0, tr.d_to_tau.front()});
    CHECK(rr.pass);
    CHECK(rr.worst_ratio <= 1.0 + 1e-12);
    for (double r : rr.ratios) CHECK(r <= 1.0 + 1e-12);
}

TEST_CASE("one-step inequality") {
    Rng rng(97);
    // parabolic case: equality
    const SelfMapPtr f1 = siegel_affine_1d(1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double resid = 0.0;
        CHECK(step_inequality_check(*f1, rng.ball_point(1), kOne, 1.0, 2.0, &resid));
        CHECK(std::abs(resid) < 1e-9 * (1.0 + 40.0));
    }
    // hyperbolic case in several dimensions
    for (int dim : {1, 2, 8}) {
        const BoundaryPoint tau = rng.boundary_point(dim);
        const SelfMapPtr f = make_siegel_affine(2.0, 1.0, HoroContext(tau));
        for (int i = 0; i < 50; ++i)
            CHECK(step_inequality_check(*f, rng.ball_point(dim), tau, 0.5, 1.0));
    }
    // k -> 0 degenerates to plain horosphere monotonicity
    for (int i = 0; i < 50; ++i) {
        const BallPoint z = rng.ball_point(1);
        double resid = 0.0;
        CHECK(step_inequality_check(*f1, z, kOne, 1.0, 1e-12, &resid));
        CHECK(1.0 / dhoro(evaluate(*f1, z), kOne) >= 1.0 / dhoro(z, kOne));
    }
}

TEST_CASE("julia bound") {
    Rng rng(101);
    // identity: exact equality at L = 1
    for (int i = 0; i < 50; ++i) {
        double resid = 0.0;
        CHECK(julia_check(*make_identity(2), rng.ball_point(2), BoundaryPoint::axis(2), 1.0,
                          &resid));
        CHECK(std::abs(resid) < 1e-12);
    }
    // disk automorphism at its attracting point: L = 1/3, equality as well
    const SelfMapPtr disk_auto = make_mobius_auto(BallPoint({cnum(0.5, 0.0)}));
    for (int i = 0; i < 50; ++i) {
        double resid = 0.0;
        CHECK(julia_check(*disk_auto, rng.ball_point(1), kOne, 1.0 / 3.0, &resid));
        CHECK(std::abs(resid) < 1e-10);
    }
    // strict for the expanding half-space family
    const SelfMapPtr f = siegel_affine_1d(2.0, 1.0);
    for (int i = 0; i < 50; ++i)
        CHECK(julia_check(*f, rng.ball_point(1), kOne, 0.5));
}

TEST_CASE("sink invariance") {
    const std::vector<double> levels{0.5, 1.0, 2.0, 5.0};
    CHECK(sink_invariance_check(*siegel_affine_1d(1.0, 1.0), kOne, levels, 3));
    CHECK(sink_invariance_check(*make_identity(2), BoundaryPoint::axis(2), levels, 5));

    // a generic automorphism moves some horosphere off a non-sink direction
    const SelfMapPtr auto2 = make_mobius_auto(BallPoint({cnum(0.5, 0.0), cnum(0.3, 0.0)}));
    std::string diag;
    CHECK_FALSE(sink_invariance_check(*auto2, BoundaryPoint::axis(2, 1), levels, 7, &diag));
    CHECK(!diag.empty());
}

TEST_CASE("midpoint inequality") {
    Rng rng(103);
    for (const SelfMapPtr& f : {siegel_affine_1d(1.0, 1.0), siegel_affine_1d(2.0, 1.0)}) {
        for (int i = 0; i < 100; ++i) {
            double resid = 0.0;
            CHECK(midpoint_inequality_check(*f, rng.ball_point(1), kOne, &resid));
            CHECK(resid >= -1e-12);
        }
    }
}

TEST_CASE("classification: interior contraction") {
    const SelfMapPtr f = make_compose(
        {make_mobius_auto(BallPoint({cnum(0.2, 0.0), cnum(0.0, 0.1)})),
         make_linear_contraction(cmat::scaled_identity(2, cnum(0.5, 0.0)))});
    ClassifyOptions opts;
    opts.seed = 11;
    const Classification cl = classify(*f, opts);
    CHECK(cl.outcome == Classification::Outcome::interior_fixed_point);
    CHECK(cl.strictly_inside_image);
    CHECK(cl.multi_start_spread <= 1e-10);
    REQUIRE(cl.zeta.has_value());
    // the limit is a fixed point
    const BallPoint fz = evaluate(*f, *cl.zeta);
    const cvec gap = sub(fz.span(), cl.zeta->span());
    CHECK(norm(std::span<const cnum>(gap.data(), gap.size())) < 1e-10);
    REQUIRE(cl.spectrum.has_value());
    CHECK(cl.spectrum->spectral_radius < 1.0);
}

TEST_CASE("classification: sink family") {
    const SelfMapPtr f = siegel_affine_1d(1.0, 1.0);
    ClassifyOptions opts;
    opts.seed = 13;
    opts.tau = kOne;
    const Classification cl = classify(*f, opts);
    CHECK(cl.outcome == Classification::Outcome::sink_convergence);
    CHECK(cl.beta == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(cl.k == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("classification: rotation stays undetermined") {
    cmat u(2);
    u.at(0, 0) = std::polar(1.0, 1.0);
    u.at(1, 1) = std::polar(1.0, 0.7);
    ClassifyOptions opts;
    opts.seed = 17;
    opts.n_max = 800;
    const Classification cl = classify(*make_unitary(u), opts);
    CHECK(cl.outcome == Classification::Outcome::undetermined);
    CHECK(!cl.diagnostic.empty());
}

TEST_CASE("boundary uniqueness") {
    Rng rng(107);
    {
        const SelfMapPtr f = make_siegel_affine(2.0, 1.0, HoroContext(BoundaryPoint::axis(2)));
        const BoundaryPoint tau = BoundaryPoint::axis(2);
        const std::vector<BoundaryPoint> candidates{
            BoundaryPoint(scale(-1.0, tau.span())), BoundaryPoint::axis(2, 1), tau};
        const UniquenessReport rep = boundary_uniqueness_check(*f, tau, 1.0, candidates);
        CHECK(rep.tau_accepted);
        CHECK(rep.others_rejected);
        REQUIRE(rep.rows.size() == 3);
        CHECK_FALSE(rep.rows[0].regular);
        CHECK_FALSE(rep.rows[1].regular);
        CHECK(rep.rows[2].regular);
    }
    {
        // constant map: nothing on the boundary is fixed, tau included
        const BoundaryPoint tau = kOne;
        const SelfMapPtr f = make_constant(BallPoint::origin(1));
        const UniquenessReport rep = boundary_uniqueness_check(
            *f, tau, dhoro(BallPoint::origin(1), tau) * 1.001,
            {tau, BoundaryPoint({cnum(-1.0, 0.0)})});
        CHECK_FALSE(rep.tau_accepted);
        CHECK(rep.others_rejected);
    }
    {
        // the unshifted disk automorphism has a second regular boundary fixed
        // point at -1 (and, consistently, no horosphere certificate)
        const SelfMapPtr disk_auto = make_mobius_auto(BallPoint({cnum(0.5, 0.0)}));
        CHECK(radial_fixed_point_check(*disk_auto, BoundaryPoint({cnum(-1.0, 0.0)})) < 1e-9);
        const double repelling =
            radial_derivative(*disk_auto, BoundaryPoint({cnum(-1.0, 0.0)}));
        CHECK(repelling == doctest::Approx(3.0).epsilon(1e-8));
        CHECK_FALSE(horosphere_certificate(*disk_auto, kOne).has_value());
    }
}

TEST_CASE("monotone descent along certified traces") {
    Rng rng(109);
    for (double B : {1.0, 2.0}) {
        const SelfMapPtr f = siegel_affine_1d(B, 0.5);
        const IterationTrace tr = iterate(*f, rng.ball_point(1, 0.4), IterationLimits{200}, kOne);
        for (std::size_t n = 0; n + 1 < tr.d_to_tau.size(); ++n)
            CHECK(tr.d_to_tau[n + 1] < tr.d_to_tau[n]);
    }
}
