#include <doctest.h>

#include "hyperball/selfmap.hpp"
#include "hyperball/selfmap_analysis.hpp"
#include "hyperball/suites.hpp"

using namespace hyperball;

namespace {

SelfMapPtr siegel_affine_1d(double B, double a) {
    return make_siegel_affine(B, a, HoroContext(BoundaryPoint({cnum(1.0, 0.0)})));
}

const BoundaryPoint kOne({cnum(1.0, 0.0)});

}  // namespace

TEST_CASE("factory validation") {
    cmat big = cmat::scaled_identity(2, cnum(1.5, 0.0));
    CHECK_THROWS_AS(make_linear_contraction(big), std::invalid_argument);
    CHECK_NOTHROW(make_linear_contraction(cmat::identity(2)));

    cmat not_unitary = cmat::scaled_identity(2, cnum(0.5, 0.0));
    CHECK_THROWS_AS(make_unitary(not_unitary), std::invalid_argument);

    CHECK_THROWS_AS(make_convex_combination({0.5, 0.6}, {make_identity(1), make_identity(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_convex_combination({-0.5, 1.5}, {make_identity(1), make_identity(1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_siegel_affine(0.5, 1.0, HoroContext(kOne)), std::invalid_argument);
    CHECK_THROWS_AS(make_siegel_affine(1.0, -0.1, HoroContext(kOne)), std::invalid_argument);
    CHECK_THROWS_AS(make_compose({make_identity(2), make_identity(3)}), std::invalid_argument);
}

TEST_CASE("evaluation basics") {
    Rng rng(61);
    const BallPoint z = rng.ball_point(3);
    CHECK(evaluate(*make_identity(), z).vec() == z.vec());

    // m_a then m_{-a} is the identity
    const BallPoint a = rng.ball_point(3, 0.8);
    const SelfMapPtr round = make_compose(
        {make_mobius_auto(BallPoint(scale(-1.0, a.span()))), make_mobius_auto(a)});
    const BallPoint back = evaluate(*round, z);
    const cvec gap = sub(back.span(), z.span());
    CHECK(norm(std::span<const cnum>(gap.data(), gap.size())) < 1e-12);

    // half-space chain at the origin: C(0) = 1, 1*1 + 1 = 2, back to 1/3
    CHECK(evaluate(*siegel_affine_1d(1.0, 1.0), BallPoint::origin(1)).vec()[0].real() ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    CHECK_THROWS_AS(evaluate(*make_identity(2), BallPoint::origin(3)), std::invalid_argument);
}

TEST_CASE("siegel affine height recursion") {
    Rng rng(67);
    for (int dim : {1, 2, 8}) {
        const BoundaryPoint tau = rng.boundary_point(dim);
        const HoroContext ctx(tau);
        for (double B : {1.0, 2.0, 4.0}) {
            for (double a : {0.25, 1.0}) {
                const SelfMapPtr f = make_siegel_affine(B, a, ctx);
                for (int i = 0; i < 50; ++i) {
                    const BallPoint z = rng.ball_point(dim);
                    const double s_in = cayley(z, ctx).height();
                    const double s_out = cayley(evaluate(*f, z), ctx).height();
                    CHECK(s_out == doctest::Approx(B * s_in + a).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("radial fixed point check") {
    // identity: |F(r tau) - tau| = 1 - r, so the schedule tail sits at 2^-33
    CHECK(radial_fixed_point_check(*make_identity(2), BoundaryPoint::axis(2)) < 1e-9);
    CHECK(radial_fixed_point_check(*siegel_affine_1d(2.0, 1.0), kOne) < 1e-6);
    // 0.5 I: F(r tau) = r/2 tau stays far from tau
    const SelfMapPtr half = make_linear_contraction(cmat::scaled_identity(2, cnum(0.5, 0.0)));
    CHECK(radial_fixed_point_check(*half, BoundaryPoint::axis(2)) ==
          doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("radial derivative") {
    CHECK(radial_derivative(*make_identity(2), BoundaryPoint::axis(2)) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // disk automorphism (z+c)/(1+cz), c = 0.5: derivative (1-c)/(1+c) = 1/3
    const SelfMapPtr disk_auto = make_mobius_auto(BallPoint({cnum(0.5, 0.0)}));
    CHECK(radial_derivative(*disk_auto, kOne) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    CHECK(radial_derivative(*siegel_affine_1d(2.0, 0.5), kOne) ==
          doctest::Approx(0.5).epsilon(1e-8));
    CHECK(radial_derivative(*siegel_affine_1d(1.0, 2.0), kOne) ==
          doctest::Approx(1.0).epsilon(1e-8));

    // not a boundary fixed point
    const SelfMapPtr half = make_linear_contraction(cmat::scaled_identity(1, cnum(0.5, 0.0)));
    CHECK_THROWS_AS(radial_derivative(*half, kOne), numeric_error);
}

TEST_CASE("horosphere bound estimates") {
    BoundSampler sampler;
    sampler.seed = 5;
    sampler.interior_samples = 500;
    sampler.directions = 16;

    const BoundaryPoint tau = BoundaryPoint::axis(2);
    {
        const auto est = horosphere_bound(*make_constant(BallPoint::origin(2)), tau, sampler);
        CHECK_FALSE(est.divergent);
        CHECK(est.sup == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        const auto est = horosphere_bound(*make_identity(2), tau, sampler);
        CHECK(est.divergent);  // d(-r tau, tau) = (1+r)/(1-r) blows up
    }
    {
        const auto est = horosphere_bound(
            *make_siegel_affine(1.0, 2.0, HoroContext(tau)), tau, sampler);
        CHECK_FALSE(est.divergent);
        CHECK(est.sup <= 0.5 + 1e-9);
    }
}

TEST_CASE("certificates") {
    const SelfMapPtr f = siegel_affine_1d(2.0, 0.5);
    const auto cert = sink_certificate(*f);
    REQUIRE(cert.has_value());
    CHECK(cert->beta == doctest::Approx(0.5));
    CHECK(cert->m == doctest::Approx(2.0));
    CHECK(cert->k == doctest::Approx(0.5));  // 2 beta / m

    CHECK(horosphere_certificate(*f, kOne).value() == doctest::Approx(2.0));
    CHECK_FALSE(horosphere_certificate(*f, BoundaryPoint({cnum(-1.0, 0.0)})).has_value());
    CHECK_FALSE(sink_certificate(*make_identity(1)).has_value());
    const BallPoint c({cnum(0.25, 0.0)});
    CHECK(horosphere_certificate(*make_constant(c), kOne).value() ==
          doctest::Approx(dhoro(c, kOne) * (1.0 + 1e-6)));
}

TEST_CASE("bcp coefficient chain on a certified map") {
    Rng rng(71);
    for (int dim : {1, 2, 3}) {
        const BoundaryPoint tau = rng.boundary_point(dim);
        const SelfMapPtr f = make_siegel_affine(2.0, 1.0, HoroContext(tau));
        for (int i = 0; i < 100; ++i) {
            const BallPoint z = rng.ball_point(dim);
            const BallPoint w = rng.ball_point(dim);
            const cvec gap = sub(z.span(), w.span());
            if (norm(std::span<const cnum>(gap.data(), gap.size())) < 1e-3) continue;
            const BcpCoefficients bcp = bcp_coefficients(*f, z, w, tau, 1.0);
            CHECK(bcp.b > 0.0);
            CHECK(bcp.b <= bcp.c + 1e-12);
            CHECK(bcp.c < 1.0);
            CHECK(bcp.p >= -1e-9);
            CHECK(bcp.p <= 1.0 + 1e-9);
            CHECK(strong_nonexpansivity_check(*f, z, w, tau, 1.0));
        }
    }
    // diagonal is excluded
    const BallPoint z = rng.ball_point(2);
    CHECK_THROWS_AS(bcp_coefficients(*make_siegel_affine(2.0, 1.0, HoroContext(rng.boundary_point(2))),
                                     z, z, rng.boundary_point(2), 1.0),
                    std::invalid_argument);
}

TEST_CASE("k limit") {
    Rng rng(73);
    // B = 1: k = 2a
    CHECK(k_limit(*siegel_affine_1d(1.0, 0.75), BallPoint({cnum(0.2, 0.1)}), kOne, 1.0 / 0.75) ==
          doctest::Approx(1.5).epsilon(1e-4));
    // B = 2, a = 1: k = 2 (1/2) / 1 = 1
    CHECK(k_limit(*siegel_affine_1d(2.0, 1.0), BallPoint({cnum(0.3, 0.0)}), kOne, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-4));
    // independent of the probe point
    const SelfMapPtr f = make_siegel_affine(2.0, 0.5, HoroContext(BoundaryPoint::axis(2)));
    const double k1 = k_limit(*f, BallPoint({cnum(0.3, 0.1), cnum(0.0, -0.2)}),
                              BoundaryPoint::axis(2), 2.0);
    const double k2 = k_limit(*f, BallPoint({cnum(-0.4, 0.0), cnum(0.1, 0.1)}),
                              BoundaryPoint::axis(2), 2.0);
    CHECK(k1 == doctest::Approx(k2).epsilon(1e-4));
    CHECK(k1 == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("jacobian") {
    Rng rng(79);
    {
        const cmat half = cmat::scaled_identity(2, cnum(0.5, 0.0));
        const cmat j = jacobian(*make_linear_contraction(half), BallPoint::origin(2));
        CHECK(max_abs(matmul(j, cmat::identity(2))) == doctest::Approx(0.5).epsilon(1e-8));
        for (int i = 0; i < 2; ++i)
            for (int jj = 0; jj < 2; ++jj)
                CHECK(std::abs(j.at(i, jj) - half.at(i, jj)) < 1e-6);
    }
    {
        const cmat u = random_unitary_matrix(rng, 3);
        const cmat j = jacobian(*make_unitary(u), BallPoint::origin(3));
        for (int i = 0; i < 3; ++i)
            for (int jj = 0; jj < 3; ++jj)
                CHECK(std::abs(j.at(i, jj) - u.at(i, jj)) < 1e-6);
    }
    {
        // chain rule at a common fixed point (origin): D(f o g) = Df Dg
        const cmat m1 = random_contraction_matrix(rng, 2);
        const cmat m2 = random_contraction_matrix(rng, 2);
        const SelfMapPtr comp =
            make_compose({make_linear_contraction(m1), make_linear_contraction(m2)});
        const cmat j = jacobian(*comp, BallPoint::origin(2));
        const cmat expect = matmul(m1, m2);
        for (int i = 0; i < 2; ++i)
            for (int jj = 0; jj < 2; ++jj)
                CHECK(std::abs(j.at(i, jj) - expect.at(i, jj)) < 1e-6);
    }
    // too close to the boundary for the differencing step
    CHECK_THROWS_AS(jacobian(*make_identity(1), BallPoint({cnum(1.0 - 1e-7, 0.0)})),
                    numeric_error);
}

TEST_CASE("random map generator stays nonexpansive") {
    Rng rng(83);
    for (int i = 0; i < 200; ++i) {
        const int dim = 1 + static_cast<int>(rng.index(4));
        const SelfMapPtr f = random_selfmap(rng, dim);
        const BallPoint z = rng.ball_point(dim);
        const BallPoint w = rng.ball_point(dim);
        CHECK(sigma(evaluate(*f, z), evaluate(*f, w)) >= sigma(z, w) - 1e-9);
    }
}
