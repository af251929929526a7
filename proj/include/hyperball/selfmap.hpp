#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "hyperball/ball.hpp"
#include "hyperball/matrix.hpp"
#include "hyperball/siegel.hpp"

namespace hyperball {

struct SelfMapExpr;
using SelfMapPtr = std::shared_ptr<const SelfMapExpr>;

struct IdentityMap {};

struct ConstantMap {
    BallPoint value;
};

// z -> M z with operator norm(M) <= 1.
struct LinearContractionMap {
    cmat m;
};

// z -> U z, U*U = I.
struct UnitaryMap {
    cmat u;
};

// The ball automorphism m_a.
struct MobiusAutoMap {
    BallPoint a;
};

// Function composition; maps.back() is applied first.
struct ComposeMap {
    std::vector<SelfMapPtr> maps;
};

// Pointwise convex combination; the ball is convex, so this is again a
// holomorphic self-map.
struct ConvexCombinationMap {
    std::vector<double> weights;
    std::vector<SelfMapPtr> maps;
};

// Affine map of the Siegel half-space pulled back to the ball:
//   F(z) = C^-1( B P_tau C(z) + sqrt(B) Q_tau C(z) + a tau ),  B >= 1, a >= 0.
// Raises the height by S -> B S + a exactly, hence maps the ball into the
// horosphere { d(., tau) < 1/a } when a > 0.
struct SiegelAffineMap {
    double B;
    double a;
    HoroContext ctx;
};

struct SelfMapExpr {
    std::variant<IdentityMap, ConstantMap, LinearContractionMap, UnitaryMap, MobiusAutoMap,
                 ComposeMap, ConvexCombinationMap, SiegelAffineMap>
        node;
    int dim = 0;  // 0: any dimension (identity only)
};

// Validating factories. Parameter constraints are enforced here once; the
// evaluator trusts them afterwards.
SelfMapPtr make_identity(int dim = 0);
SelfMapPtr make_constant(BallPoint c);
SelfMapPtr make_linear_contraction(cmat m);
SelfMapPtr make_unitary(cmat u);
SelfMapPtr make_mobius_auto(BallPoint a);
SelfMapPtr make_compose(std::vector<SelfMapPtr> maps);
SelfMapPtr make_convex_combination(std::vector<double> weights, std::vector<SelfMapPtr> maps);
SelfMapPtr make_siegel_affine(double B, double a, HoroContext ctx);

// Structural evaluation. Every intermediate is guarded against leaving the
// representable interior; a violation means the expression was invalidly
// parameterized (or the input sits too close to the boundary) and raises
// numeric_error.
cvec evaluate_raw(const SelfMapExpr& f, const cvec& z);
BallPoint evaluate(const SelfMapExpr& f, const BallPoint& z);

// Frechet derivative at an interior point by central differences (real and
// imaginary steps averaged) with one Richardson refinement.
cmat jacobian(const SelfMapExpr& f, const BallPoint& zeta);

// Machine-checkable horosphere bound: sup_z d(F(z), tau) < m. Only the
// Siegel-affine family (m = 1/a) and constants (m just above d(c, tau))
// carry one; everything else needs an empirical bound.
std::optional<double> horosphere_certificate(const SelfMapExpr& f, const BoundaryPoint& tau);

// Exact sink data for the Siegel-affine family: tau, beta = 1/B, m = 1/a,
// k = 2 beta / m.
struct SinkCertificate {
    BoundaryPoint tau;
    double beta;
    double k;
    double m;
};
std::optional<SinkCertificate> sink_certificate(const SelfMapExpr& f);

}  // namespace hyperball
