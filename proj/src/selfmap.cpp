#include "hyperball/selfmap.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperball {

namespace {

constexpr double kParamTol = 1e-12;

SelfMapPtr wrap(SelfMapExpr e) { return std::make_shared<const SelfMapExpr>(std::move(e)); }

void guard_interior(const cvec& v, const char* who) {
    if (!all_finite(v)) throw numeric_error(std::string(who) + ": non-finite intermediate");
    if (norm(std::span<const cnum>(v.data(), v.size())) > 1.0 - tol::eps_ball_eval)
        throw numeric_error(std::string(who) + ": intermediate left the open ball");
}

int merge_dims(int a, int b, const char* who) {
    if (a == 0) return b;
    if (b == 0) return a;
    if (a != b) throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    return a;
}

cvec mobius_raw(const cvec& a, const cvec& z) {
    const std::span<const cnum> as(a.data(), a.size());
    const std::span<const cnum> zs(z.data(), z.size());
    const double a2 = norm_sq(as);
    if (a2 == 0.0) return z;
    const cnum den = 1.0 + inner(zs, as);
    if (std::abs(den) < tol::eps_den)
        throw numeric_error("mobius: denominator 1+<z,a> vanished");
    auto [p, q] = project_along(as, add(zs, as));
    const double root = std::sqrt(1.0 - a2);
    cvec out(p.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (root * q[i] + p[i]) / den;
    return out;
}

cvec siegel_affine_raw(const SiegelAffineMap& f, const cvec& z) {
    const std::span<const cnum> tau = f.ctx.tau_span();
    const std::span<const cnum> zs(z.data(), z.size());
    const cnum cden = 1.0 - inner(zs, tau);
    if (std::abs(cden) < tol::eps_den)
        throw numeric_error("siegel_affine: 1-<z,tau> vanished");
    cvec x = add(zs, tau);
    for (cnum& c : x) c /= cden;

    auto [p, q] = project_along(tau, std::span<const cnum>(x.data(), x.size()));
    const double root = std::sqrt(f.B);
    cvec xp(x.size());
    for (std::size_t i = 0; i < xp.size(); ++i)
        xp[i] = f.B * p[i] + root * q[i] + f.a * tau[i];

    const cnum iden = 1.0 + inner(std::span<const cnum>(xp.data(), xp.size()), tau);
    if (std::abs(iden) < tol::eps_den)
        throw numeric_error("siegel_affine: 1+<x,tau> vanished");
    cvec out(xp.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2.0 * xp[i] / iden - tau[i];
    return out;
}

}  // namespace

SelfMapPtr make_identity(int dim) {
    if (dim < 0) throw std::invalid_argument("make_identity: negative dimension");
    return wrap({IdentityMap{}, dim});
}

SelfMapPtr make_constant(BallPoint c) {
    const int d = c.dim();
    return wrap({ConstantMap{std::move(c)}, d});
}

SelfMapPtr make_linear_contraction(cmat m) {
    if (m.n < 1) throw std::invalid_argument("make_linear_contraction: empty matrix");
    const double op = operator_norm(m);
    if (op > 1.0 + kParamTol)
        throw std::invalid_argument("make_linear_contraction: operator norm " +
                                    std::to_string(op) + " exceeds 1");
    const int d = m.n;
    return wrap({LinearContractionMap{std::move(m)}, d});
}

SelfMapPtr make_unitary(cmat u) {
    if (u.n < 1) throw std::invalid_argument("make_unitary: empty matrix");
    const double defect = unitary_defect(u);
    if (defect > kParamTol)
        throw std::invalid_argument("make_unitary: U*U-I defect " + std::to_string(defect));
    const int d = u.n;
    return wrap({UnitaryMap{std::move(u)}, d});
}

SelfMapPtr make_mobius_auto(BallPoint a) {
    const int d = a.dim();
    return wrap({MobiusAutoMap{std::move(a)}, d});
}

SelfMapPtr make_compose(std::vector<SelfMapPtr> maps) {
    if (maps.empty()) throw std::invalid_argument("make_compose: empty list");
    int d = 0;
    for (const SelfMapPtr& m : maps) {
        if (!m) throw std::invalid_argument("make_compose: null entry");
        d = merge_dims(d, m->dim, "make_compose");
    }
    return wrap({ComposeMap{std::move(maps)}, d});
}

SelfMapPtr make_convex_combination(std::vector<double> weights, std::vector<SelfMapPtr> maps) {
    if (maps.empty() || weights.size() != maps.size())
        throw std::invalid_argument("make_convex_combination: weights/maps size mismatch");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("make_convex_combination: weights must be positive");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kParamTol)
        throw std::invalid_argument("make_convex_combination: weights sum to " + std::to_string(sum));
    int d = 0;
    for (const SelfMapPtr& m : maps) {
        if (!m) throw std::invalid_argument("make_convex_combination: null entry");
        d = merge_dims(d, m->dim, "make_convex_combination");
    }
    return wrap({ConvexCombinationMap{std::move(weights), std::move(maps)}, d});
}

SelfMapPtr make_siegel_affine(double B, double a, HoroContext ctx) {
    if (!(B >= 1.0)) throw std::invalid_argument("make_siegel_affine: B must be >= 1");
    if (!(a >= 0.0)) throw std::invalid_argument("make_siegel_affine: a must be >= 0");
    const int d = ctx.dim();
    return wrap({SiegelAffineMap{B, a, std::move(ctx)}, d});
}

cvec evaluate_raw(const SelfMapExpr& f, const cvec& z) {
    if (f.dim != 0 && static_cast<std::size_t>(f.dim) != z.size())
        throw std::invalid_argument("evaluate: dimension mismatch");
    cvec out = std::visit(
        [&](const auto& node) -> cvec {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IdentityMap>) {
                return z;
            } else if constexpr (std::is_same_v<T, ConstantMap>) {
                return node.value.vec();
            } else if constexpr (std::is_same_v<T, LinearContractionMap>) {
                return matvec(node.m, std::span<const cnum>(z.data(), z.size()));
            } else if constexpr (std::is_same_v<T, UnitaryMap>) {
                return matvec(node.u, std::span<const cnum>(z.data(), z.size()));
            } else if constexpr (std::is_same_v<T, MobiusAutoMap>) {
                return mobius_raw(node.a.vec(), z);
            } else if constexpr (std::is_same_v<T, ComposeMap>) {
                cvec cur = z;
                for (auto it = node.maps.rbegin(); it != node.maps.rend(); ++it)
                    cur = evaluate_raw(**it, cur);
                return cur;
            } else if constexpr (std::is_same_v<T, ConvexCombinationMap>) {
                cvec acc = zeros(z.size());
                for (std::size_t i = 0; i < node.maps.size(); ++i) {
                    const cvec fi = evaluate_raw(*node.maps[i], z);
                    for (std::size_t j = 0; j < acc.size(); ++j)
                        acc[j] += node.weights[i] * fi[j];
                }
                return acc;
            } else {
                return siegel_affine_raw(node, z);
            }
        },
        f.node);
    guard_interior(out, "evaluate");
    return out;
}

BallPoint evaluate(const SelfMapExpr& f, const BallPoint& z) {
    return BallPoint::unchecked(evaluate_raw(f, z.vec()));
}

cmat jacobian(const SelfMapExpr& f, const BallPoint& zeta) {
    const int n = zeta.dim();
    if (f.dim != 0 && f.dim != n) throw std::invalid_argument("jacobian: dimension mismatch");
    const double h = 1e-5 * std::max(1.0, zeta.norm());
    if (zeta.norm() + h > 1.0 - tol::eps_ball)
        throw numeric_error("jacobian: step would leave the ball (point too close to boundary)");

    const cvec& base = zeta.vec();
    auto column = [&](int j, double step, cnum dir) -> cvec {
        cvec zp = base, zm = base;
        zp[static_cast<std::size_t>(j)] += dir * step;
        zm[static_cast<std::size_t>(j)] -= dir * step;
        const cvec fp = evaluate_raw(f, zp);
        const cvec fm = evaluate_raw(f, zm);
        cvec d(fp.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = (fp[i] - fm[i]) / (2.0 * step * dir);
        return d;
    };

    cmat out(n);
    for (int j = 0; j < n; ++j) {
        // One Richardson step per direction: (4 D(h/2) - D(h)) / 3.
        for (const cnum dir : {cnum(1.0, 0.0), cnum(0.0, 1.0)}) {
            const cvec d1 = column(j, h, dir);
            const cvec d2 = column(j, h / 2.0, dir);
            for (int i = 0; i < n; ++i) {
                const cnum refined =
                    (4.0 * d2[static_cast<std::size_t>(i)] - d1[static_cast<std::size_t>(i)]) / 3.0;
                out.at(i, j) += 0.5 * refined;  // average of the two analytic routes
            }
        }
    }
    return out;
}

std::optional<double> horosphere_certificate(const SelfMapExpr& f, const BoundaryPoint& tau) {
    if (const auto* sa = std::get_if<SiegelAffineMap>(&f.node)) {
        if (sa->a <= 0.0) return std::nullopt;
        const cvec gap = sub(sa->ctx.tau_span(), tau.span());
        if (norm(std::span<const cnum>(gap.data(), gap.size())) > 1e-12) return std::nullopt;
        return 1.0 / sa->a;
    }
    if (const auto* c = std::get_if<ConstantMap>(&f.node)) {
        return dhoro(c->value, tau) * (1.0 + 1e-6);
    }
    return std::nullopt;
}

std::optional<SinkCertificate> sink_certificate(const SelfMapExpr& f) {
    const auto* sa = std::get_if<SiegelAffineMap>(&f.node);
    if (!sa || sa->a <= 0.0) return std::nullopt;
    const double beta = 1.0 / sa->B;
    const double m = 1.0 / sa->a;
    return SinkCertificate{sa->ctx.tau(), beta, 2.0 * beta / m, m};
}

}  // namespace hyperball
