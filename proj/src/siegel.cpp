#include "hyperball/siegel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperball {

double s_height(std::span<const cnum> x, const HoroContext& ctx) {
    if (x.size() != static_cast<std::size_t>(ctx.dim()))
        throw std::invalid_argument("s_height: dimension mismatch");
    const cnum xt = inner(x, ctx.tau_span());
    return xt.real() + std::norm(xt) - norm_sq(x);
}

SiegelPoint::SiegelPoint(cvec v, HoroContext ctx) : v_(std::move(v)), ctx_(std::move(ctx)) {
    if (v_.size() != static_cast<std::size_t>(ctx_.dim()))
        throw std::invalid_argument("SiegelPoint: dimension mismatch");
    if (!all_finite(v_)) throw std::invalid_argument("SiegelPoint: non-finite component");
    const double s = height();
    if (s < -tol::eps_id)
        throw std::invalid_argument("SiegelPoint: S(x) = " + std::to_string(s) +
                                    " outside the half-space");
}

SiegelPoint cayley(const BallPoint& z, const HoroContext& ctx) {
    if (z.dim() != ctx.dim()) throw std::invalid_argument("cayley: dimension mismatch");
    const cnum den = 1.0 - inner(z.span(), ctx.tau_span());
    if (std::abs(den) < tol::eps_den)
        throw numeric_error("cayley: 1-<z,tau> vanished (corrupt input)");
    cvec x = add(z.span(), ctx.tau_span());
    for (cnum& c : x) c /= den;
    return SiegelPoint(std::move(x), ctx);
}

BallPoint cayley_inv(const SiegelPoint& x) {
    const cnum den = 1.0 + inner(x.span(), x.context().tau_span());
    if (std::abs(den) < tol::eps_den)
        throw numeric_error("cayley_inv: 1+<x,tau> vanished");
    const std::span<const cnum> tau = x.context().tau_span();
    cvec z(x.vec().size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = 2.0 * x.vec()[i] / den - tau[i];
    return BallPoint::unchecked(std::move(z));
}

cnum t_form(std::span<const cnum> x, std::span<const cnum> y, const HoroContext& ctx) {
    if (x.size() != y.size() || x.size() != static_cast<std::size_t>(ctx.dim()))
        throw std::invalid_argument("t_form: dimension mismatch");
    const cnum xt = inner(x, ctx.tau_span());
    const cnum ty = inner(ctx.tau_span(), y);
    return xt + ty + 2.0 * (xt * ty - inner(x, y));
}

double sigma_via_siegel(const SiegelPoint& x, const SiegelPoint& y) {
    if (x.context().tau().vec() != y.context().tau().vec())
        throw std::invalid_argument("sigma_via_siegel: contexts differ");
    const double sx = x.height();
    const double sy = y.height();
    if (sx <= 0.0 || sy <= 0.0)
        throw numeric_error("sigma_via_siegel: strict interior required");
    const cnum t = t_form(x.span(), y.span(), x.context());
    const double t2 = std::norm(t);
    if (t2 < tol::eps_den * tol::eps_den)
        throw numeric_error("sigma_via_siegel: |T(x,y)| vanished off the domain");
    return 4.0 * sx * sy / t2;
}

SiegelPoint horoshift(const SiegelPoint& x, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("horoshift: shift must be positive");
    cvec v = axpy(a, x.context().tau_span(), x.span());
    return SiegelPoint(std::move(v), x.context());
}

}  // namespace hyperball
