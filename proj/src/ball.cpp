#include "hyperball/ball.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperball {

BallPoint::BallPoint(cvec v) : v_(std::move(v)) {
    if (v_.empty()) throw std::invalid_argument("BallPoint: empty vector");
    if (!all_finite(v_)) throw std::invalid_argument("BallPoint: non-finite component");
    const double n = hyperball::norm(span());
    if (n > 1.0 - tol::eps_ball)
        throw std::invalid_argument("BallPoint: |z| = " + std::to_string(n) +
                                    " outside the open ball policy");
}

BallPoint BallPoint::unchecked(cvec v) { return BallPoint(std::move(v), unchecked_t{}); }

BallPoint BallPoint::origin(int n) { return BallPoint(zeros(static_cast<std::size_t>(n))); }

BoundaryPoint::BoundaryPoint(cvec v) : v_(std::move(v)) {
    if (v_.empty()) throw std::invalid_argument("BoundaryPoint: empty vector");
    if (!all_finite(v_)) throw std::invalid_argument("BoundaryPoint: non-finite component");
    const double n = hyperball::norm(span());
    if (std::abs(n - 1.0) > tol::eps_unit)
        throw std::invalid_argument("BoundaryPoint: |tau| = " + std::to_string(n) +
                                    " not within eps_unit of 1");
    for (cnum& c : v_) c /= n;
}

BoundaryPoint BoundaryPoint::axis(int n, int i) {
    return BoundaryPoint(unit_axis(static_cast<std::size_t>(n), static_cast<std::size_t>(i)));
}

HorosphereParams::HorosphereParams(BoundaryPoint center, double level)
    : c_(center.vec()), k_(level) {
    validate();
}

HorosphereParams::HorosphereParams(BallPoint center, double level)
    : c_(center.vec()), k_(level) {
    validate();
}

void HorosphereParams::validate() const {
    const double w2 = norm_sq(std::span<const cnum>(c_.data(), c_.size()));
    if (!(k_ > 1.0 - w2))
        throw std::invalid_argument("HorosphereParams: level must exceed 1 - |w|^2");
}

BallPoint mobius(const BallPoint& a, const BallPoint& z) {
    if (a.dim() != z.dim()) throw std::invalid_argument("mobius: dimension mismatch");
    const double a2 = a.norm_sq();
    if (a2 == 0.0) return z;  // m_0 is the identity; P_0 is not a ray projection
    const cnum den = 1.0 + inner(z.span(), a.span());
    if (std::abs(den) < tol::eps_den)
        throw numeric_error("mobius: denominator 1+<z,a> vanished (invalid input)");
    const cvec za = add(z.span(), a.span());
    auto [p, q] = project_along(a.span(), za);
    const double root = std::sqrt(1.0 - a2);
    cvec out(p.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (root * q[i] + p[i]) / den;
    return BallPoint::unchecked(std::move(out));
}

double sigma(const BallPoint& z, const BallPoint& w) {
    const cnum zw = inner(z.span(), w.span());
    const double den = std::norm(1.0 - zw);
    return (1.0 - z.norm_sq()) * (1.0 - w.norm_sq()) / den;
}

double rho(const BallPoint& z, const BallPoint& w) {
    const cvec neg = scale(-1.0, z.span());
    const BallPoint m = mobius(BallPoint::unchecked(neg), w);
    const double x = m.norm();
    if (x < 0.9) return std::atanh(x);
    // atanh(x) = log((1+x)^2 / (1-x^2)) / 2; the direct sigma quotient keeps
    // 1 - x^2 well conditioned when x rounds toward 1
    return 0.5 * std::log((1.0 + x) * (1.0 + x) / sigma(z, w));
}

double dhoro(const BallPoint& z, std::span<const cnum> w) {
    if (static_cast<std::size_t>(z.dim()) != w.size())
        throw std::invalid_argument("dhoro: dimension mismatch");
    const cnum zw = inner(z.span(), w);
    return std::norm(1.0 - zw) / (1.0 - z.norm_sq());
}

double dhoro(const BallPoint& z, const BallPoint& w) { return dhoro(z, w.span()); }
double dhoro(const BallPoint& z, const BoundaryPoint& w) { return dhoro(z, w.span()); }

bool in_horosphere(const BallPoint& z, const HorosphereParams& h) {
    return dhoro(z, h.center()) < h.level();
}

}  // namespace hyperball
