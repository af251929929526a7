#pragma once

#include <span>

#include "hyperball/ball.hpp"
#include "hyperball/cvec.hpp"

namespace hyperball {

// Distinguished boundary direction; the axis of the Siegel half-space model.
class HoroContext {
  public:
    explicit HoroContext(BoundaryPoint tau) : tau_(std::move(tau)) {}

    const BoundaryPoint& tau() const { return tau_; }
    std::span<const cnum> tau_span() const { return tau_.span(); }
    int dim() const { return tau_.dim(); }

  private:
    BoundaryPoint tau_;
};

// Height functional S(x) = Re<x,tau> + |<x,tau>|^2 - |x|^2; the Siegel
// domain is { S > 0 }.
double s_height(std::span<const cnum> x, const HoroContext& ctx);

// Point of the Siegel domain. Construction tolerates S >= -eps_id (boundary
// limit experiments drive S -> 0+); operations that divide by S demand
// strict interior and raise numeric_error otherwise.
class SiegelPoint {
  public:
    SiegelPoint(cvec v, HoroContext ctx);

    const cvec& vec() const { return v_; }
    std::span<const cnum> span() const { return {v_.data(), v_.size()}; }
    const HoroContext& context() const { return ctx_; }
    double height() const { return s_height(span(), ctx_); }

  private:
    cvec v_;
    HoroContext ctx_;
};

// Cayley transform C(z) = (z+tau)/(1-<z,tau>), biholomorphic from the ball
// onto the Siegel domain.
SiegelPoint cayley(const BallPoint& z, const HoroContext& ctx);

// Inverse transform z = 2x/(1+<x,tau>) - tau.
BallPoint cayley_inv(const SiegelPoint& x);

// Sesquilinear form T(x,y) = <x,tau> + <tau,y> + 2(<x,tau><tau,y> - <x,y>).
// Same conjugation convention as `inner`; in dimension 1, T(x,y) = x + conj(y).
cnum t_form(std::span<const cnum> x, std::span<const cnum> y, const HoroContext& ctx);

// sigma through the half-space model: 4 S(x) S(y) / |T(x,y)|^2.
double sigma_via_siegel(const SiegelPoint& x, const SiegelPoint& y);

// x + a tau, a > 0; raises the height by exactly a and stays in the domain.
SiegelPoint horoshift(const SiegelPoint& x, double a);

}  // namespace hyperball
