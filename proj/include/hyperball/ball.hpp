#pragma once

#include <span>

#include "hyperball/cvec.hpp"
#include "hyperball/tolerances.hpp"

namespace hyperball {

// Point of the open unit ball of C^n. Public construction enforces
// |z| <= 1 - eps_ball; `unchecked` is for values an evaluator has already
// guarded (they may sit closer to the boundary than the public policy).
class BallPoint {
  public:
    explicit BallPoint(cvec v);
    static BallPoint unchecked(cvec v);

    const cvec& vec() const { return v_; }
    std::span<const cnum> span() const { return {v_.data(), v_.size()}; }
    int dim() const { return static_cast<int>(v_.size()); }
    double norm() const { return hyperball::norm(span()); }
    double norm_sq() const { return hyperball::norm_sq(span()); }

    static BallPoint origin(int n);

  private:
    struct unchecked_t {};
    BallPoint(cvec v, unchecked_t) : v_(std::move(v)) {}
    cvec v_;
};

// Unit-norm point of C^n. Construction validates | |v| - 1 | <= eps_unit,
// then renormalizes exactly so downstream identities see |tau| = 1.
class BoundaryPoint {
  public:
    explicit BoundaryPoint(cvec v);

    const cvec& vec() const { return v_; }
    std::span<const cnum> span() const { return {v_.data(), v_.size()}; }
    int dim() const { return static_cast<int>(v_.size()); }

    static BoundaryPoint axis(int n, int i = 0);

  private:
    cvec v_;
};

// The sublevel set E(w, k) = { d(z, w) < k }, k > 1 - |w|^2.
class HorosphereParams {
  public:
    HorosphereParams(BoundaryPoint center, double level);
    HorosphereParams(BallPoint center, double level);

    std::span<const cnum> center() const { return {c_.data(), c_.size()}; }
    double level() const { return k_; }

  private:
    void validate() const;
    cvec c_;
    double k_;
};

// Moebius automorphism m_a of the ball, moving 0 to a.
BallPoint mobius(const BallPoint& a, const BallPoint& z);

// sigma(z,w) = (1-|z|^2)(1-|w|^2)/|1-<z,w>|^2, in (0,1], equal to 1 iff z = w.
double sigma(const BallPoint& z, const BallPoint& w);

// Poincare hyperbolic metric rho(z,w) = atanh |m_{-z}(w)|.
double rho(const BallPoint& z, const BallPoint& w);

// Horosphere functional d(z,w) = |1-<z,w>|^2/(1-|z|^2), w in the closed ball.
// Not symmetric, unbounded as |z| -> 1; never clamped.
double dhoro(const BallPoint& z, std::span<const cnum> w);
double dhoro(const BallPoint& z, const BallPoint& w);
double dhoro(const BallPoint& z, const BoundaryPoint& w);

bool in_horosphere(const BallPoint& z, const HorosphereParams& h);

}  // namespace hyperball
