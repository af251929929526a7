#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "hyperball/ball.hpp"
#include "hyperball/cvec.hpp"

namespace hyperball {

// Seeded source for all randomized suites. Distributions are hand-rolled on
// top of mt19937_64 so identical seeds give identical streams on every
// platform; nothing in the library draws from ambient randomness.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    cnum cnormal() { return {normal(), normal()}; }

    cvec gaussian_vec(int n) {
        cvec v(static_cast<std::size_t>(n));
        for (cnum& c : v) c = cnormal();
        return v;
    }

    cvec unit_vec(int n) {
        for (;;) {
            cvec v = gaussian_vec(n);
            const double s = norm(std::span<const cnum>(v.data(), v.size()));
            if (s > 1e-6) {
                for (cnum& c : v) c /= s;
                return v;
            }
        }
    }

    // uniform direction x uniform radius in [0, rmax]
    cvec ball_vec(int n, double rmax = 0.95) {
        cvec v = unit_vec(n);
        const double r = rmax * uniform();
        for (cnum& c : v) c *= r;
        return v;
    }

    BallPoint ball_point(int n, double rmax = 0.95) { return BallPoint(ball_vec(n, rmax)); }

    BoundaryPoint boundary_point(int n) { return BoundaryPoint(unit_vec(n)); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace hyperball
