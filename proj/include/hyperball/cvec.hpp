#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperball {

using cnum = std::complex<double>;
using cvec = std::vector<cnum>;

// Computation guard failures (vanishing denominators, non-convergent limits,
// orbits escaping the representable interior). Distinct from invalid_argument,
// which flags bad inputs at construction.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hermitian inner product, conjugate-linear in the second slot.
inline cnum inner(std::span<const cnum> z, std::span<const cnum> w) {
    if (z.size() != w.size())
        throw std::invalid_argument("inner: dimension mismatch");
    cnum s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
    return s;
}

inline double norm_sq(std::span<const cnum> z) {
    double s = 0.0;
    for (const cnum& c : z) s += std::norm(c);
    return s;
}

inline double norm(std::span<const cnum> z) { return std::sqrt(norm_sq(z)); }

inline bool all_finite(std::span<const cnum> z) {
    for (const cnum& c : z)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

inline cvec add(std::span<const cnum> z, std::span<const cnum> w) {
    if (z.size() != w.size()) throw std::invalid_argument("add: dimension mismatch");
    cvec r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = z[i] + w[i];
    return r;
}

inline cvec sub(std::span<const cnum> z, std::span<const cnum> w) {
    if (z.size() != w.size()) throw std::invalid_argument("sub: dimension mismatch");
    cvec r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = z[i] - w[i];
    return r;
}

inline cvec scale(const cnum& k, std::span<const cnum> z) {
    cvec r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = k * z[i];
    return r;
}

inline cvec axpy(const cnum& k, std::span<const cnum> z, std::span<const cnum> w) {
    if (z.size() != w.size()) throw std::invalid_argument("axpy: dimension mismatch");
    cvec r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = k * z[i] + w[i];
    return r;
}

inline cvec zeros(std::size_t n) { return cvec(n, cnum(0.0, 0.0)); }

inline cvec unit_axis(std::size_t n, std::size_t i) {
    cvec r = zeros(n);
    r.at(i) = 1.0;
    return r;
}

// (P_a z, Q_a z): projection onto the complex line through a and its
// complement. a = 0 degenerates to (0, z).
inline std::pair<cvec, cvec> project_along(std::span<const cnum> a, std::span<const cnum> z) {
    if (a.size() != z.size())
        throw std::invalid_argument("project_along: dimension mismatch");
    const double a2 = norm_sq(a);
    if (a2 == 0.0) return {zeros(z.size()), cvec(z.begin(), z.end())};
    const cnum coef = inner(z, a) / a2;
    cvec p = scale(coef, a);
    cvec q = sub(z, p);
    return {std::move(p), std::move(q)};
}

}  // namespace hyperball
