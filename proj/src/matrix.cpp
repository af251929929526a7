#include "hyperball/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperball {

cvec matvec(const cmat& m, std::span<const cnum> z) {
    if (z.size() != static_cast<std::size_t>(m.n))
        throw std::invalid_argument("matvec: dimension mismatch");
    cvec r(z.size(), cnum(0.0));
    for (int i = 0; i < m.n; ++i) {
        cnum s = 0.0;
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * z[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(i)] = s;
    }
    return r;
}

cmat matmul(const cmat& x, const cmat& y) {
    if (x.n != y.n) throw std::invalid_argument("matmul: dimension mismatch");
    cmat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const cnum xik = x.at(i, k);
            if (xik == cnum(0.0)) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

cmat adjoint(const cmat& m) {
    cmat r(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r.at(i, j) = std::conj(m.at(j, i));
    return r;
}

double fro_norm(const cmat& m) { return norm(std::span<const cnum>(m.a.data(), m.a.size())); }

double max_abs(const cmat& m) {
    double r = 0.0;
    for (const cnum& c : m.a) r = std::max(r, std::abs(c));
    return r;
}

double operator_norm(const cmat& m) {
    if (m.n == 0) return 0.0;
    if (fro_norm(m) == 0.0) return 0.0;
    const cmat h = matmul(adjoint(m), m);  // Hermitian PSD, top eigenvalue = |A|^2
    cvec v(static_cast<std::size_t>(m.n));
    for (int i = 0; i < m.n; ++i)
        v[static_cast<std::size_t>(i)] = cnum(1.0 + 1e-3 * i, 1e-4 * (i + 1));
    double lambda = 0.0;
    for (int it = 0; it < 2000; ++it) {
        cvec w = matvec(h, v);
        const double wn = norm(std::span<const cnum>(w.data(), w.size()));
        if (wn == 0.0) return 0.0;
        for (cnum& c : w) c /= wn;
        const cvec hw = matvec(h, w);
        const cnum ray = inner(std::span<const cnum>(hw.data(), hw.size()),
                               std::span<const cnum>(w.data(), w.size()));
        const double next = ray.real();
        v = std::move(w);
        if (it > 4 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(0.0, lambda));
}

double unitary_defect(const cmat& u) {
    cmat d = matmul(adjoint(u), u);
    for (int i = 0; i < d.n; ++i) d.at(i, i) -= 1.0;
    return max_abs(d);
}

}  // namespace hyperball
