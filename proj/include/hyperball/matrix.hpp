#pragma once

#include <span>

#include "hyperball/cvec.hpp"

namespace hyperball {

// Dense square complex matrix, row-major. Sizes here are tiny (n <= 8 in
// practice), so everything is plain O(n^2)/O(n^3) loops.
struct cmat {
    int n = 0;
    cvec a;  // n*n entries

    cmat() = default;
    explicit cmat(int size) : n(size), a(static_cast<std::size_t>(size) * size, cnum(0.0)) {}

    cnum& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const cnum& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static cmat identity(int size) {
        cmat m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static cmat scaled_identity(int size, cnum k) {
        cmat m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = k;
        return m;
    }
};

cvec matvec(const cmat& m, std::span<const cnum> z);
cmat matmul(const cmat& x, const cmat& y);
cmat adjoint(const cmat& m);
double fro_norm(const cmat& m);
double max_abs(const cmat& m);

// Largest singular value via power iteration on A*A. Deterministic start,
// no randomness.
double operator_norm(const cmat& m);

// Distance of U*U from the identity in the max-abs norm.
double unitary_defect(const cmat& u);

}  // namespace hyperball
