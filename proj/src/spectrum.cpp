#include "hyperball/spectrum.hpp"

#include <cmath>

namespace hyperball {

double spectral_radius(const cmat& m, bool* converged) {
    if (converged) *converged = true;
    if (m.n == 0) return 0.0;

    // r(A) = lim |A^(2^j)|^(1/2^j). Track D_j = A^(2^j)/|A^(2^j)| and the log
    // of the dropped scale so the powers never leave binary64 range.
    double scale = fro_norm(m);
    if (scale == 0.0) return 0.0;
    cmat d = m;
    for (cnum& c : d.a) c /= scale;
    double log_norm = std::log(scale);  // log |A^(2^j)|
    double pow2 = 1.0;
    double estimate = scale;

    for (int j = 0; j < 64; ++j) {
        cmat sq = matmul(d, d);
        const double sn = fro_norm(sq);
        if (!(sn > 0.0) || !std::isfinite(sn)) return 0.0;  // nilpotent collapse
        log_norm = 2.0 * log_norm + std::log(sn);
        pow2 *= 2.0;
        for (cnum& c : sq.a) c /= sn;
        d = std::move(sq);
        const double next = std::exp(log_norm / pow2);
        if (j > 2 && std::abs(next - estimate) <= 1e-13 * std::max(next, 1e-30)) {
            return next;
        }
        estimate = next;
    }
    if (converged) *converged = false;
    return estimate;
}

SpectrumSummary spectrum_summary(const cmat& m) {
    SpectrumSummary s;
    s.jacobian = m;
    bool ok = true;
    const double r = spectral_radius(m, &ok);
    if (ok) {
        s.spectral_radius = r;
    } else {
        s.spectral_radius = operator_norm(m);
        s.radius_is_norm_bound = true;
    }
    s.contraction_margin = 1.0 - s.spectral_radius;
    return s;
}

}  // namespace hyperball
