#include "hyperball/trace_io.hpp"

#include <sstream>
#include <stdexcept>

#include "hyperball/textio.hpp"

namespace hyperball {

std::string trace_to_csv(const IterationTrace& trace, const std::optional<RateParams>& rate) {
    std::ostringstream os;
    const int dim = trace.iterates.empty() ? 0 : trace.iterates.front().dim();
    os << "n";
    for (int j = 0; j < dim; ++j) os << ",z" << j << "_re,z" << j << "_im";
    os << ",norm,d_to_tau,rho_step,alpha_bound\n";
    for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
        os << n;
        for (int j = 0; j < dim; ++j) {
            const cnum c = trace.iterates[n].vec()[static_cast<std::size_t>(j)];
            os << ',' << fmt_g17(c.real()) << ',' << fmt_g17(c.imag());
        }
        os << ',' << fmt_g17(trace.norms[n]);
        os << ',';
        if (!trace.d_to_tau.empty()) os << fmt_g17(trace.d_to_tau[n]);
        os << ',';
        if (n > 0) os << fmt_g17(trace.rho_steps[n - 1]);
        os << ',';
        if (rate) os << fmt_g17(rate_bound(*rate, n) * rate->d0);
        os << '\n';
    }
    return os.str();
}

std::string rates_to_csv(const IterationTrace& trace, const RateParams& rate) {
    if (trace.d_to_tau.empty())
        throw std::invalid_argument("rates_to_csv: trace has no d_to_tau column");
    std::ostringstream os;
    os << "n,d_to_tau,alpha_bound,ratio\n";
    for (std::size_t n = 0; n < trace.d_to_tau.size(); ++n) {
        const double bound = rate_bound(rate, n) * rate.d0;
        os << n << ',' << fmt_g17(trace.d_to_tau[n]) << ',' << fmt_g17(bound) << ','
           << fmt_g17(trace.d_to_tau[n] / bound) << '\n';
    }
    return os.str();
}

void write_trace_csv(const IterationTrace& trace, const std::optional<RateParams>& rate,
                     const std::string& path) {
    atomic_write_file(path, trace_to_csv(trace, rate));
}

void write_rates_csv(const IterationTrace& trace, const RateParams& rate,
                     const std::string& path) {
    atomic_write_file(path, rates_to_csv(trace, rate));
}

}  // namespace hyperball
