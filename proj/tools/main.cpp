// Command-line front end: iterate / classify / rates / verify.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure,
// 3 invariant or rate-bound violation.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperball/dynamics.hpp"
#include "hyperball/selfmap_analysis.hpp"
#include "hyperball/selfmap_json.hpp"
#include "hyperball/suites.hpp"
#include "hyperball/textio.hpp"
#include "hyperball/trace_io.hpp"

namespace {

using namespace hyperball;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitInvariant = 3;

const char* stop_name(StopReason s) {
    switch (s) {
        case StopReason::max_steps: return "max_steps";
        case StopReason::interior_converged: return "interior_converged";
        case StopReason::sink_reached: return "sink_reached";
        case StopReason::boundary_proximity: return "boundary_proximity";
    }
    return "unknown";
}

void write_cvec_json(std::ostream& os, const cvec& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << '[' << fmt_g17(v[i].real()) << ',' << fmt_g17(v[i].imag()) << ']';
    }
    os << ']';
}

std::optional<RateParams> certified_rate_params(const ExperimentConfig& cfg,
                                                const IterationTrace& trace) {
    const auto cert = sink_certificate(*cfg.map);
    if (!cert || trace.d_to_tau.empty()) return std::nullopt;
    return RateParams{cert->beta, cert->k, trace.d_to_tau.front()};
}

BallPoint first_start(const ExperimentConfig& cfg) {
    return cfg.z0.empty() ? BallPoint::origin(cfg.dimension) : cfg.z0.front();
}

int cmd_iterate(const std::string& config_path, const std::string& out_override,
                std::optional<std::uint64_t> /*seed_override*/) {
    ExperimentConfig cfg = config_from_file(config_path);
    std::optional<BoundaryPoint> tau = cfg.tau;
    if (!tau)
        if (const auto cert = sink_certificate(*cfg.map)) tau = cert->tau;

    const IterationTrace trace = iterate(*cfg.map, first_start(cfg), cfg.limits(), tau);
    const std::optional<RateParams> rate = certified_rate_params(cfg, trace);

    std::string out = !out_override.empty() ? out_override
                      : !cfg.output_path.empty() ? cfg.output_path
                                                 : std::string("trace.csv");
    write_trace_csv(trace, rate, out);

    std::cout << "iterate: stop=" << stop_name(trace.stop) << " steps=" << trace.steps();
    if (!trace.d_to_tau.empty()) std::cout << " final_d_to_tau=" << fmt_g17(trace.d_to_tau.back());
    std::cout << " out=" << out << "\n";
    return kExitOk;
}

int cmd_classify(const std::string& config_path, const std::string& out_override,
                 std::optional<std::uint64_t> seed_override) {
    ExperimentConfig cfg = config_from_file(config_path);
    ClassifyOptions opts;
    opts.starts = cfg.z0;
    opts.n_max = cfg.n_max;
    opts.tau = cfg.tau;
    opts.seed = seed_override.value_or(cfg.seed);
    if (!opts.tau)
        if (const auto cert = sink_certificate(*cfg.map)) opts.tau = cert->tau;

    const Classification cl = classify(*cfg.map, opts);

    std::ostringstream os;
    switch (cl.outcome) {
        case Classification::Outcome::interior_fixed_point: {
            os << R"({"outcome":"interior","zeta":)";
            write_cvec_json(os, cl.zeta->vec());
            if (cl.spectrum) {
                os << R"(,"spectral_radius":)" << fmt_g17(cl.spectrum->spectral_radius)
                   << R"(,"contraction_margin":)" << fmt_g17(cl.spectrum->contraction_margin);
            }
            os << R"(,"multi_start_spread":)" << fmt_g17(cl.multi_start_spread)
               << R"(,"strictly_inside_image":)" << (cl.strictly_inside_image ? "true" : "false")
               << '}';
            break;
        }
        case Classification::Outcome::sink_convergence: {
            os << R"({"outcome":"sink","tau":)";
            write_cvec_json(os, cl.tau->vec());
            os << R"(,"beta":)" << fmt_g17(cl.beta);
            if (std::isfinite(cl.k)) os << R"(,"k":)" << fmt_g17(cl.k);
            os << '}';
            break;
        }
        case Classification::Outcome::undetermined:
            os << R"({"outcome":"undetermined","diagnostic":")" << cl.diagnostic << R"("})";
            break;
    }
    os << '\n';
    std::cout << os.str();
    if (!out_override.empty() || !cfg.output_path.empty())
        atomic_write_file(!out_override.empty() ? out_override : cfg.output_path, os.str());
    return kExitOk;
}

int cmd_rates(const std::string& config_path, const std::string& out_override,
              std::optional<std::uint64_t> /*seed_override*/) {
    ExperimentConfig cfg = config_from_file(config_path);
    const auto cert = sink_certificate(*cfg.map);
    if (!cert)
        throw std::invalid_argument(
            "config: 'rates' needs a map with a horosphere certificate (siegel_affine, a > 0)");
    if (cfg.tau) {
        const cvec gap = sub(cfg.tau->span(), cert->tau.span());
        if (norm(std::span<const cnum>(gap.data(), gap.size())) > 1e-9)
            throw std::invalid_argument("config: 'tau' disagrees with the map's own axis");
    }

    const IterationTrace trace = iterate(*cfg.map, first_start(cfg), cfg.limits(), cert->tau);
    const RateParams rate{cert->beta, cert->k, trace.d_to_tau.front()};

    std::string out = !out_override.empty() ? out_override
                      : !cfg.output_path.empty() ? cfg.output_path
                                                 : std::string("rates.csv");
    write_rates_csv(trace, rate, out);

    const RateReport rr = verify_rate(trace, rate, cfg.eps_rate);
    std::cout << "rates: steps=" << trace.steps() << " worst_ratio=" << fmt_g17(rr.worst_ratio)
              << " violations=" << rr.violations << " out=" << out << "\n";
    return rr.pass ? kExitOk : kExitInvariant;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::vector<int> dims,
               const std::string& out_path) {
    if (dims.empty()) dims = {1, 2, 3, 8};
    const std::vector<SuiteReport> reports = run_suites(suite, seed, dims);
    const std::string text = format_report(reports, suite, seed, dims);
    std::cout << text;
    if (!out_path.empty()) atomic_write_file(out_path, text);
    for (const SuiteReport& rep : reports)
        if (!rep.pass()) return kExitInvariant;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic ball self-map toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 42;
    bool seed_given = false;
    std::string suite = "all";
    std::vector<int> dims;

    CLI::App* it = app.add_subcommand("iterate", "run an orbit and export the trace CSV");
    it->add_option("--config", config_path, "experiment config (JSON)")->required();
    it->add_option("--out", out_path, "output path override");
    it->add_option("--seed", seed, "seed override")->each([&](const std::string&) { seed_given = true; });

    CLI::App* cl = app.add_subcommand("classify", "classify the iteration outcome");
    cl->add_option("--config", config_path, "experiment config (JSON)")->required();
    cl->add_option("--out", out_path, "output path override");
    cl->add_option("--seed", seed, "seed override")->each([&](const std::string&) { seed_given = true; });

    CLI::App* ra = app.add_subcommand("rates", "per-step rate-bound comparison CSV");
    ra->add_option("--config", config_path, "experiment config (JSON)")->required();
    ra->add_option("--out", out_path, "output path override");
    ra->add_option("--seed", seed, "seed override")->each([&](const std::string&) { seed_given = true; });

    CLI::App* ve = app.add_subcommand("verify", "run invariant suites");
    ve->add_option("--suite", suite, "geometry|siegel|nonexpansive|rates|all");
    ve->add_option("--seed", seed, "sampling seed");
    ve->add_option("--dims", dims, "dimensions, e.g. --dims 1 2 3 8")->delimiter(',');
    ve->add_option("--out", out_path, "also write the report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitConfig;
    }

    std::optional<std::uint64_t> seed_override;
    if (seed_given) seed_override = seed;

    try {
        if (app.got_subcommand(it)) return cmd_iterate(config_path, out_path, seed_override);
        if (app.got_subcommand(cl)) return cmd_classify(config_path, out_path, seed_override);
        if (app.got_subcommand(ra)) return cmd_rates(config_path, out_path, seed_override);
        if (app.got_subcommand(ve)) return cmd_verify(suite, seed, dims, out_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}
