#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "rsma/engine.hpp"
#include "rsma/experiments.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::size_t> bins;
    std::string out_path;
    std::string format;
};

void attach_options(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "Flat key=value config file");
    cmd->add_option("--seed", ov.seed, "Master seed (overrides config file)");
    cmd->add_option("--trials", ov.trials, "Monte Carlo trial count");
    cmd->add_option("--bins", ov.bins, "Histogram bin count M");
    cmd->add_option("--out", ov.out_path, "Output path (default: stdout)");
    cmd->add_option("--format", ov.format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

rsma::ExperimentConfig build_config(rsma::ExperimentKind kind, const CliOverrides& ov) {
    rsma::ExperimentConfig cfg = ov.config_path.empty()
                                     ? rsma::default_config(kind)
                                     : rsma::load_config_file(kind, ov.config_path);
    cfg.kind = kind;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.trials) cfg.trials = *ov.trials;
    if (ov.bins) cfg.bins = *ov.bins;
    if (!ov.out_path.empty()) cfg.out_path = ov.out_path;
    if (!ov.format.empty())
        rsma::apply_key_value(cfg, "format", ov.format);
    return cfg;
}

int run(rsma::ExperimentKind kind, const CliOverrides& ov) {
    try {
        const rsma::ExperimentConfig cfg = build_config(kind, ov);
        rsma::validate(cfg);
        std::cerr << "running " << rsma::to_string(kind) << " (trials=" << cfg.trials
                  << ", seed=" << cfg.seed << ", workers=" << rsma::worker_count() << ")\n";
        const auto start = std::chrono::steady_clock::now();
        const rsma::Table table = rsma::run_experiment(cfg);
        rsma::write_output(table, cfg);
        const auto elapsed =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start);
        std::cerr << "done in " << elapsed.count() << " ms";
        if (!cfg.out_path.empty()) std::cerr << ", wrote " << cfg.out_path;
        std::cerr << "\n";
        return 0;
    } catch (const rsma::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator and Gamma-approximation toolkit for the downlink SINR "
                 "of MU-MIMO/RSMA systems with outdated transmitter CSI"};
    app.require_subcommand(1);

    CliOverrides pdf_ov, mse_ov, rate_ov, mom_ov;
    CLI::App* pdf = app.add_subcommand(
        "pdf-compare", "Empirical PDF of X against both Gamma approximations");
    CLI::App* mse = app.add_subcommand(
        "mse-sweep", "Fit MSE of both approximations over N_t/K ratios");
    CLI::App* rate = app.add_subcommand(
        "sumrate-sweep", "Ergodic sum-rate versus the power split tau");
    CLI::App* mom = app.add_subcommand(
        "validate-moments", "Empirical moments against the closed-form decomposition");
    attach_options(pdf, pdf_ov);
    attach_options(mse, mse_ov);
    attach_options(rate, rate_ov);
    attach_options(mom, mom_ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (pdf->parsed()) return run(rsma::ExperimentKind::PdfCompare, pdf_ov);
    if (mse->parsed()) return run(rsma::ExperimentKind::MseSweep, mse_ov);
    if (rate->parsed()) return run(rsma::ExperimentKind::SumrateSweep, rate_ov);
    if (mom->parsed()) return run(rsma::ExperimentKind::ValidateMoments, mom_ov);
    return 1;
}
