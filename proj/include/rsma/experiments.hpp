#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rsma/channel.hpp"

namespace rsma {

/// Configuration problem; `field` names the offending key.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string f, const std::string& message)
        : std::runtime_error("config error at '" + f + "': " + message), field(std::move(f)) {}
};

enum class ExperimentKind { PdfCompare, MseSweep, SumrateSweep, ValidateMoments };
enum class OutputFormat { Csv, Json };

std::string_view to_string(ExperimentKind kind);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::PdfCompare;

    // Scenario point / sweep axes. nt_list and k_list are zipped into
    // (N_t, K) pairs; epsilon_list and tau_list cross them where the
    // experiment sweeps those axes.
    std::vector<std::size_t> nt_list;
    std::vector<std::size_t> k_list;
    std::vector<double> epsilon_list;
    std::vector<double> tau_list;
    std::vector<double> ratio_list;  // N_t / K values for the MSE sweep
    std::vector<double> snr_db = {20.0};
    std::optional<MobilityParams> mobility;  // used only when epsilon_list is empty

    std::size_t bins = 200;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    std::string out_path;  // empty = stdout
    OutputFormat format = OutputFormat::Csv;
    unsigned workers = 0;  // 0 = auto (env override / hardware)

    // Signed Jakes coefficient, recorded when epsilon was derived from
    // mobility; the simulation itself always uses the magnitude.
    std::optional<double> epsilon_signed;
};

ExperimentConfig default_config(ExperimentKind kind);

/// Applies one key=value assignment (config-file key or CLI override).
/// Throws ConfigError on unknown keys or malformed values.
void apply_key_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Flat key = value text file ('#' starts a comment).
ExperimentConfig load_config_file(ExperimentKind kind, const std::string& path);

/// Full validation for the selected kind; throws ConfigError.
void validate(const ExperimentConfig& cfg);

/// Rows are formatted strings so CSV and JSON render byte-identically for
/// identical inputs. `meta` echoes the fully resolved configuration.
struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

Table run_pdf_compare(const ExperimentConfig& cfg);
Table run_mse_sweep(const ExperimentConfig& cfg);
Table run_sumrate_sweep(const ExperimentConfig& cfg);
Table run_validate_moments(const ExperimentConfig& cfg);
Table run_experiment(const ExperimentConfig& cfg);

void write_csv(const Table& table, std::ostream& os);
void write_json(const Table& table, std::ostream& os);

/// Writes to cfg.out_path (or stdout when empty) in cfg.format.
void write_output(const Table& table, const ExperimentConfig& cfg);

/// Scientific notation with 13 significant digits; used for every numeric cell.
std::string format_sci(double v);

}  // namespace rsma
