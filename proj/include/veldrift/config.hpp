#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "veldrift/constants.hpp"

namespace veldrift::config {

enum class Experiment {
    MeasurementDemo,
    Drift,
    Heating,
    Friction,
    FpVsSde,
    NewtonSweep,
    ConsistencyReport,
    AppendixD,
    Spreading,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> experiment_from_string(std::string_view name);

enum class ValueKind { Real, Integer, Text, RealList };

/// Documented parameter of one experiment.
struct ParamSpec {
    std::string_view name;
    ValueKind kind;
    std::optional<std::string_view> default_value;  ///< empty: optional without default, or required
    bool required = false;
    std::optional<double> min;      ///< inclusive unless min_exclusive
    bool min_exclusive = false;
    std::optional<double> max;
    std::vector<std::string_view> choices;  ///< Text only; empty means free text
    std::string_view doc;
};

struct ExperimentInfo {
    Experiment id;
    std::string_view summary;
    UnitMode default_units;
    std::vector<ParamSpec> params;
};

const std::vector<ExperimentInfo>& experiments();
const ExperimentInfo& info(Experiment e);

/// Fully validated run description. Parameters hold the canonical text of
/// every supplied or defaulted value; optional parameters without a
/// default are absent.
struct ExperimentConfig {
    Experiment experiment;
    std::uint64_t seed;
    std::filesystem::path output_dir;
    UnitSystem units;
    std::map<std::string, std::string> parameters;

    bool has(std::string_view key) const;
    double real(std::string_view key) const;
    std::uint64_t integer(std::string_view key) const;
    const std::string& text(std::string_view key) const;
    std::vector<double> real_list(std::string_view key) const;
    std::optional<double> optional_real(std::string_view key) const;
};

struct ParseOutcome {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;  ///< every problem found, each naming its key

    bool ok() const { return config.has_value(); }
};

/// Parse INI-style text:
///
///     experiment = drift
///     seed = 7
///     [drift]
///     dv_rms = 1
///
/// Root keys: experiment (required), seed, output_dir, unit_mode.
/// Optional [constants] section (nondimensional mode only): c, hbar, G, kB,
/// sigma_SB, velocity_scale, time_scale. One section named after the
/// experiment holds its parameters. Unknown keys or sections are errors.
ParseOutcome parse_config(std::string_view text);

ParseOutcome load_config(const std::filesystem::path& path);

/// Strict number parsing shared with the CLI.
std::optional<double> parse_real(std::string_view text);
std::optional<std::uint64_t> parse_integer(std::string_view text);

/// 17 significant digits (%.17g); reads back as the same double.
std::string format_real(double value);

}  // namespace veldrift::config
