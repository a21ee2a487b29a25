#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "veldrift/config.hpp"
#include "veldrift/evolve.hpp"

namespace veldrift {

/// Result of one experiment run. `document` is exactly what was written to
/// summary.json:
///
///     experiment, version, seed, unit_mode, constants, parameters,
///     summary (per-experiment fields), files
///
/// The output directory is deliberately not part of the document, so the
/// same config run into two directories gives identical bytes.
struct RunRecord {
    nlohmann::ordered_json document;
    std::vector<std::filesystem::path> files;  ///< every file written, summary.json last
    bool passed = true;                        ///< experiment-specific check, when it has one
};

/// Execute the configured experiment into cfg.output_dir (created if
/// missing). Module errors are rethrown with the experiment name prefixed.
RunRecord run(const config::ExperimentConfig& cfg);

/// `time,mean_v,variance,total_mass`, 17 significant digits.
void write_moments_csv(const std::filesystem::path& path, const std::vector<MomentRecord>& records);

/// Dump with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

}  // namespace veldrift
