#pragma once

// Runs a parsed scenario and writes its artifacts.

#include <filesystem>
#include <string>
#include <vector>

#include "lambda2/config.hpp"

namespace lambda2 {

inline constexpr int kExitPass = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerdictFail = 2;

SchemeReport scheme_custom(const CustomConfig& cfg);

/// Sweep summarized as a report: per phase offset, the best r1 and where it sits.
SchemeReport sweep_report(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Runs the scheme or sweep without writing anything; throws on errors.
/// For sweeps the table is stored in `sweep_rows` when given.
SchemeReport run_scheme(const ScenarioConfig& cfg, unsigned jobs = 0, std::vector<SweepRow>* sweep_rows = nullptr);

struct ScenarioResult
{
    int exit_code = kExitError;
    std::string error;   // diagnostic when exit_code == kExitError
    SchemeReport report;
    std::vector<std::filesystem::path> files;
};

/// Executes the scheme or sweep named by `cfg` and writes report.txt,
/// config.txt, series_input.csv / series_output.csv or sweep.csv into
/// `out_dir` (or output.dir when empty). Never throws: failures come back
/// as exit code 1 with a diagnostic.
ScenarioResult run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir = {},
                            unsigned jobs = 0);

} // namespace lambda2
