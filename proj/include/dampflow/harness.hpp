#pragma once

#include <optional>
#include <string>

#include "dampflow/config.hpp"
#include "dampflow/manifest.hpp"

namespace dampflow {

/// Exit codes partition outcomes; nothing else is ever returned.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitNumericalFailure = 3,
};

/// Everything one run left behind, for summaries and for the caller's exit
/// code decision.
struct RunOutcome {
    int exit_code = kExitOk;
    std::string error;
    RunManifest manifest;
    // Headline numbers for sweep summaries (valid when the run completed).
    double final_kinetic = 0.0;
    double energy_defect = 0.0;
    double dz_margin = 0.0;
    double decay_increase = 0.0;
    double gronwall_defect = 0.0;
    bool all_checks_passed = true;
};

/// Runs one configuration into out_dir: ledger.csv (streamed), optional
/// checkpoints, enabled checks, manifest.json. When resume_from is set the
/// run continues from that checkpoint and the ledger CSV is appended.
RunOutcome execute_run(const RunSettings& settings, const std::string& out_dir,
                       const std::optional<std::string>& resume_from = std::nullopt);

}  // namespace dampflow
