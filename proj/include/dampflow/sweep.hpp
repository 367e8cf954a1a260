#pragma once

#include <string>
#include <vector>

#include "dampflow/harness.hpp"

namespace dampflow {

struct SweepPoint {
    std::string label;
    std::string kind;
    double alpha = 0.0;
    double beta = 0.0;  // NaN for non-power-law kinds
    RunSettings settings;
};

/// Expands the config's "sweep" object (arrays over damping kind, alpha,
/// beta) into one run per grid point, in deterministic sorted order. Child
/// seeds derive from the master seed and the point's position, so results
/// do not depend on scheduling.
std::vector<SweepPoint> expand_sweep(const RunSettings& base);

struct SweepChildSummary {
    SweepPoint point;
    RunOutcome outcome;
};

struct SweepResult {
    int exit_code = kExitOk;
    std::size_t failed = 0;
    std::vector<SweepChildSummary> children;  // sorted by (kind, alpha, beta)
};

/// Runs every point concurrently (up to `workers`), each into its own
/// subdirectory of out_dir, then writes out_dir/summary.csv. Child failures
/// are recorded and do not stop the sweep.
SweepResult run_sweep(const RunSettings& base, const std::string& out_dir, unsigned workers);

}  // namespace dampflow
