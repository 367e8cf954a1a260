#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "dampflow/checks.hpp"
#include "dampflow/solver.hpp"

namespace dampflow {

/// Which verdicts cmd_run evaluates after integrating, and with what
/// tolerance (empty = the default O(dt^2) budget).
struct ChecksConfig {
    bool energy = true;
    bool dz_envelope = true;
    bool decay_function = true;
    bool gronwall = true;
    BVariant dz_variant = BVariant::Max;
    std::optional<double> tolerance;
};

struct CheckpointConfig {
    bool enabled = false;
    std::uint64_t every = 0;  // steps between periodic checkpoints; 0 = final only
};

/// Full parsed run configuration: solver parameters plus harness options,
/// with the raw JSON kept for the manifest snapshot.
struct RunSettings {
    SolverConfig solver;
    ChecksConfig checks;
    CheckpointConfig checkpoint;
    nlohmann::json raw;
};

/// Parses the strict-keyed JSON config. Unknown keys anywhere are errors
/// (no silent typos); missing required keys and malformed values throw
/// ConfigError with the offending path.
RunSettings parse_run_settings(const nlohmann::json& j);
RunSettings load_run_settings(const std::string& path);

/// Hash over the physics-defining fields (grid, damping, viscosity, dt,
/// dealiasing, cutoff, initial condition, seed). t_end and output options
/// are excluded so a resumed run may extend the horizon.
std::uint64_t config_physics_hash(const SolverConfig& cfg);

/// FNV-1a 64 over a byte string.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace dampflow
