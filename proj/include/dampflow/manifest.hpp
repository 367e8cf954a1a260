#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dampflow {

inline constexpr const char* kVersion = "0.1.0";

struct CheckOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct OutputRecord {
    std::string path;
    std::uint64_t bytes = 0;
    std::string checksum;  // fnv1a-64, hex
};

/// What a run leaves behind besides its data files: the exact config, the
/// code version, the seed, timing, the produced files with checksums, and
/// the verdict of every enabled check.
struct RunManifest {
    nlohmann::json config_snapshot;
    std::string version = kVersion;
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<OutputRecord> outputs;
    std::vector<CheckOutcome> checks;
    std::string status;  // "completed", "config_error", "numerical_failure"
    int exit_code = 0;

    nlohmann::json to_json() const;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

/// Record a produced file: size + fnv1a-64 checksum of its bytes.
OutputRecord record_output(const std::string& path);

std::string iso_utc_now();

}  // namespace dampflow
