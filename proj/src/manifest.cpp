#include "dampflow/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dampflow/config.hpp"
#include "dampflow/errors.hpp"

namespace dampflow {

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["version"] = version;
    j["seed"] = seed;
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    j["status"] = status;
    j["exit_code"] = exit_code;
    j["config"] = config_snapshot;
    j["outputs"] = nlohmann::json::array();
    for (const auto& out : outputs) {
        j["outputs"].push_back({{"path", out.path}, {"bytes", out.bytes}, {"checksum", out.checksum}});
    }
    j["checks"] = nlohmann::json::array();
    for (const auto& check : checks) {
        j["checks"].push_back({{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
    }
    return j;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw ConfigError("manifest: cannot open " + path + " for writing");
    os << manifest.to_json().dump(2) << '\n';
}

OutputRecord record_output(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("manifest: produced file missing: " + path);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    const std::string bytes = buffer.str();
    char hex[20];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(fnv1a(bytes)));
    return OutputRecord{path, bytes.size(), hex};
}

std::string iso_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace dampflow
