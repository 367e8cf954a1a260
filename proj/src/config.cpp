#include "dampflow/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "dampflow/errors.hpp"

namespace dampflow {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& path) {
    if (!j.is_object()) throw ConfigError("config: " + path + " must be an object");
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError("config: unknown key '" + path + "." + item.key() + "'");
        }
    }
    for (const auto& key : required) {
        if (!j.contains(key)) {
            throw ConfigError("config: missing required key '" + path + "." + key + "'");
        }
    }
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("config: " + path + " must be a number");
    return j.get<double>();
}

std::uint64_t get_uint(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    throw ConfigError("config: " + path + " must be a nonnegative integer");
}

template <typename T, std::size_t N>
std::array<T, N> get_array(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != N) {
        throw ConfigError("config: " + path + " must be an array of " + std::to_string(N) + " entries");
    }
    std::array<T, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        if constexpr (std::is_integral_v<T>) {
            if (!j[i].is_number_integer()) throw ConfigError("config: " + path + " entries must be integers");
        } else {
            if (!j[i].is_number()) throw ConfigError("config: " + path + " entries must be numbers");
        }
        out[i] = j[i].get<T>();
    }
    return out;
}

Grid parse_grid(const json& j) {
    require_keys(j, {"modes", "box"}, {"modes"}, "grid");
    const auto modes = get_array<int, 3>(j.at("modes"), "grid.modes");
    std::array<double, 3> box{6.283185307179586, 6.283185307179586, 6.283185307179586};
    if (j.contains("box")) box = get_array<double, 3>(j.at("box"), "grid.box");
    try {
        return Grid(modes, box);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: grid: ") + e.what());
    }
}

DampingSpec parse_damping(const json& j) {
    require_keys(j, {"kind", "alpha", "beta", "allow_beta_three"}, {"kind"}, "damping");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "none") return DampingSpec::none();
        if (kind == "logarithmic") return DampingSpec::logarithmic(get_number(j.at("alpha"), "damping.alpha"));
        if (kind == "power_law") {
            const double alpha = get_number(j.at("alpha"), "damping.alpha");
            const double beta = get_number(j.at("beta"), "damping.beta");
            const bool allow3 = j.value("allow_beta_three", false);
            if (beta == 3.0 && allow3) return DampingSpec::power_law_borderline(alpha);
            return DampingSpec::power_law(alpha, beta);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: damping: ") + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: damping: ") + e.what());
    }
    throw ConfigError("config: damping.kind must be 'none', 'logarithmic' or 'power_law', got '" + kind +
                      "'");
}

InitialCondition parse_ic(const json& j) {
    require_keys(j,
                 {"kind", "amplitude", "perturbation", "h01_target", "spectrum_slope", "seed", "k", "path"},
                 {"kind"}, "ic");
    const std::string kind = j.at("kind").get<std::string>();
    const auto optional_seed = [&]() -> std::optional<std::uint64_t> {
        if (j.contains("seed")) return get_uint(j.at("seed"), "ic.seed");
        return std::nullopt;
    };
    if (kind == "taylor_green") {
        TaylorGreenIC ic;
        if (j.contains("amplitude")) ic.amplitude = get_number(j.at("amplitude"), "ic.amplitude");
        return ic;
    }
    if (kind == "taylor_green_perturbed") {
        TaylorGreenPerturbedIC ic;
        if (j.contains("amplitude")) ic.amplitude = get_number(j.at("amplitude"), "ic.amplitude");
        if (j.contains("perturbation")) ic.perturbation = get_number(j.at("perturbation"), "ic.perturbation");
        ic.seed = optional_seed();
        return ic;
    }
    if (kind == "random_div_free") {
        RandomDivFreeIC ic;
        if (!j.contains("h01_target")) throw ConfigError("config: missing required key 'ic.h01_target'");
        ic.h01_target = get_number(j.at("h01_target"), "ic.h01_target");
        if (!(ic.h01_target > 0.0)) throw ConfigError("config: ic.h01_target must be positive");
        if (j.contains("spectrum_slope")) {
            ic.spectrum_slope = get_number(j.at("spectrum_slope"), "ic.spectrum_slope");
        }
        ic.seed = optional_seed();
        return ic;
    }
    if (kind == "single_mode") {
        SingleModeIC ic;
        if (!j.contains("k")) throw ConfigError("config: missing required key 'ic.k'");
        if (!j.contains("amplitude")) throw ConfigError("config: missing required key 'ic.amplitude'");
        ic.k = get_array<int, 3>(j.at("k"), "ic.k");
        ic.amplitude = get_array<double, 3>(j.at("amplitude"), "ic.amplitude");
        return ic;
    }
    if (kind == "from_file") {
        if (!j.contains("path")) throw ConfigError("config: missing required key 'ic.path'");
        return FromFileIC{j.at("path").get<std::string>()};
    }
    throw ConfigError("config: unknown ic.kind '" + kind + "'");
}

ChecksConfig parse_checks(const json& j) {
    require_keys(j, {"energy", "dz_envelope", "decay_function", "gronwall", "dz_variant", "tolerance"}, {},
                 "checks");
    ChecksConfig checks;
    checks.energy = j.value("energy", true);
    checks.dz_envelope = j.value("dz_envelope", true);
    checks.decay_function = j.value("decay_function", true);
    checks.gronwall = j.value("gronwall", true);
    if (j.contains("dz_variant")) {
        const std::string v = j.at("dz_variant").get<std::string>();
        if (v == "theorem") {
            checks.dz_variant = BVariant::Theorem;
        } else if (v == "proof") {
            checks.dz_variant = BVariant::Proof;
        } else if (v == "max") {
            checks.dz_variant = BVariant::Max;
        } else {
            throw ConfigError("config: checks.dz_variant must be 'theorem', 'proof' or 'max'");
        }
    }
    if (j.contains("tolerance")) checks.tolerance = get_number(j.at("tolerance"), "checks.tolerance");
    return checks;
}

}  // namespace

RunSettings parse_run_settings(const json& j) {
    require_keys(j,
                 {"grid", "damping", "viscosity", "dt", "t_end", "cutoff_radius", "dealias", "ic",
                  "output_every", "seed", "checks", "checkpoint", "sweep"},
                 {"grid", "damping", "dt", "t_end", "ic"}, "<root>");

    RunSettings settings;
    settings.raw = j;
    SolverConfig& cfg = settings.solver;
    cfg.grid = parse_grid(j.at("grid"));
    cfg.damping = parse_damping(j.at("damping"));
    if (j.contains("viscosity")) cfg.viscosity = get_number(j.at("viscosity"), "viscosity");
    cfg.dt = get_number(j.at("dt"), "dt");
    cfg.t_end = get_number(j.at("t_end"), "t_end");
    if (j.contains("cutoff_radius") && !j.at("cutoff_radius").is_null()) {
        cfg.cutoff_radius = get_number(j.at("cutoff_radius"), "cutoff_radius");
    }
    if (j.contains("dealias")) {
        const std::string rule = j.at("dealias").get<std::string>();
        if (rule == "two-thirds") {
            cfg.dealias = DealiasRule::TwoThirds;
        } else if (rule == "none") {
            cfg.dealias = DealiasRule::None;
        } else {
            throw ConfigError("config: dealias must be 'two-thirds' or 'none', got '" + rule + "'");
        }
    }
    cfg.ic = parse_ic(j.at("ic"));
    if (j.contains("output_every")) {
        cfg.output_every = get_uint(j.at("output_every"), "output_every");
    }
    if (j.contains("seed")) cfg.seed = get_uint(j.at("seed"), "seed");
    if (j.contains("checks")) settings.checks = parse_checks(j.at("checks"));
    if (j.contains("checkpoint")) {
        require_keys(j.at("checkpoint"), {"every"}, {}, "checkpoint");
        settings.checkpoint.enabled = true;
        settings.checkpoint.every = j.at("checkpoint").value("every", 0ull);
    }
    cfg.validate();
    return settings;
}

RunSettings load_run_settings(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config: cannot open " + path);
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    return parse_run_settings(j);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t config_physics_hash(const SolverConfig& cfg) {
    char buf[64];
    std::string canon;
    const auto add_num = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g;", v);
        canon += buf;
    };
    for (int axis = 0; axis < 3; ++axis) canon += std::to_string(cfg.grid.modes()[axis]) + ";";
    for (int axis = 0; axis < 3; ++axis) add_num(cfg.grid.box()[axis]);
    canon += cfg.damping.describe() + ";";
    add_num(cfg.viscosity);
    add_num(cfg.dt);
    canon += cfg.dealias == DealiasRule::TwoThirds ? "two-thirds;" : "none;";
    add_num(cfg.cutoff_radius ? *cfg.cutoff_radius : -1.0);
    canon += describe(cfg.ic) + ";";
    canon += std::to_string(cfg.seed) + ";";
    return fnv1a(canon);
}

}  // namespace dampflow
