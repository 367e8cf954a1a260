#include "dampflow/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include "dampflow/random.hpp"

namespace dampflow {

namespace fs = std::filesystem;

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

DampingSpec make_damping(const std::string& kind, double alpha, double beta) {
    if (kind == "none") return DampingSpec::none();
    if (kind == "logarithmic") return DampingSpec::logarithmic(alpha);
    if (kind == "power_law") {
        if (beta == 3.0) return DampingSpec::power_law_borderline(alpha);
        return DampingSpec::power_law(alpha, beta);
    }
    throw ConfigError("sweep: unknown damping kind '" + kind + "'");
}

}  // namespace

std::vector<SweepPoint> expand_sweep(const RunSettings& base) {
    const auto& raw = base.raw;
    if (!raw.contains("sweep")) throw ConfigError("sweep: config has no 'sweep' object");
    const auto& sw = raw.at("sweep");
    for (const auto& item : sw.items()) {
        static const std::set<std::string> allowed = {"damping", "alpha", "beta"};
        if (!allowed.contains(item.key())) {
            throw ConfigError("config: unknown key 'sweep." + item.key() + "'");
        }
    }

    std::vector<std::string> kinds;
    if (sw.contains("damping")) {
        for (const auto& k : sw.at("damping")) kinds.push_back(k.get<std::string>());
    } else {
        switch (base.solver.damping.kind()) {
            case DampingKind::None:
                kinds.push_back("none");
                break;
            case DampingKind::Logarithmic:
                kinds.push_back("logarithmic");
                break;
            case DampingKind::PowerLaw:
                kinds.push_back("power_law");
                break;
        }
    }
    std::vector<double> alphas;
    if (sw.contains("alpha")) {
        for (const auto& a : sw.at("alpha")) alphas.push_back(a.get<double>());
    } else {
        alphas.push_back(base.solver.damping.active() ? base.solver.damping.alpha() : 1.0);
    }
    std::vector<double> betas;
    if (sw.contains("beta")) {
        for (const auto& b : sw.at("beta")) betas.push_back(b.get<double>());
    } else {
        betas.push_back(base.solver.damping.kind() == DampingKind::PowerLaw ? base.solver.damping.beta()
                                                                            : 4.0);
    }
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    std::sort(alphas.begin(), alphas.end());
    std::sort(betas.begin(), betas.end());

    std::vector<SweepPoint> points;
    std::uint64_t index = 0;
    for (const auto& kind : kinds) {
        const bool wants_alpha = kind != "none";
        const bool wants_beta = kind == "power_law";
        const std::vector<double> kind_alphas = wants_alpha ? alphas : std::vector<double>{0.0};
        const std::vector<double> kind_betas = wants_beta ? betas : std::vector<double>{0.0};
        for (double alpha : kind_alphas) {
            for (double beta : kind_betas) {
                SweepPoint point;
                point.kind = kind;
                point.alpha = wants_alpha ? alpha : std::nan("");
                point.beta = wants_beta ? beta : std::nan("");
                point.label = kind;
                if (wants_alpha) point.label += "_a" + fmt_g(alpha);
                if (wants_beta) point.label += "_b" + fmt_g(beta);

                point.settings = base;
                point.settings.solver.damping = make_damping(kind, alpha, beta);
                point.settings.solver.seed = substream_seed(base.solver.seed, "sweep", index);
                point.settings.raw.erase("sweep");
                point.settings.raw["seed"] = point.settings.solver.seed;
                nlohmann::json dmp;
                dmp["kind"] = kind;
                if (wants_alpha) dmp["alpha"] = alpha;
                if (wants_beta) {
                    dmp["beta"] = beta;
                    if (beta == 3.0) dmp["allow_beta_three"] = true;
                }
                point.settings.raw["damping"] = dmp;
                points.push_back(std::move(point));
                ++index;
            }
        }
    }
    return points;
}

SweepResult run_sweep(const RunSettings& base, const std::string& out_dir, unsigned workers) {
    const std::vector<SweepPoint> points = expand_sweep(base);
    fs::create_directories(out_dir);

    SweepResult result;
    result.children.resize(points.size());
    std::atomic<std::size_t> next{0};
    const unsigned n_workers =
        std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(points.size())));

    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            SweepChildSummary child;
            child.point = points[i];
            child.outcome =
                execute_run(points[i].settings, (fs::path(out_dir) / points[i].label).string());
            result.children[i] = std::move(child);
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    // Children were created in sorted parameter order, so the summary is
    // independent of completion order.
    std::ofstream csv(fs::path(out_dir) / "summary.csv", std::ios::trunc);
    csv << "damping,alpha,beta,label,status,exit_code,final_l2_kinetic_sq,energy_defect_max,"
           "dz_margin_min,decay_increase_max,gronwall_defect_max,checks_passed\n";
    const auto num = [](double v) {
        if (std::isnan(v)) return std::string();
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    bool all_failures_config = true;
    for (const auto& child : result.children) {
        const auto& o = child.outcome;
        csv << child.point.kind << ',' << num(child.point.alpha) << ',' << num(child.point.beta) << ','
            << child.point.label << ',' << o.manifest.status << ',' << o.exit_code << ','
            << num(o.final_kinetic) << ',' << num(o.energy_defect) << ',' << num(o.dz_margin) << ','
            << num(o.decay_increase) << ',' << num(o.gronwall_defect) << ','
            << (o.all_checks_passed ? "yes" : "no") << '\n';
        if (o.exit_code != kExitOk) {
            ++result.failed;
            if (o.exit_code != kExitConfigError) all_failures_config = false;
        }
    }
    if (result.failed > 0) {
        result.exit_code = all_failures_config ? kExitConfigError : kExitNumericalFailure;
    }
    return result;
}

}  // namespace dampflow
