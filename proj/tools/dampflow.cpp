#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "dampflow/fft.hpp"
#include "dampflow/harness.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/oracle.hpp"
#include "dampflow/probes.hpp"
#include "dampflow/random.hpp"
#include "dampflow/sweep.hpp"

namespace df = dampflow;

namespace {

struct CheckLine {
    std::string name;
    bool pass;
    double measured;
    double threshold;
};

class SuiteTable {
  public:
    void add(const std::string& name, double measured, double threshold, bool smaller_is_pass = true) {
        const bool pass = smaller_is_pass ? measured <= threshold : measured >= threshold;
        lines_.push_back({name, pass, measured, threshold});
    }

    bool print(const std::string& suite) const {
        bool all = true;
        std::printf("== suite: %s ==\n", suite.c_str());
        for (const auto& line : lines_) {
            std::printf("  %-44s %9s   measured %12.5e   threshold %9.1e\n", line.name.c_str(),
                        line.pass ? "pass" : "FAIL", line.measured, line.threshold);
            all = all && line.pass;
        }
        std::printf("== %s: %s ==\n", suite.c_str(), all ? "all pass" : "FAILURES");
        return all;
    }

  private:
    std::vector<CheckLine> lines_;
};

double rel_diff(const df::SpectralVectorField& a, const df::SpectralVectorField& b) {
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < a.coeffs[j].size(); ++i) {
            worst = std::max(worst, std::abs(a.coeffs[j][i] - b.coeffs[j][i]));
            scale = std::max(scale, std::abs(a.coeffs[j][i]));
        }
    }
    return scale > 0.0 ? worst / scale : worst;
}

bool suite_projectors(std::uint64_t seed) {
    SuiteTable table;
    const df::Grid grid({16, 16, 16}, {6.283185307179586, 6.283185307179586, 6.283185307179586});
    df::Rng rng(df::substream_seed(seed, "verify.projectors"));

    double worst_idem = 0.0, worst_div = 0.0, worst_grad = 0.0, worst_cut = 0.0, worst_comm = 0.0;
    const int n_fields = 1000;
    for (int trial = 0; trial < n_fields; ++trial) {
        df::SpectralVectorField f = df::random_band_limited_vector(grid, rng);
        const df::SpectralVectorField p = df::leray_project(f);
        worst_idem = std::max(worst_idem, rel_diff(df::leray_project(p), p));
        const double mag = df::max_abs(p);
        if (mag > 0.0) {
            worst_div = std::max(worst_div, df::max_divergence(p) / (grid.xi_max() * mag));
        }
        if (trial < 50) {
            // Pure gradient field xi*s(xi) must be annihilated.
            df::SpectralField s = df::random_band_limited_scalar(grid, rng);
            df::SpectralVectorField g(grid);
            const auto& n = grid.modes();
            std::size_t idx = 0;
            for (int i1 = 0; i1 < n[0]; ++i1) {
                for (int i2 = 0; i2 < n[1]; ++i2) {
                    for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                        g.coeffs[0][idx] = grid.xi(0, i1) * s.coeffs[idx];
                        g.coeffs[1][idx] = grid.xi(1, i2) * s.coeffs[idx];
                        g.coeffs[2][idx] = grid.xi(2, i3) * s.coeffs[idx];
                    }
                }
            }
            const double gnorm = df::l2_norm(g);
            if (gnorm > 0.0) worst_grad = std::max(worst_grad, df::l2_norm(df::leray_project(g)) / gnorm);

            const double radius = 0.5 * grid.xi_max();
            const df::SpectralVectorField cut = df::friedrichs_cutoff(f, radius);
            worst_cut = std::max(worst_cut, rel_diff(df::friedrichs_cutoff(cut, radius), cut));
            worst_comm = std::max(worst_comm, rel_diff(df::friedrichs_cutoff(df::leray_project(f), radius),
                                                       df::leray_project(cut)));
            worst_comm = std::max(worst_comm, rel_diff(df::friedrichs_cutoff(df::derivative(f, 2), radius),
                                                       df::derivative(cut, 2)));
            worst_comm = std::max(worst_comm,
                                  rel_diff(df::friedrichs_cutoff(df::horizontal_laplacian(f), radius),
                                           df::horizontal_laplacian(cut)));
        }
    }
    table.add("leray idempotence (rel)", worst_idem, 1e-13);
    table.add("leray divergence annihilation (rel)", worst_div, 1e-13);
    table.add("gradient fields annihilated (rel L2)", worst_grad, 1e-13);
    table.add("friedrichs idempotence (rel)", worst_cut, 1e-13);
    table.add("friedrichs multiplier commutation (rel)", worst_comm, 1e-13);
    return table.print("projectors");
}

bool suite_norms(std::uint64_t seed) {
    SuiteTable table;
    const df::Grid grid({16, 16, 16}, {6.283185307179586, 6.283185307179586, 6.283185307179586});
    df::Rng rng(df::substream_seed(seed, "verify.norms"));

    double worst_homog = 0.0, worst_triangle = 0.0, worst_parseval = 0.0, worst_mixed = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        df::SpectralVectorField f = df::random_band_limited_vector(grid, rng);
        df::SpectralVectorField g = df::random_band_limited_vector(grid, rng);
        const df::PhysicalVectorField fp = df::inverse_transform(f);
        const df::PhysicalVectorField gp = df::inverse_transform(g);

        const double lam = 2.5;
        df::PhysicalVectorField scaled(grid);
        df::PhysicalVectorField sum(grid);
        for (int j = 0; j < 3; ++j) {
            for (std::size_t i = 0; i < fp.samples[j].size(); ++i) {
                scaled.samples[j][i] = lam * fp.samples[j][i];
                sum.samples[j][i] = fp.samples[j][i] + gp.samples[j][i];
            }
        }
        for (double p : {1.0, 2.0, 4.0}) {
            const double nf = df::lebesgue_norm(fp, p);
            worst_homog = std::max(worst_homog, std::abs(df::lebesgue_norm(scaled, p) - lam * nf) /
                                                    std::max(lam * nf, 1e-300));
            const double tri = df::lebesgue_norm(sum, p) - nf - df::lebesgue_norm(gp, p);
            worst_triangle = std::max(worst_triangle, tri / std::max(nf, 1e-300));
        }
        const double l2 = df::lebesgue_norm(fp, 2.0);
        worst_parseval =
            std::max(worst_parseval, std::abs(df::sobolev_norm(f, 0.0, true) - l2) / std::max(l2, 1e-300));
        const double mixed = df::mixed_norm(fp, 4.0, 4.0);
        worst_mixed =
            std::max(worst_mixed, std::abs(mixed - df::lebesgue_norm(fp, 4.0)) / std::max(mixed, 1e-300));
    }
    table.add("absolute homogeneity (rel)", worst_homog, 1e-13);
    table.add("triangle inequality slack (rel)", worst_triangle, 1e-12);
    table.add("parseval: Hdot^0 vs L2 (rel)", worst_parseval, 1e-13);
    table.add("mixed(p,p) vs L^p (rel)", worst_mixed, 1e-12);

    const auto product = df::product_law_probe(0.5, 0.5, 25, grid, seed);
    table.add("product-law probe max ratio finite", std::isfinite(product.max_ratio) ? 0.0 : 1.0, 0.5);
    const auto interp = df::interpolation_probe(10, grid, seed);
    table.add("interpolation probe max ratio finite", std::isfinite(interp.max_ratio) ? 0.0 : 1.0, 0.5);
    return table.print("norms");
}

bool suite_monotonicity(std::uint64_t seed) {
    SuiteTable table;
    for (int dim = 1; dim <= 3; ++dim) {
        const auto report = df::monotonicity_check(dim, 1000000, seed);
        table.add("min normalized inner product, d=" + std::to_string(dim), -report.min_normalized,
                  1e-12);
    }
    return table.print("monotonicity");
}

bool suite_oracle(std::uint64_t seed) {
    SuiteTable table;
    const df::Grid grid({8, 8, 8}, {6.283185307179586, 6.283185307179586, 6.283185307179586});
    df::Rng rng(df::substream_seed(seed, "verify.oracle"));

    double worst_fwd = 0.0, worst_conv = 0.0, worst_neutral = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        df::SpectralVectorField u(grid);
        if (trial == 0) {
            u = df::make_initial_condition(df::TaylorGreenIC{1.0}, grid, seed);
        } else {
            df::Rng ic_rng(rng.next_u64());
            u = df::random_divergence_free(grid, ic_rng);
        }
        const df::PhysicalVectorField up = df::inverse_transform(u);
        worst_fwd = std::max(worst_fwd, rel_diff(df::forward_transform(up), df::oracle::naive_dft(up)));

        const df::SpectralVectorField fast = df::nonlinear_term(u, df::DealiasRule::TwoThirds);
        const df::SpectralVectorField slow = df::oracle::convolution_nonlinear(u);
        double worst = 0.0, scale = 0.0;
        const auto& n = grid.modes();
        std::size_t idx = 0;
        for (int i1 = 0; i1 < n[0]; ++i1) {
            for (int i2 = 0; i2 < n[1]; ++i2) {
                for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                    if (!df::dealias_keeps(grid, i1, i2, i3)) continue;
                    for (int j = 0; j < 3; ++j) {
                        worst = std::max(worst, std::abs(fast.coeffs[j][idx] - slow.coeffs[j][idx]));
                        scale = std::max(scale, std::abs(slow.coeffs[j][idx]));
                    }
                }
            }
        }
        if (scale > 0.0) worst_conv = std::max(worst_conv, worst / scale);

        const double l2 = df::l2_norm(u);
        if (l2 > 0.0) {
            worst_neutral = std::max(worst_neutral, std::abs(df::l2_inner(fast, u)) / (l2 * l2 * l2));
        }
    }
    table.add("forward transform vs direct DFT (rel)", worst_fwd, 1e-12);
    table.add("nonlinear term vs direct convolution (rel)", worst_conv, 1e-12);
    table.add("advection energy neutrality (rel)", worst_neutral, 1e-11);
    return table.print("oracle");
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    bool ok = true;
    bool known = false;
    if (suite == "projectors" || suite == "all") {
        ok = suite_projectors(seed) && ok;
        known = true;
    }
    if (suite == "norms" || suite == "all") {
        ok = suite_norms(seed) && ok;
        known = true;
    }
    if (suite == "monotonicity" || suite == "all") {
        ok = suite_monotonicity(seed) && ok;
        known = true;
    }
    if (suite == "oracle" || suite == "all") {
        ok = suite_oracle(seed) && ok;
        known = true;
    }
    if (!known) {
        std::fprintf(stderr, "error: unknown suite '%s' (norms|projectors|monotonicity|oracle|all)\n",
                     suite.c_str());
        return df::kExitConfigError;
    }
    return ok ? df::kExitOk : df::kExitNumericalFailure;
}

unsigned resolve_workers(unsigned flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("DAMPFLOW_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void print_outcome(const df::RunOutcome& outcome) {
    for (const auto& check : outcome.manifest.checks) {
        std::printf("  %s\n", check.detail.c_str());
    }
    std::printf("status: %s (exit %d)%s%s\n", outcome.manifest.status.c_str(), outcome.exit_code,
                outcome.error.empty() ? "" : " - ", outcome.error.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dampflow: anisotropic Navier-Stokes with nonlinear damping, plus its verification harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", suite = "all", checkpoint_path;
    unsigned workers = 0;
    std::int64_t seed_flag = -1;

    auto* run_cmd = app.add_subcommand("run", "integrate one configuration and check it");
    run_cmd->add_option("--config", config_path, "config file (JSON)")->required();
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--seed", seed_flag, "override the config seed");

    auto* verify_cmd = app.add_subcommand("verify", "run a property/oracle suite");
    verify_cmd->add_option("--suite", suite, "norms|projectors|monotonicity|oracle|all");
    verify_cmd->add_option("--seed", seed_flag, "suite seed");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid");
    sweep_cmd->add_option("--config", config_path, "config file with a 'sweep' object")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory");
    sweep_cmd->add_option("--workers", workers, "concurrent children (env DAMPFLOW_WORKERS)");
    sweep_cmd->add_option("--seed", seed_flag, "override the config seed");

    auto* resume_cmd = app.add_subcommand("resume", "continue a run from a checkpoint");
    resume_cmd->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();
    resume_cmd->add_option("--config", config_path, "config file (JSON)")->required();
    resume_cmd->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify_cmd->parsed()) {
            return cmd_verify(suite, seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag) : 0);
        }

        df::RunSettings settings = df::load_run_settings(config_path);
        if (seed_flag >= 0) {
            settings.solver.seed = static_cast<std::uint64_t>(seed_flag);
            settings.raw["seed"] = settings.solver.seed;
        }

        if (run_cmd->parsed()) {
            const df::RunOutcome outcome = df::execute_run(settings, out_dir);
            print_outcome(outcome);
            return outcome.exit_code;
        }
        if (resume_cmd->parsed()) {
            const df::RunOutcome outcome = df::execute_run(settings, out_dir, checkpoint_path);
            print_outcome(outcome);
            return outcome.exit_code;
        }
        if (sweep_cmd->parsed()) {
            const df::SweepResult result = df::run_sweep(settings, out_dir, resolve_workers(workers));
            std::printf("sweep: %zu children, %zu failed; summary at %s/summary.csv\n",
                        result.children.size(), result.failed, out_dir.c_str());
            return result.exit_code;
        }
    } catch (const df::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return df::kExitConfigError;
    } catch (const df::BlowUpError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return df::kExitNumericalFailure;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return df::kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return df::kExitNumericalFailure;
    }
    return df::kExitOk;
}
