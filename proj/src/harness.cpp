#include "dampflow/harness.hpp"

#include <filesystem>
#include <fstream>

#include "dampflow/checkpoint.hpp"

namespace dampflow {

namespace fs = std::filesystem;

namespace {

void run_enabled_checks(const RunSettings& settings, const EnergyLedger& ledger, RunOutcome& outcome) {
    const SolverConfig& cfg = settings.solver;
    const ChecksConfig& checks = settings.checks;
    const auto tol_for = [&](double scale) {
        return checks.tolerance ? *checks.tolerance
                                : default_inequality_tolerance(cfg.dt, cfg.t_end, scale);
    };

    if (checks.energy) {
        const auto report = check_energy_inequality(ledger, tol_for(ledger.initial_kinetic()));
        outcome.energy_defect = report.max_defect;
        outcome.all_checks_passed = outcome.all_checks_passed && report.pass;
        outcome.manifest.checks.push_back({report.name, report.pass, report.summary()});
    }

    const DampingKind kind = cfg.damping.kind();
    if (checks.dz_envelope && kind == DampingKind::Logarithmic) {
        const BAlpha b(cfg.damping.alpha());
        const double tol = tol_for(ledger.initial_dz_kinetic());
        const auto report = check_dz_inequality(ledger, b, checks.dz_variant, tol);
        outcome.dz_margin = -report.max_defect;
        outcome.all_checks_passed = outcome.all_checks_passed && report.pass;
        outcome.manifest.checks.push_back({report.name, report.pass, report.summary()});
    }
    if (checks.dz_envelope && kind == DampingKind::PowerLaw) {
        // The vertical-derivative estimate has three inconsistent candidate
        // right-hand sides in this regime; report margins, assert nothing.
        const auto report = report_dz_candidates(ledger);
        outcome.dz_margin = report.margin_16_usq;
        outcome.manifest.checks.push_back({"dz_candidates", true, report.summary()});
    }
    if (checks.decay_function && kind == DampingKind::Logarithmic) {
        const BAlpha b(cfg.damping.alpha());
        const double tol = tol_for(ledger.initial_dz_kinetic());
        const auto report = decay_function_check(ledger, b, checks.dz_variant, tol);
        outcome.decay_increase = report.largest_increase;
        outcome.all_checks_passed = outcome.all_checks_passed && report.pass;
        outcome.manifest.checks.push_back({"decay_function", report.pass, report.summary()});
    }
    if (checks.gronwall) {
        const auto input = gronwall_input_from_ledger(ledger);
        const auto report = gronwall_envelope(input, tol_for(ledger.initial_kinetic()));
        outcome.gronwall_defect = report.max_conclusion_defect;
        const bool pass = report.verdict == "pass";
        outcome.all_checks_passed = outcome.all_checks_passed && pass;
        outcome.manifest.checks.push_back(
            {"gronwall_envelope", pass,
             "gronwall: " + report.verdict +
                 " (hypothesis defect " + std::to_string(report.max_hypothesis_defect) +
                 ", conclusion defect " + std::to_string(report.max_conclusion_defect) + ")"});
    }
}

}  // namespace

RunOutcome execute_run(const RunSettings& settings, const std::string& out_dir,
                       const std::optional<std::string>& resume_from) {
    RunOutcome outcome;
    outcome.manifest.config_snapshot = settings.raw;
    outcome.manifest.seed = settings.solver.seed;
    outcome.manifest.started_at = iso_utc_now();

    fs::create_directories(out_dir);
    const std::string ledger_path = (fs::path(out_dir) / "ledger.csv").string();
    const std::string ckpt_path = (fs::path(out_dir) / "checkpoint.bin").string();
    bool wrote_checkpoint = false;

    try {
        const SolverConfig& cfg = settings.solver;
        const std::uint64_t cfg_hash = config_physics_hash(cfg);

        std::ofstream csv;
        std::optional<SimulationState> resume_state;
        EnergyLedger resume_ledger;
        if (resume_from) {
            Checkpoint ckpt = read_checkpoint(*resume_from);
            if (ckpt.u_hat.grid != cfg.grid) {
                throw ConfigError("resume: checkpoint grid does not match the configured grid");
            }
            if (ckpt.config_hash != cfg_hash) {
                throw ConfigError("resume: checkpoint was produced by an incompatible configuration");
            }
            if (ckpt.t > cfg.t_end + 0.5 * cfg.dt) {
                throw ConfigError("resume: checkpoint time is already past t_end");
            }
            resume_state.emplace(cfg.grid);
            resume_state->t = ckpt.t;
            resume_state->step_index = ckpt.step;
            resume_state->u_hat = std::move(ckpt.u_hat);
            resume_ledger.restore(ckpt.ledger_state);
            resume_ledger.set_damping(cfg.damping);
            const bool existing = fs::exists(ledger_path);
            csv.open(ledger_path, existing ? std::ios::app : std::ios::trunc);
            if (!existing) csv << EnergyLedger::csv_header() << '\n';
        } else {
            csv.open(ledger_path, std::ios::trunc);
            csv << EnergyLedger::csv_header() << '\n';
        }
        if (!csv) throw ConfigError("run: cannot open " + ledger_path + " for writing");

        RunHooks hooks;
        hooks.on_row = [&](const LedgerRow& row) {
            csv << EnergyLedger::csv_row(row) << '\n';
            csv.flush();
        };
        hooks.warn = [](const std::string& msg) { std::fprintf(stderr, "warning: %s\n", msg.c_str()); };
        if (settings.checkpoint.enabled && settings.checkpoint.every > 0) {
            hooks.after_step = [&](const SimulationState& state, const EnergyLedger& ledger) {
                if (state.step_index % settings.checkpoint.every == 0) {
                    Checkpoint ckpt(cfg.grid);
                    ckpt.t = state.t;
                    ckpt.step = state.step_index;
                    ckpt.config_hash = cfg_hash;
                    ckpt.u_hat = state.u_hat;
                    ckpt.ledger_state = ledger.snapshot();
                    write_checkpoint(ckpt_path, ckpt);
                    wrote_checkpoint = true;
                }
            };
        }

        RunResult result = resume_state
                               ? run_from(cfg, std::move(*resume_state), std::move(resume_ledger), hooks)
                               : run(cfg, hooks);
        csv.close();

        if (settings.checkpoint.enabled) {
            Checkpoint ckpt(cfg.grid);
            ckpt.t = result.state.t;
            ckpt.step = result.state.step_index;
            ckpt.config_hash = cfg_hash;
            ckpt.u_hat = result.state.u_hat;
            ckpt.ledger_state = result.ledger.snapshot();
            write_checkpoint(ckpt_path, ckpt);
            wrote_checkpoint = true;
        }

        const auto& rows = result.ledger.rows();
        outcome.final_kinetic = rows.empty() ? 0.0 : rows.back().kinetic;
        run_enabled_checks(settings, result.ledger, outcome);
        outcome.manifest.status = "completed";
        outcome.exit_code = outcome.all_checks_passed ? kExitOk : kExitNumericalFailure;
        if (!outcome.all_checks_passed) outcome.error = "one or more enabled checks failed";
    } catch (const BlowUpError& e) {
        outcome.exit_code = kExitNumericalFailure;
        outcome.error = e.what();
        outcome.manifest.status = "numerical_failure";
        outcome.all_checks_passed = false;
    } catch (const ConfigError& e) {
        outcome.exit_code = kExitConfigError;
        outcome.error = e.what();
        outcome.manifest.status = "config_error";
        outcome.all_checks_passed = false;
    }

    outcome.manifest.finished_at = iso_utc_now();
    outcome.manifest.exit_code = outcome.exit_code;
    if (fs::exists(ledger_path)) outcome.manifest.outputs.push_back(record_output(ledger_path));
    if (wrote_checkpoint && fs::exists(ckpt_path)) {
        outcome.manifest.outputs.push_back(record_output(ckpt_path));
    }
    write_manifest((fs::path(out_dir) / "manifest.json").string(), outcome.manifest);
    return outcome;
}

}  // namespace dampflow
