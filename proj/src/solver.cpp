#include "dampflow/solver.hpp"

#include <cmath>
#include <numbers>

#include "dampflow/fft.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"

namespace dampflow {

namespace {

std::uint64_t steps_for_horizon(double t_end, double dt) {
    if (!(t_end > 0.0)) return 0;
    return static_cast<std::uint64_t>(std::ceil(t_end / dt - 1e-9));
}

}  // namespace

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("SolverConfig: dt must be positive");
    if (t_end < 0.0) throw ConfigError("SolverConfig: t_end must be nonnegative");
    if (!(viscosity > 0.0)) throw ConfigError("SolverConfig: viscosity must be positive");
    if (output_every < 1) throw ConfigError("SolverConfig: output_every must be >= 1");
    if (cutoff_radius && !(*cutoff_radius > 0.0)) {
        throw ConfigError("SolverConfig: cutoff radius must be positive");
    }
}

SpectralVectorField nonlinear_term(const SpectralVectorField& u_hat, DealiasRule rule) {
    const Grid& grid = u_hat.grid;
    const std::size_t n = grid.mode_count();
    SpectralVectorField masked = u_hat;
    if (rule == DealiasRule::TwoThirds) dealias_two_thirds_in_place(masked);

    const PhysicalVectorField u = inverse_transform(masked, false);
    PhysicalVectorField advection(grid);
    for (int j = 0; j < 3; ++j) {
        const PhysicalVectorField dju = inverse_transform(derivative(masked, j), false);
        for (int i = 0; i < 3; ++i) {
            auto& acc = advection.samples[i];
            const auto& uj = u.samples[j];
            const auto& d = dju.samples[i];
            for (std::size_t p = 0; p < n; ++p) acc[p] += uj[p] * d[p];
        }
    }
    SpectralVectorField out = forward_transform(advection);
    if (rule == DealiasRule::TwoThirds) dealias_two_thirds_in_place(out);
    return out;
}

namespace {

/// P J_R [-u.grad u - damping]: the part the RK2 stage advances explicitly.
/// The damping term is evaluated pointwise on the full (unmasked) state and
/// deliberately not dealiased: it enters the energy balance with a definite
/// sign, so aliasing there perturbs constants, not signs.
SpectralVectorField advection_damping_rhs(const SpectralVectorField& u_hat, const SolverConfig& cfg) {
    const std::size_t n = u_hat.grid.mode_count();
    SpectralVectorField out = nonlinear_term(u_hat, cfg.dealias);
    for (int i = 0; i < 3; ++i) {
        for (auto& c : out.coeffs[i]) c = -c;
    }
    if (cfg.damping.active()) {
        const PhysicalVectorField u_full = inverse_transform(u_hat, false);
        const SpectralVectorField damping_hat = forward_transform(damping_term(u_full, cfg.damping));
        for (int i = 0; i < 3; ++i) {
            for (std::size_t p = 0; p < n; ++p) out.coeffs[i][p] -= damping_hat.coeffs[i][p];
        }
    }
    // The state never carries Nyquist content, so dropping it here costs
    // nothing in the energy balance and keeps projection and symmetrization
    // consistent.
    strip_nyquist_in_place(out);
    leray_project_in_place(out);
    if (cfg.cutoff_radius) friedrichs_cutoff_in_place(out, *cfg.cutoff_radius);
    return out;
}

}  // namespace

SpectralVectorField rhs(const SimulationState& state, const SolverConfig& cfg) {
    SpectralVectorField out = advection_damping_rhs(state.u_hat, cfg);
    const Grid& grid = state.u_hat.grid;
    const auto& n = grid.modes();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        const double x1 = grid.xi(0, i1);
        for (int i2 = 0; i2 < n[1]; ++i2) {
            const double x2 = grid.xi(1, i2);
            const double mult = -cfg.viscosity * (x1 * x1 + x2 * x2);
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                for (int j = 0; j < 3; ++j) out.coeffs[j][idx] += mult * state.u_hat.coeffs[j][idx];
            }
        }
    }
    if (cfg.cutoff_radius) friedrichs_cutoff_in_place(out, *cfg.cutoff_radius);
    return out;
}

Solver::Solver(const SolverConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const Grid& grid = cfg_.grid;
    const auto& n = grid.modes();
    heat_factor_.resize(grid.mode_count());
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        const double x1 = grid.xi(0, i1);
        for (int i2 = 0; i2 < n[1]; ++i2) {
            const double x2 = grid.xi(1, i2);
            const double factor = std::exp(-cfg_.viscosity * (x1 * x1 + x2 * x2) * cfg_.dt);
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) heat_factor_[idx] = factor;
        }
    }
}

SpectralVectorField Solver::explicit_rhs(const SpectralVectorField& u_hat) {
    return advection_damping_rhs(u_hat, cfg_);
}

SimulationState Solver::initial_state() {
    SimulationState state(cfg_.grid);
    state.u_hat = make_initial_condition(cfg_.ic, cfg_.grid, cfg_.seed);
    if (cfg_.cutoff_radius) friedrichs_cutoff_in_place(state.u_hat, *cfg_.cutoff_radius);
    leray_project_in_place(state.u_hat);
    hermitian_symmetrize(state.u_hat);
    state.t = 0.0;
    state.step_index = 0;

    // CFL heuristic against the initial max speed; the run loop warns when
    // the running speed doubles past this reference.
    const double u_ref = max_speed(inverse_transform(state.u_hat, false));
    if (u_ref > 0.0) {
        const double limit = 0.5 / (cfg_.grid.xi_max() * u_ref);
        if (cfg_.dt > limit) {
            throw ConfigError("SolverConfig: dt=" + std::to_string(cfg_.dt) +
                              " exceeds the advective stability heuristic 0.5/(max|xi|*u_ref)=" +
                              std::to_string(limit));
        }
    }
    return state;
}

SimulationState Solver::step(const SimulationState& state) {
    const std::size_t n = cfg_.grid.mode_count();
    const double dt = cfg_.dt;

    const SpectralVectorField f1 = explicit_rhs(state.u_hat);

    SpectralVectorField predictor(cfg_.grid);
    for (int j = 0; j < 3; ++j) {
        const auto& u = state.u_hat.coeffs[j];
        const auto& f = f1.coeffs[j];
        auto& p = predictor.coeffs[j];
        for (std::size_t i = 0; i < n; ++i) p[i] = heat_factor_[i] * (u[i] + dt * f[i]);
    }
    const SpectralVectorField f2 = explicit_rhs(predictor);

    SimulationState next(cfg_.grid);
    for (int j = 0; j < 3; ++j) {
        const auto& u = state.u_hat.coeffs[j];
        const auto& a = f1.coeffs[j];
        const auto& b = f2.coeffs[j];
        auto& out = next.u_hat.coeffs[j];
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = heat_factor_[i] * (u[i] + 0.5 * dt * a[i]) + 0.5 * dt * b[i];
        }
    }

    leray_project_in_place(next.u_hat);
    hermitian_symmetrize(next.u_hat);
    next.step_index = state.step_index + 1;
    next.t = static_cast<double>(next.step_index) * dt;

    if (!all_finite(next.u_hat)) {
        const auto [component, mode] = first_non_finite(next.u_hat);
        throw BlowUpError(next.step_index, component, mode, next.t);
    }
    return next;
}

SimulationState step(const SimulationState& state, const SolverConfig& cfg) {
    Solver solver(cfg);
    return solver.step(state);
}

void Solver::append_ledger(const SimulationState& state, EnergyLedger& ledger) const {
    ledger_append(state, cfg_, ledger);
}

void ledger_append(const SimulationState& state, const SolverConfig& cfg, EnergyLedger& ledger) {
    const Grid& grid = state.u_hat.grid;
    const auto& nm = grid.modes();
    const std::size_t n = grid.mode_count();
    const DampingSpec& damping = cfg.damping;
    ledger.set_damping(damping);

    // Quadratic mode-space functionals.
    double kinetic = 0.0, gradh = 0.0, dz_kinetic = 0.0, dz_gradh = 0.0;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < nm[0]; ++i1) {
        const double x1 = grid.xi(0, i1);
        for (int i2 = 0; i2 < nm[1]; ++i2) {
            const double x2 = grid.xi(1, i2);
            const double h2 = x1 * x1 + x2 * x2;
            for (int i3 = 0; i3 < nm[2]; ++i3, ++idx) {
                const double k3 = derivative_wavenumber(grid, 2, i3);
                const double mag2 = std::norm(state.u_hat.coeffs[0][idx]) +
                                    std::norm(state.u_hat.coeffs[1][idx]) +
                                    std::norm(state.u_hat.coeffs[2][idx]);
                kinetic += mag2;
                gradh += h2 * mag2;
                dz_kinetic += k3 * k3 * mag2;
                dz_gradh += h2 * k3 * k3 * mag2;
            }
        }
    }

    // Lattice functionals built from u and d3 u.
    const PhysicalVectorField u = inverse_transform(state.u_hat, false);
    const PhysicalVectorField dzu = inverse_transform(derivative(state.u_hat, 2), false);
    const double alpha = damping.alpha();
    const double beta = damping.kind() == DampingKind::PowerLaw ? damping.beta() : 3.0;
    double damping_sum = 0.0;
    double ratio_sum = 0.0, log_sq_sum = 0.0, log_u2_sum = 0.0;
    double pow_sq_sum = 0.0, pow_abs_sum = 0.0;
    double cand_u2_sum = 0.0, cand_pow_sum = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        const double u1 = u.samples[0][p], u2 = u.samples[1][p], u3 = u.samples[2][p];
        const double d1 = dzu.samples[0][p], d2 = dzu.samples[1][p], d3 = dzu.samples[2][p];
        const double m2 = u1 * u1 + u2 * u2 + u3 * u3;
        const double dz_usq = 2.0 * (u1 * d1 + u2 * d2 + u3 * d3);  // d3|u|^2
        const double dz_usq_sq = dz_usq * dz_usq;
        const double dzu2 = d1 * d1 + d2 * d2 + d3 * d3;

        damping_sum += damping_dissipation_density(m2, damping);
        if (damping.kind() == DampingKind::Logarithmic) {
            const double log_term = std::log(std::numbers::e + m2);
            ratio_sum += (m2 / (std::numbers::e + m2)) * dz_usq_sq;
            log_sq_sum += log_term * dz_usq_sq;
            log_u2_sum += log_term * m2 * dzu2;
        } else if (damping.kind() == DampingKind::PowerLaw) {
            const double m_bm3 = m2 > 0.0 ? std::pow(m2, 0.5 * (beta - 3.0)) : (beta == 3.0 ? 1.0 : 0.0);
            const double m_bm1 = m2 > 0.0 ? std::pow(m2, 0.5 * (beta - 1.0)) : 0.0;
            pow_sq_sum += m_bm3 * dz_usq_sq;
            pow_abs_sum += m_bm1 * std::abs(dz_usq);
        }
        const double m_bm1_cand = m2 > 0.0 ? std::pow(m2, 0.5 * (beta - 1.0)) : 0.0;
        cand_u2_sum += m2 * std::abs(dz_usq);
        cand_pow_sum += m_bm1_cand * std::abs(dz_usq);
    }
    const double dv = grid.cell_volume();

    std::array<double, kLedgerCumCount> integrands{};
    integrands[0] = 2.0 * gradh;
    integrands[1] = 2.0 * alpha * damping_sum * dv;
    integrands[2] = 2.0 * dz_gradh;
    integrands[3] = alpha * ratio_sum * dv;
    integrands[4] = alpha * log_sq_sum * dv;
    integrands[5] = alpha * log_u2_sum * dv;
    integrands[6] = alpha * (beta - 1.0) * pow_sq_sum * dv;
    integrands[7] = 2.0 * alpha * pow_abs_sum * dv;
    integrands[8] = 16.0 * cand_u2_sum * dv;
    integrands[9] = 16.0 * cand_pow_sum * dv;
    integrands[10] = 8.0 * cand_u2_sum * dv;

    ledger.append(state.t, kinetic, dz_kinetic, integrands);
}

namespace {

RunResult run_loop(Solver& solver, SimulationState state, EnergyLedger ledger, bool append_first,
                   const RunHooks& hooks) {
    const SolverConfig& cfg = solver.config();
    const auto emit = [&](const LedgerRow& row) {
        if (hooks.on_row) hooks.on_row(row);
    };
    if (append_first) {
        solver.append_ledger(state, ledger);
        emit(ledger.rows().back());
    }

    const std::uint64_t n_steps = steps_for_horizon(cfg.t_end, cfg.dt);
    double speed_watermark = max_speed(inverse_transform(state.u_hat, false));
    while (state.step_index < n_steps) {
        state = solver.step(state);
        if (state.step_index % cfg.output_every == 0 || state.step_index == n_steps) {
            solver.append_ledger(state, ledger);
            emit(ledger.rows().back());
            const double speed = max_speed(inverse_transform(state.u_hat, false));
            if (speed_watermark > 0.0 && speed > 2.0 * speed_watermark) {
                speed_watermark = speed;
                if (hooks.warn) {
                    hooks.warn("max speed doubled to " + std::to_string(speed) + " at t=" +
                               std::to_string(state.t) +
                               "; the CFL heuristic was sized for the initial data");
                }
            }
        }
        if (hooks.after_step) hooks.after_step(state, ledger);
    }
    return RunResult{std::move(state), std::move(ledger)};
}

}  // namespace

RunResult run(const SolverConfig& cfg, const RunHooks& hooks) {
    Solver solver(cfg);
    SimulationState state = solver.initial_state();
    EnergyLedger ledger;
    ledger.set_damping(cfg.damping);
    return run_loop(solver, std::move(state), std::move(ledger), true, hooks);
}

RunResult run_from(const SolverConfig& cfg, SimulationState state, EnergyLedger ledger,
                   const RunHooks& hooks) {
    Solver solver(cfg);
    return run_loop(solver, std::move(state), std::move(ledger), false, hooks);
}

}  // namespace dampflow
