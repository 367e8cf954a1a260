#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "dampflow/damping.hpp"
#include "dampflow/errors.hpp"
#include "dampflow/field.hpp"
#include "dampflow/initial_condition.hpp"
#include "dampflow/ledger.hpp"

namespace dampflow {

enum class DealiasRule { TwoThirds, None };

/// Everything a run needs. Viscosity is 1 unless explicitly overridden; the
/// vertical direction never sees it either way (the dissipation is the
/// horizontal Laplacian only).
struct SolverConfig {
    Grid grid{{16, 16, 16}, {6.283185307179586, 6.283185307179586, 6.283185307179586}};
    DampingSpec damping = DampingSpec::none();
    double viscosity = 1.0;
    double dt = 1e-3;
    double t_end = 1.0;
    std::optional<double> cutoff_radius;  // Friedrichs ball; none = all grid modes
    DealiasRule dealias = DealiasRule::TwoThirds;
    InitialCondition ic = TaylorGreenIC{};
    std::uint64_t output_every = 1;  // ledger cadence in steps
    std::uint64_t seed = 0;

    void validate() const;
};

struct SimulationState {
    double t = 0.0;
    std::uint64_t step_index = 0;
    SpectralVectorField u_hat;

    explicit SimulationState(const Grid& grid) : u_hat(grid) {}
};

/// Pseudo-spectral advection term (u.grad u): transform to the lattice, form
/// u_j d_j u componentwise, transform back. Under the two-thirds rule the
/// inputs and the result are masked, which makes the retained modes exactly
/// alias-free and the term exactly energy-neutral against u. Not projected.
SpectralVectorField nonlinear_term(const SpectralVectorField& u_hat, DealiasRule rule);

/// Full right-hand side: P[-u.grad u - damping] + nu*Lap_h u, truncated to
/// the Friedrichs ball when one is configured. The pressure gradient never
/// appears; it is exactly the part the projection removes.
SpectralVectorField rhs(const SimulationState& state, const SolverConfig& cfg);

/// Advances one step of the truncated Galerkin system and re-establishes the
/// divergence-free and Hermitian invariants. Convenience wrapper over Solver.
SimulationState step(const SimulationState& state, const SolverConfig& cfg);

struct RunResult {
    SimulationState state;
    EnergyLedger ledger;
};

using LedgerObserver = std::function<void(const LedgerRow&)>;
using StepHook = std::function<void(const SimulationState&, const EnergyLedger&)>;
using WarningSink = std::function<void(const std::string&)>;

struct RunHooks {
    LedgerObserver on_row;  // after each ledger append
    StepHook after_step;    // after each step (checkpoint cadence lives here)
    WarningSink warn;
};

/// Integrates from t = 0 to t_end (whole steps of dt, horizon rounded up),
/// appending a ledger row at t = 0, every output_every steps, and at the end.
/// Deterministic for a fixed config and seed. Ledger rows reach the observer
/// before any abort propagates, so partial output survives a blow-up.
RunResult run(const SolverConfig& cfg, const RunHooks& hooks = {});

/// Continue a run from a restored state + ledger accumulator (checkpoint
/// resume). Appends to `ledger` and returns when cfg.t_end is reached.
RunResult run_from(const SolverConfig& cfg, SimulationState state, EnergyLedger ledger,
                   const RunHooks& hooks = {});

/// The stepping engine: integrating factor for the stiff horizontal
/// diffusion (exact per mode), explicit second-order Runge-Kutta for
/// advection and damping.
class Solver {
  public:
    explicit Solver(const SolverConfig& cfg);

    /// One IMEX step; throws BlowUpError on the first non-finite coefficient.
    SimulationState step(const SimulationState& state);

    /// Builds the initial state: IC construction, projection, symmetrization,
    /// Friedrichs truncation, and the CFL guard against the IC's max speed.
    SimulationState initial_state();

    const SolverConfig& config() const { return cfg_; }

    /// Ledger sampling: computes instantaneous functionals and appends.
    void append_ledger(const SimulationState& state, EnergyLedger& ledger) const;

  private:
    SpectralVectorField explicit_rhs(const SpectralVectorField& u_hat);

    SolverConfig cfg_;
    std::vector<double> heat_factor_;  // exp(-nu*|xi_h|^2*dt) per mode
};

/// Computes the ledger functionals of a state without a Solver.
void ledger_append(const SimulationState& state, const SolverConfig& cfg, EnergyLedger& ledger);

}  // namespace dampflow
