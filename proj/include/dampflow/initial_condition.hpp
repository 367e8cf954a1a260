#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "dampflow/field.hpp"

namespace dampflow {

/// Classical divergence-free vortex; on non-cubic boxes the second component
/// is rescaled so the field stays exactly solenoidal.
struct TaylorGreenIC {
    double amplitude = 1.0;
};

/// Taylor-Green plus a random divergence-free perturbation scaled to the
/// given fraction of the vortex L2 norm.
struct TaylorGreenPerturbedIC {
    double amplitude = 1.0;
    double perturbation = 0.1;
    std::optional<std::uint64_t> seed;  // defaults to the run's "ic" sub-stream
};

/// Random band-limited divergence-free field rescaled so its H^{0,1} norm
/// hits h01_target exactly (one homogeneous rescale).
struct RandomDivFreeIC {
    double h01_target = 1.0;
    double spectrum_slope = -2.0;
    std::optional<std::uint64_t> seed;
};

/// Single cosine mode u_j(x) = a_j cos(xi.x) with xi = 2*pi*k/L. Projected,
/// so a non-orthogonal amplitude loses its gradient part.
struct SingleModeIC {
    std::array<int, 3> k{1, 0, 0};
    std::array<double, 3> amplitude{0.0, 1.0, 0.0};
};

/// Coefficients loaded from a checkpoint-format file (grid must match).
struct FromFileIC {
    std::string path;
};

using InitialCondition =
    std::variant<TaylorGreenIC, TaylorGreenPerturbedIC, RandomDivFreeIC, SingleModeIC, FromFileIC>;

/// Build the initial spectral field: real, divergence-free, Leray-projected
/// and Hermitian-symmetrized. master_seed feeds the "ic" sub-stream when the
/// condition does not pin its own seed.
SpectralVectorField make_initial_condition(const InitialCondition& ic, const Grid& grid,
                                           std::uint64_t master_seed);

std::string describe(const InitialCondition& ic);

}  // namespace dampflow
