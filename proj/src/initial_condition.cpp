#include "dampflow/initial_condition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dampflow/checkpoint.hpp"
#include "dampflow/errors.hpp"
#include "dampflow/fft.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/random.hpp"

namespace dampflow {

namespace {

SpectralVectorField taylor_green(const Grid& grid, double amplitude) {
    // u1 =  A cos(k1 x) sin(k2 y) sin(k3 z)
    // u2 = -A (k1/k2) sin(k1 x) cos(k2 y) sin(k3 z)
    // u3 =  0
    // The k1/k2 factor keeps div u = 0 on non-cubic boxes.
    PhysicalVectorField u(grid);
    const auto& n = grid.modes();
    const double k1 = 2.0 * std::numbers::pi / grid.box()[0];
    const double k2 = 2.0 * std::numbers::pi / grid.box()[1];
    const double k3 = 2.0 * std::numbers::pi / grid.box()[2];
    for (int i1 = 0; i1 < n[0]; ++i1) {
        const double x = grid.coord(0, i1);
        for (int i2 = 0; i2 < n[1]; ++i2) {
            const double y = grid.coord(1, i2);
            for (int i3 = 0; i3 < n[2]; ++i3) {
                const double z = grid.coord(2, i3);
                const std::size_t idx = grid.index(i1, i2, i3);
                u.samples[0][idx] = amplitude * std::cos(k1 * x) * std::sin(k2 * y) * std::sin(k3 * z);
                u.samples[1][idx] =
                    -amplitude * (k1 / k2) * std::sin(k1 * x) * std::cos(k2 * y) * std::sin(k3 * z);
                u.samples[2][idx] = 0.0;
            }
        }
    }
    return forward_transform(u);
}

SpectralVectorField single_mode(const Grid& grid, const SingleModeIC& ic) {
    const auto& n = grid.modes();
    for (int axis = 0; axis < 3; ++axis) {
        if (std::abs(ic.k[axis]) >= n[axis] / 2) {
            throw ConfigError("SingleMode initial condition: |k| must be < N/2 along every axis");
        }
    }
    SpectralVectorField f(grid);
    const double half = 0.5 * std::sqrt(grid.volume());
    const auto wrap = [&](int k, int axis) { return k >= 0 ? k : k + n[axis]; };
    const std::size_t plus = grid.index(wrap(ic.k[0], 0), wrap(ic.k[1], 1), wrap(ic.k[2], 2));
    const std::size_t minus = grid.index(wrap(-ic.k[0], 0), wrap(-ic.k[1], 1), wrap(-ic.k[2], 2));
    for (int j = 0; j < 3; ++j) {
        f.coeffs[j][plus] += Complex{ic.amplitude[j] * half, 0.0};
        if (minus != plus) f.coeffs[j][minus] += Complex{ic.amplitude[j] * half, 0.0};
    }
    return f;
}

SpectralVectorField random_div_free_ic(const Grid& grid, const RandomDivFreeIC& ic,
                                       std::uint64_t master_seed) {
    const std::uint64_t seed = ic.seed ? *ic.seed : substream_seed(master_seed, "ic");
    Rng rng(seed);
    SpectralVectorField f = random_divergence_free(grid, rng, ic.spectrum_slope);
    const double current = h01_norm(f);
    if (current == 0.0) throw ConfigError("RandomDivFree initial condition produced a zero field");
    const double scale = ic.h01_target / current;
    for (int j = 0; j < 3; ++j) {
        for (auto& c : f.coeffs[j]) c *= scale;
    }
    return f;
}

SpectralVectorField from_file(const Grid& grid, const FromFileIC& ic) {
    Checkpoint ckpt = read_checkpoint(ic.path);
    if (ckpt.u_hat.grid != grid) {
        throw ConfigError("FromFile initial condition: grid in " + ic.path +
                          " does not match the configured grid");
    }
    if (!all_finite(ckpt.u_hat)) {
        throw ConfigError("FromFile initial condition: non-finite coefficients in " + ic.path);
    }
    return std::move(ckpt.u_hat);
}

}  // namespace

SpectralVectorField make_initial_condition(const InitialCondition& ic, const Grid& grid,
                                           std::uint64_t master_seed) {
    SpectralVectorField f = std::visit(
        [&](const auto& spec) -> SpectralVectorField {
            using T = std::decay_t<decltype(spec)>;
            if constexpr (std::is_same_v<T, TaylorGreenIC>) {
                return taylor_green(grid, spec.amplitude);
            } else if constexpr (std::is_same_v<T, TaylorGreenPerturbedIC>) {
                SpectralVectorField base = taylor_green(grid, spec.amplitude);
                const std::uint64_t seed = spec.seed ? *spec.seed : substream_seed(master_seed, "ic");
                Rng rng(seed);
                SpectralVectorField noise = random_divergence_free(grid, rng);
                const double noise_l2 = l2_norm(noise);
                if (noise_l2 > 0.0) {
                    const double scale = spec.perturbation * l2_norm(base) / noise_l2;
                    for (int j = 0; j < 3; ++j) {
                        for (std::size_t i = 0; i < base.coeffs[j].size(); ++i) {
                            base.coeffs[j][i] += scale * noise.coeffs[j][i];
                        }
                    }
                }
                return base;
            } else if constexpr (std::is_same_v<T, RandomDivFreeIC>) {
                return random_div_free_ic(grid, spec, master_seed);
            } else if constexpr (std::is_same_v<T, SingleModeIC>) {
                return single_mode(grid, spec);
            } else {
                return from_file(grid, spec);
            }
        },
        ic);
    strip_nyquist_in_place(f);
    leray_project_in_place(f);
    hermitian_symmetrize(f);
    return f;
}

std::string describe(const InitialCondition& ic) {
    return std::visit(
        [](const auto& spec) -> std::string {
            using T = std::decay_t<decltype(spec)>;
            [[maybe_unused]] const auto seed_suffix = [](const std::optional<std::uint64_t>& seed) {
                return seed ? ", seed=" + std::to_string(*seed) : std::string();
            };
            if constexpr (std::is_same_v<T, TaylorGreenIC>) {
                return "taylor_green(amplitude=" + std::to_string(spec.amplitude) + ")";
            } else if constexpr (std::is_same_v<T, TaylorGreenPerturbedIC>) {
                return "taylor_green_perturbed(amplitude=" + std::to_string(spec.amplitude) +
                       ", perturbation=" + std::to_string(spec.perturbation) + seed_suffix(spec.seed) + ")";
            } else if constexpr (std::is_same_v<T, RandomDivFreeIC>) {
                return "random_div_free(h01_target=" + std::to_string(spec.h01_target) +
                       ", spectrum_slope=" + std::to_string(spec.spectrum_slope) + seed_suffix(spec.seed) +
                       ")";
            } else if constexpr (std::is_same_v<T, SingleModeIC>) {
                return "single_mode(k=[" + std::to_string(spec.k[0]) + "," + std::to_string(spec.k[1]) +
                       "," + std::to_string(spec.k[2]) + "])";
            } else {
                return "from_file(" + spec.path + ")";
            }
        },
        ic);
}

}  // namespace dampflow
