#pragma once

#include <array>
#include <complex>
#include <vector>

#include "dampflow/grid.hpp"

namespace dampflow {

using Complex = std::complex<double>;

/// Scalar field in mode space: one complex amplitude per grid mode,
/// stored row-major (axis 1 slowest).
struct SpectralField {
    Grid grid;
    std::vector<Complex> coeffs;

    explicit SpectralField(const Grid& g) : grid(g), coeffs(g.mode_count(), Complex{0.0, 0.0}) {}
};

/// Scalar field sampled on the collocation lattice.
struct PhysicalField {
    Grid grid;
    std::vector<double> samples;

    explicit PhysicalField(const Grid& g) : grid(g), samples(g.mode_count(), 0.0) {}
};

/// Velocity-type field in mode space; components u1, u2, u3.
struct SpectralVectorField {
    Grid grid;
    std::array<std::vector<Complex>, 3> coeffs;

    explicit SpectralVectorField(const Grid& g) : grid(g) {
        for (auto& c : coeffs) c.assign(g.mode_count(), Complex{0.0, 0.0});
    }

    std::vector<Complex>& component(int j) { return coeffs[j]; }
    const std::vector<Complex>& component(int j) const { return coeffs[j]; }
};

/// Velocity-type field on the collocation lattice.
struct PhysicalVectorField {
    Grid grid;
    std::array<std::vector<double>, 3> samples;

    explicit PhysicalVectorField(const Grid& g) : grid(g) {
        for (auto& s : samples) s.assign(g.mode_count(), 0.0);
    }

    std::vector<double>& component(int j) { return samples[j]; }
    const std::vector<double>& component(int j) const { return samples[j]; }
};

/// Largest coefficient magnitude over all components and modes.
double max_abs(const SpectralVectorField& f);
double max_abs(const SpectralField& f);

/// Largest pointwise Euclidean speed max_x |u(x)|.
double max_speed(const PhysicalVectorField& f);

/// True iff every entry is finite (no NaN/Inf).
bool all_finite(const SpectralVectorField& f);
bool all_finite(const PhysicalVectorField& f);

/// Location of the first non-finite coefficient, as (component, flat index).
/// Only meaningful when !all_finite.
std::pair<int, std::size_t> first_non_finite(const SpectralVectorField& f);

}  // namespace dampflow
