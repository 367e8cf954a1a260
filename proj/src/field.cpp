#include "dampflow/field.hpp"

#include <cmath>

namespace dampflow {

double max_abs(const SpectralVectorField& f) {
    double m = 0.0;
    for (const auto& comp : f.coeffs) {
        for (const auto& c : comp) m = std::max(m, std::abs(c));
    }
    return m;
}

double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (const auto& c : f.coeffs) m = std::max(m, std::abs(c));
    return m;
}

double max_speed(const PhysicalVectorField& f) {
    double m2 = 0.0;
    const std::size_t n = f.grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double s2 = f.samples[0][i] * f.samples[0][i] + f.samples[1][i] * f.samples[1][i] +
                          f.samples[2][i] * f.samples[2][i];
        m2 = std::max(m2, s2);
    }
    return std::sqrt(m2);
}

bool all_finite(const SpectralVectorField& f) {
    for (const auto& comp : f.coeffs) {
        for (const auto& c : comp) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        }
    }
    return true;
}

bool all_finite(const PhysicalVectorField& f) {
    for (const auto& comp : f.samples) {
        for (double v : comp) {
            if (!std::isfinite(v)) return false;
        }
    }
    return true;
}

std::pair<int, std::size_t> first_non_finite(const SpectralVectorField& f) {
    for (int j = 0; j < 3; ++j) {
        const auto& comp = f.coeffs[j];
        for (std::size_t i = 0; i < comp.size(); ++i) {
            if (!std::isfinite(comp[i].real()) || !std::isfinite(comp[i].imag())) return {j, i};
        }
    }
    return {-1, 0};
}

}  // namespace dampflow
