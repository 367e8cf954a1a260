#include "dampflow/norms.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dampflow/fft.hpp"
#include "dampflow/operators.hpp"

namespace dampflow {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double magnitude(const PhysicalVectorField& f, std::size_t i) {
    const double a = f.samples[0][i];
    const double b = f.samples[1][i];
    const double c = f.samples[2][i];
    return std::sqrt(a * a + b * b + c * c);
}

void check_exponent(double p, const char* op) {
    if (std::isnan(p) || p < 1.0) {
        throw std::invalid_argument(std::string(op) + ": exponent must satisfy p >= 1 (or infinity)");
    }
}

template <typename MagAt>
double lattice_lp(std::size_t count, double cell_volume, double p, MagAt&& mag_at) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t i = 0; i < count; ++i) m = std::max(m, mag_at(i));
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += std::pow(mag_at(i), p);
    return std::pow(acc * cell_volume, 1.0 / p);
}

template <typename CoeffAt>
double weighted_l2(const Grid& grid, double s, bool homogeneous, CoeffAt&& norm2_at) {
    const auto& n = grid.modes();
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        const double x1 = grid.xi(0, i1);
        for (int i2 = 0; i2 < n[1]; ++i2) {
            const double x2 = grid.xi(1, i2);
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                const double x3 = grid.xi(2, i3);
                const double xi2 = x1 * x1 + x2 * x2 + x3 * x3;
                double w2;
                if (homogeneous) {
                    if (xi2 == 0.0) continue;
                    w2 = std::pow(xi2, s);
                } else {
                    w2 = std::pow(1.0 + xi2, s);
                }
                acc += w2 * norm2_at(idx);
            }
        }
    }
    return std::sqrt(acc);
}

void check_homogeneous_mean(double mean_mag, double field_mag, double s, bool homogeneous) {
    if (homogeneous && s < 0.0 && mean_mag > tol::kHermitianRel * std::max(field_mag, 1e-300)) {
        throw std::invalid_argument(
            "sobolev_norm: homogeneous norm with s < 0 requires a zero mean mode");
    }
}

}  // namespace

std::string NormReport::csv_row() const {
    return name + "," + parameters + "," + format_double(value) + "," + field_id + "," +
           std::to_string(seed);
}

std::string NormReport::csv_header() { return "name,parameters,value,field_id,seed"; }

double lebesgue_norm(const PhysicalVectorField& f, double p) {
    check_exponent(p, "lebesgue_norm");
    return lattice_lp(f.grid.mode_count(), f.grid.cell_volume(), p,
                      [&](std::size_t i) { return magnitude(f, i); });
}

double lebesgue_norm(const PhysicalField& f, double p) {
    check_exponent(p, "lebesgue_norm");
    return lattice_lp(f.grid.mode_count(), f.grid.cell_volume(), p,
                      [&](std::size_t i) { return std::abs(f.samples[i]); });
}

double sobolev_norm(const SpectralVectorField& f, double s, bool homogeneous) {
    double mean = std::abs(f.coeffs[0][0]);
    mean = std::max(mean, std::abs(f.coeffs[1][0]));
    mean = std::max(mean, std::abs(f.coeffs[2][0]));
    check_homogeneous_mean(mean, max_abs(f), s, homogeneous);
    return weighted_l2(f.grid, s, homogeneous, [&](std::size_t idx) {
        return std::norm(f.coeffs[0][idx]) + std::norm(f.coeffs[1][idx]) + std::norm(f.coeffs[2][idx]);
    });
}

double sobolev_norm(const SpectralField& f, double s, bool homogeneous) {
    check_homogeneous_mean(std::abs(f.coeffs[0]), max_abs(f), s, homogeneous);
    return weighted_l2(f.grid, s, homogeneous,
                       [&](std::size_t idx) { return std::norm(f.coeffs[idx]); });
}

double h01_norm(const SpectralVectorField& f) {
    double acc = 0.0;
    const auto& n = f.grid.modes();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        for (int i2 = 0; i2 < n[1]; ++i2) {
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                const double k3 = derivative_wavenumber(f.grid, 2, i3);
                const double w = 1.0 + k3 * k3;
                acc += w * (std::norm(f.coeffs[0][idx]) + std::norm(f.coeffs[1][idx]) +
                            std::norm(f.coeffs[2][idx]));
            }
        }
    }
    return std::sqrt(acc);
}

double mixed_norm(const PhysicalVectorField& f, double p_vertical, double q_horizontal) {
    check_exponent(p_vertical, "mixed_norm");
    check_exponent(q_horizontal, "mixed_norm");
    const auto& n = f.grid.modes();
    const double cell_area = (f.grid.box()[0] / n[0]) * (f.grid.box()[1] / n[1]);
    const double dz = f.grid.box()[2] / n[2];

    // Horizontal L^q per x3 slice, then vertical L^p of the profile.
    std::vector<double> profile(n[2], 0.0);
    for (int i3 = 0; i3 < n[2]; ++i3) {
        if (std::isinf(q_horizontal)) {
            double m = 0.0;
            for (int i1 = 0; i1 < n[0]; ++i1)
                for (int i2 = 0; i2 < n[1]; ++i2) m = std::max(m, magnitude(f, f.grid.index(i1, i2, i3)));
            profile[i3] = m;
        } else {
            double acc = 0.0;
            for (int i1 = 0; i1 < n[0]; ++i1)
                for (int i2 = 0; i2 < n[1]; ++i2)
                    acc += std::pow(magnitude(f, f.grid.index(i1, i2, i3)), q_horizontal);
            profile[i3] = std::pow(acc * cell_area, 1.0 / q_horizontal);
        }
    }
    if (std::isinf(p_vertical)) {
        double m = 0.0;
        for (double v : profile) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (double v : profile) acc += std::pow(v, p_vertical);
    return std::pow(acc * dz, 1.0 / p_vertical);
}

double l2_norm(const SpectralVectorField& f) {
    double acc = 0.0;
    for (const auto& comp : f.coeffs) {
        for (const auto& c : comp) acc += std::norm(c);
    }
    return std::sqrt(acc);
}

double l2_norm(const SpectralField& f) {
    double acc = 0.0;
    for (const auto& c : f.coeffs) acc += std::norm(c);
    return std::sqrt(acc);
}

double l2_norm(const PhysicalVectorField& f) { return lebesgue_norm(f, 2.0); }

double l2_inner(const SpectralVectorField& f, const SpectralVectorField& g) {
    double acc = 0.0;
    for (int j = 0; j < 3; ++j) {
        const auto& a = f.coeffs[j];
        const auto& b = g.coeffs[j];
        for (std::size_t i = 0; i < a.size(); ++i) {
            acc += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        }
    }
    return acc;
}

}  // namespace dampflow
