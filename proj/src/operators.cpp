#include "dampflow/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace dampflow {

namespace {

template <typename Fn>
void for_each_mode(const Grid& grid, Fn&& fn) {
    const auto& n = grid.modes();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        const double x1 = grid.xi(0, i1);
        for (int i2 = 0; i2 < n[1]; ++i2) {
            const double x2 = grid.xi(1, i2);
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                fn(idx, x1, x2, grid.xi(2, i3));
            }
        }
    }
}

}  // namespace

double max_divergence(const SpectralVectorField& f) {
    double worst = 0.0;
    for_each_mode(f.grid, [&](std::size_t idx, double x1, double x2, double x3) {
        const Complex div = x1 * f.coeffs[0][idx] + x2 * f.coeffs[1][idx] + x3 * f.coeffs[2][idx];
        worst = std::max(worst, std::abs(div));
    });
    return worst;
}

bool is_divergence_free(const SpectralVectorField& f, double rel_tol) {
    return max_divergence(f) <= rel_tol * max_abs(f);
}

void leray_project_in_place(SpectralVectorField& f) {
    for_each_mode(f.grid, [&](std::size_t idx, double x1, double x2, double x3) {
        const double xi2 = x1 * x1 + x2 * x2 + x3 * x3;
        if (xi2 == 0.0) return;
        const Complex dot = x1 * f.coeffs[0][idx] + x2 * f.coeffs[1][idx] + x3 * f.coeffs[2][idx];
        const Complex scale = dot / xi2;
        f.coeffs[0][idx] -= x1 * scale;
        f.coeffs[1][idx] -= x2 * scale;
        f.coeffs[2][idx] -= x3 * scale;
    });
}

SpectralVectorField leray_project(const SpectralVectorField& f) {
    SpectralVectorField out = f;
    leray_project_in_place(out);
    return out;
}

void friedrichs_cutoff_in_place(SpectralVectorField& f, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("friedrichs_cutoff: radius must be positive");
    const double r2 = radius * radius;
    for_each_mode(f.grid, [&](std::size_t idx, double x1, double x2, double x3) {
        if (x1 * x1 + x2 * x2 + x3 * x3 >= r2) {
            f.coeffs[0][idx] = Complex{0.0, 0.0};
            f.coeffs[1][idx] = Complex{0.0, 0.0};
            f.coeffs[2][idx] = Complex{0.0, 0.0};
        }
    });
}

SpectralVectorField friedrichs_cutoff(const SpectralVectorField& f, double radius) {
    SpectralVectorField out = f;
    friedrichs_cutoff_in_place(out, radius);
    return out;
}

double derivative_wavenumber(const Grid& grid, int axis, int i) {
    // Nyquist multiplier is zero: +N/2 and -N/2 alias to the same slot, so a
    // nonzero odd multiplier there would break realness.
    if (i == grid.modes()[axis] / 2) return 0.0;
    return grid.xi(axis, i);
}

namespace {

void derivative_scalar(const Grid& grid, int axis, const std::vector<Complex>& in,
                       std::vector<Complex>& out) {
    const auto& n = grid.modes();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        for (int i2 = 0; i2 < n[1]; ++i2) {
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                const int pos = axis == 0 ? i1 : (axis == 1 ? i2 : i3);
                const double k = derivative_wavenumber(grid, axis, pos);
                out[idx] = Complex{0.0, k} * in[idx];
            }
        }
    }
}

}  // namespace

SpectralField derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis must be 0, 1 or 2");
    SpectralField out(f.grid);
    derivative_scalar(f.grid, axis, f.coeffs, out.coeffs);
    return out;
}

SpectralVectorField derivative(const SpectralVectorField& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis must be 0, 1 or 2");
    SpectralVectorField out(f.grid);
    for (int j = 0; j < 3; ++j) derivative_scalar(f.grid, axis, f.coeffs[j], out.coeffs[j]);
    return out;
}

SpectralVectorField horizontal_laplacian(const SpectralVectorField& f) {
    SpectralVectorField out(f.grid);
    for_each_mode(f.grid, [&](std::size_t idx, double x1, double x2, double) {
        const double mult = -(x1 * x1 + x2 * x2);
        out.coeffs[0][idx] = mult * f.coeffs[0][idx];
        out.coeffs[1][idx] = mult * f.coeffs[1][idx];
        out.coeffs[2][idx] = mult * f.coeffs[2][idx];
    });
    return out;
}

bool dealias_keeps(const Grid& grid, int i1, int i2, int i3) {
    const auto& n = grid.modes();
    const int k1 = grid.mode_index(0, i1);
    const int k2 = grid.mode_index(1, i2);
    const int k3 = grid.mode_index(2, i3);
    return 3 * std::abs(k1) < n[0] && 3 * std::abs(k2) < n[1] && 3 * std::abs(k3) < n[2];
}

void dealias_two_thirds_in_place(SpectralVectorField& f) {
    const auto& n = f.grid.modes();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        for (int i2 = 0; i2 < n[1]; ++i2) {
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                if (!dealias_keeps(f.grid, i1, i2, i3)) {
                    f.coeffs[0][idx] = Complex{0.0, 0.0};
                    f.coeffs[1][idx] = Complex{0.0, 0.0};
                    f.coeffs[2][idx] = Complex{0.0, 0.0};
                }
            }
        }
    }
}

void strip_nyquist_in_place(SpectralVectorField& f) {
    const auto& n = f.grid.modes();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        for (int i2 = 0; i2 < n[1]; ++i2) {
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                if (i1 == n[0] / 2 || i2 == n[1] / 2 || i3 == n[2] / 2) {
                    f.coeffs[0][idx] = Complex{0.0, 0.0};
                    f.coeffs[1][idx] = Complex{0.0, 0.0};
                    f.coeffs[2][idx] = Complex{0.0, 0.0};
                }
            }
        }
    }
}

}  // namespace dampflow
