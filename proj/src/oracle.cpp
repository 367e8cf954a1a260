#include "dampflow/oracle.hpp"

#include <cmath>
#include <numbers>

#include "dampflow/operators.hpp"

namespace dampflow {
namespace oracle {

namespace {

void check_budget(const Grid& grid, const OracleBudget& budget, const char* op) {
    if (grid.mode_count() > budget.max_modes) {
        throw BudgetExceeded(std::string(op) + ": grid has " + std::to_string(grid.mode_count()) +
                             " modes, budget allows " + std::to_string(budget.max_modes));
    }
}

}  // namespace

SpectralVectorField naive_dft(const PhysicalVectorField& f, const OracleBudget& budget) {
    check_budget(f.grid, budget, "naive_dft");
    const Grid& grid = f.grid;
    const auto& n = grid.modes();
    SpectralVectorField out(grid);
    const double scale = std::sqrt(grid.volume()) / static_cast<double>(grid.mode_count());

    for (int k1 = 0; k1 < n[0]; ++k1) {
        for (int k2 = 0; k2 < n[1]; ++k2) {
            for (int k3 = 0; k3 < n[2]; ++k3) {
                const std::size_t out_idx = grid.index(k1, k2, k3);
                Complex acc[3] = {0.0, 0.0, 0.0};
                for (int j1 = 0; j1 < n[0]; ++j1) {
                    for (int j2 = 0; j2 < n[1]; ++j2) {
                        for (int j3 = 0; j3 < n[2]; ++j3) {
                            const double phase =
                                -2.0 * std::numbers::pi *
                                (static_cast<double>(k1) * j1 / n[0] + static_cast<double>(k2) * j2 / n[1] +
                                 static_cast<double>(k3) * j3 / n[2]);
                            const Complex w = std::polar(1.0, phase);
                            const std::size_t in_idx = grid.index(j1, j2, j3);
                            for (int c = 0; c < 3; ++c) acc[c] += f.samples[c][in_idx] * w;
                        }
                    }
                }
                for (int c = 0; c < 3; ++c) out.coeffs[c][out_idx] = scale * acc[c];
            }
        }
    }
    return out;
}

PhysicalVectorField naive_inverse_dft(const SpectralVectorField& f, const OracleBudget& budget) {
    check_budget(f.grid, budget, "naive_inverse_dft");
    const Grid& grid = f.grid;
    const auto& n = grid.modes();
    PhysicalVectorField out(grid);
    const double scale = 1.0 / std::sqrt(grid.volume());

    for (int j1 = 0; j1 < n[0]; ++j1) {
        for (int j2 = 0; j2 < n[1]; ++j2) {
            for (int j3 = 0; j3 < n[2]; ++j3) {
                const std::size_t out_idx = grid.index(j1, j2, j3);
                Complex acc[3] = {0.0, 0.0, 0.0};
                for (int k1 = 0; k1 < n[0]; ++k1) {
                    for (int k2 = 0; k2 < n[1]; ++k2) {
                        for (int k3 = 0; k3 < n[2]; ++k3) {
                            const double phase =
                                2.0 * std::numbers::pi *
                                (static_cast<double>(k1) * j1 / n[0] + static_cast<double>(k2) * j2 / n[1] +
                                 static_cast<double>(k3) * j3 / n[2]);
                            const Complex w = std::polar(1.0, phase);
                            const std::size_t in_idx = grid.index(k1, k2, k3);
                            for (int c = 0; c < 3; ++c) acc[c] += f.coeffs[c][in_idx] * w;
                        }
                    }
                }
                for (int c = 0; c < 3; ++c) out.samples[c][out_idx] = scale * acc[c].real();
            }
        }
    }
    return out;
}

SpectralVectorField convolution_nonlinear(const SpectralVectorField& u_hat, const OracleBudget& budget) {
    check_budget(u_hat.grid, budget, "convolution_nonlinear");
    const Grid& grid = u_hat.grid;
    const auto& n = grid.modes();
    SpectralVectorField out(grid);
    const double inv_sqrt_v = 1.0 / std::sqrt(grid.volume());

    // (u.grad u)_i at exact wavevector m: sum over k + k' = m (no modular
    // wrap) of u_j(k) * i kappa_j(k') * u_i(k'), kappa the Nyquist-zeroed
    // derivative multiplier.
    const auto signed_range = [&](int axis) {
        return std::pair<int, int>{-n[axis] / 2 + 1, n[axis] / 2};
    };
    const auto storage = [&](int k, int axis) { return k >= 0 ? k : k + n[axis]; };

    const auto [lo1, hi1] = signed_range(0);
    const auto [lo2, hi2] = signed_range(1);
    const auto [lo3, hi3] = signed_range(2);

    for (int a1 = lo1; a1 <= hi1; ++a1) {
        for (int a2 = lo2; a2 <= hi2; ++a2) {
            for (int a3 = lo3; a3 <= hi3; ++a3) {
                const std::size_t ka = grid.index(storage(a1, 0), storage(a2, 1), storage(a3, 2));
                const Complex ua[3] = {u_hat.coeffs[0][ka], u_hat.coeffs[1][ka], u_hat.coeffs[2][ka]};
                if (ua[0] == Complex{} && ua[1] == Complex{} && ua[2] == Complex{}) continue;
                for (int b1 = lo1; b1 <= hi1; ++b1) {
                    const int m1 = a1 + b1;
                    if (m1 < lo1 || m1 > hi1) continue;
                    for (int b2 = lo2; b2 <= hi2; ++b2) {
                        const int m2 = a2 + b2;
                        if (m2 < lo2 || m2 > hi2) continue;
                        for (int b3 = lo3; b3 <= hi3; ++b3) {
                            const int m3 = a3 + b3;
                            if (m3 < lo3 || m3 > hi3) continue;
                            const std::size_t kb =
                                grid.index(storage(b1, 0), storage(b2, 1), storage(b3, 2));
                            const double kappa[3] = {
                                derivative_wavenumber(grid, 0, storage(b1, 0)),
                                derivative_wavenumber(grid, 1, storage(b2, 1)),
                                derivative_wavenumber(grid, 2, storage(b3, 2)),
                            };
                            const Complex dot = ua[0] * Complex{0.0, kappa[0]} +
                                                ua[1] * Complex{0.0, kappa[1]} +
                                                ua[2] * Complex{0.0, kappa[2]};
                            if (dot == Complex{}) continue;
                            const std::size_t km =
                                grid.index(storage(m1, 0), storage(m2, 1), storage(m3, 2));
                            for (int i = 0; i < 3; ++i) {
                                out.coeffs[i][km] += inv_sqrt_v * dot * u_hat.coeffs[i][kb];
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

double refined_quadrature_norm(const AnalyticField& field, const Grid& base_grid, double p,
                               const OracleBudget& budget) {
    check_budget(base_grid, budget, "refined_quadrature_norm");
    if (!(p >= 1.0)) throw std::invalid_argument("refined_quadrature_norm: p must be >= 1");
    if (budget.refine_factor < 1) {
        throw std::invalid_argument("refined_quadrature_norm: refine_factor must be >= 1");
    }
    const auto& n = base_grid.modes();
    const auto& box = base_grid.box();
    const int r = budget.refine_factor;
    const long long n1 = static_cast<long long>(n[0]) * r;
    const long long n2 = static_cast<long long>(n[1]) * r;
    const long long n3 = static_cast<long long>(n[2]) * r;
    const double cell = box[0] * box[1] * box[2] / (static_cast<double>(n1) * n2 * n3);

    const bool is_inf = std::isinf(p);
    double acc = 0.0;
    double sup = 0.0;
    for (long long i1 = 0; i1 < n1; ++i1) {
        const double x1 = box[0] * static_cast<double>(i1) / static_cast<double>(n1);
        for (long long i2 = 0; i2 < n2; ++i2) {
            const double x2 = box[1] * static_cast<double>(i2) / static_cast<double>(n2);
            for (long long i3 = 0; i3 < n3; ++i3) {
                const double x3 = box[2] * static_cast<double>(i3) / static_cast<double>(n3);
                const auto v = field(x1, x2, x3);
                const double mag = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
                if (is_inf) {
                    sup = std::max(sup, mag);
                } else {
                    acc += std::pow(mag, p);
                }
            }
        }
    }
    return is_inf ? sup : std::pow(acc * cell, 1.0 / p);
}

}  // namespace oracle
}  // namespace dampflow
