#pragma once

#include <functional>

#include "dampflow/field.hpp"

namespace dampflow {
namespace oracle {

/// Budget caps keep the O(N^2) references bounded; exceeding one is an
/// error, never a slow run.
struct OracleBudget {
    std::size_t max_modes = 512;  // N1*N2*N3 cap for DFT / convolution sums
    int refine_factor = 4;        // grid refinement for quadrature references
};

struct BudgetExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Direct O(N^2) discrete Fourier sum, phase evaluated from scratch per
/// term. Shares no code path with the fast transform.
SpectralVectorField naive_dft(const PhysicalVectorField& f, const OracleBudget& budget = {});

/// Direct inverse sum; with naive_dft forms an independent round trip.
PhysicalVectorField naive_inverse_dft(const SpectralVectorField& f, const OracleBudget& budget = {});

/// Alias-free quadratic term (u.grad u) by direct convolution over exact
/// integer wavevector sums; pairs landing outside the grid are dropped, so
/// on two-thirds-retained modes this is the dealiased pseudo-spectral
/// reference.
SpectralVectorField convolution_nonlinear(const SpectralVectorField& u_hat,
                                          const OracleBudget& budget = {});

/// Analytic vector field for refined-grid quadrature references.
using AnalyticField = std::function<std::array<double, 3>(double x1, double x2, double x3)>;

/// L^p norm of an analytically given field sampled on a refine_factor times
/// finer lattice.
double refined_quadrature_norm(const AnalyticField& field, const Grid& base_grid, double p,
                               const OracleBudget& budget = {});

}  // namespace oracle
}  // namespace dampflow
