#pragma once

#include "dampflow/field.hpp"

namespace dampflow {

namespace tol {
/// Relative tolerance for exact linear-algebra identities (round trips,
/// multiplier commutation, Parseval).
inline constexpr double kHermitianRel = 1e-13;
/// Relative tolerance for divergence-free flags.
inline constexpr double kDivergenceRel = 1e-12;
}  // namespace tol

/// Discrete Fourier coefficients of a lattice field.
///
/// Normalization: coefficients are scaled so that Parseval holds with unit
/// constant, i.e. the coefficient l2 norm equals the physical L2 norm over
/// the box. Concretely c_k = sqrt(V)/Ntot * sum_x f(x) exp(-i x.xi_k).
SpectralField forward_transform(const PhysicalField& f);
SpectralVectorField forward_transform(const PhysicalVectorField& f);

/// Inverse transform back to collocation samples.
///
/// Rejects coefficients whose Hermitian symmetry defect exceeds
/// hermitian_tol * max|coeff| (the samples would not be real). Pass
/// check_symmetry = false on trusted inputs inside hot loops.
PhysicalField inverse_transform(const SpectralField& f, bool check_symmetry = true,
                                double hermitian_tol = tol::kHermitianRel);
PhysicalVectorField inverse_transform(const SpectralVectorField& f, bool check_symmetry = true,
                                      double hermitian_tol = tol::kHermitianRel);

/// Largest |c(k) - conj(c(-k))| over all modes and components.
double hermitian_defect(const SpectralField& f);
double hermitian_defect(const SpectralVectorField& f);

/// Project onto the Hermitian-symmetric part: c(k), c(-k) <-
/// (c(k) + conj(c(-k)))/2. Self-conjugate modes lose their imaginary part.
void hermitian_symmetrize(SpectralField& f);
void hermitian_symmetrize(SpectralVectorField& f);

}  // namespace dampflow
