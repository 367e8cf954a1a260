#pragma once

#include "dampflow/fft.hpp"

namespace dampflow {

/// Divergence in mode space: max over modes of |xi . u_hat(xi)|.
double max_divergence(const SpectralVectorField& f);

/// True iff max|xi.u_hat| <= rel_tol * max|u_hat|.
bool is_divergence_free(const SpectralVectorField& f, double rel_tol = tol::kDivergenceRel);

/// Leray projection: u_hat(xi) -> (I - xi xi^T/|xi|^2) u_hat(xi).
/// The xi = 0 mode passes through unchanged (the mean flow is already
/// divergence-free); M(xi) is singular there.
SpectralVectorField leray_project(const SpectralVectorField& f);
void leray_project_in_place(SpectralVectorField& f);

/// Sharp frequency truncation: zero every mode with |xi| >= R.
SpectralVectorField friedrichs_cutoff(const SpectralVectorField& f, double radius);
void friedrichs_cutoff_in_place(SpectralVectorField& f, double radius);

/// Spectral derivative along an axis (0-based): multiplication by i*xi.
/// The Nyquist mode of that axis gets multiplier zero so odd derivatives of
/// real fields stay real.
SpectralField derivative(const SpectralField& f, int axis);
SpectralVectorField derivative(const SpectralVectorField& f, int axis);

/// Horizontal Laplacian: multiplication by -(xi1^2 + xi2^2). Modes with
/// xi1 = xi2 = 0 map to zero; that kernel is the anisotropy and is never
/// completed to a full Laplacian.
SpectralVectorField horizontal_laplacian(const SpectralVectorField& f);

/// Derivative multiplier along an axis at storage position i (Nyquist-zeroed).
double derivative_wavenumber(const Grid& grid, int axis, int i);

/// Two-thirds dealiasing: zero every mode with 3*|k_axis| >= N_axis on any
/// axis. Retained quadratic products are then alias-free.
void dealias_two_thirds_in_place(SpectralVectorField& f);
bool dealias_keeps(const Grid& grid, int i1, int i2, int i3);

/// Zero the Nyquist planes (any axis index at N/2). On those planes +N/2 and
/// -N/2 alias to one slot, so the Leray projector and Hermitian
/// symmetrization disagree; the evolved Galerkin state stays off them.
void strip_nyquist_in_place(SpectralVectorField& f);

}  // namespace dampflow
