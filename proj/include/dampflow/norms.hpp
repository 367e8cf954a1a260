#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "dampflow/field.hpp"

namespace dampflow {

inline constexpr double kInfExponent = std::numeric_limits<double>::infinity();

/// One computed norm value with enough provenance to land in a CSV row.
struct NormReport {
    std::string name;
    std::string parameters;
    double value = 0.0;
    std::string field_id;
    std::uint64_t seed = 0;

    /// "name,parameters,value,field_id,seed"
    std::string csv_row() const;
    static std::string csv_header();
};

/// Lattice quadrature of ||f||_{L^p} with |f(x)| the pointwise Euclidean
/// magnitude; p = infinity gives the lattice maximum (a lower bound of the
/// continuum sup-norm). Rejects p < 1.
double lebesgue_norm(const PhysicalVectorField& f, double p);
double lebesgue_norm(const PhysicalField& f, double p);

/// Weighted coefficient l2 norm: weight |xi|^s (homogeneous, xi = 0
/// contributes nothing) or (1 + |xi|^2)^{s/2}. Homogeneous with s < 0
/// rejects fields with a nonzero mean mode.
double sobolev_norm(const SpectralVectorField& f, double s, bool homogeneous);
double sobolev_norm(const SpectralField& f, double s, bool homogeneous);

/// Anisotropic energy norm: sqrt(||f||_L2^2 + ||d3 f||_L2^2).
double h01_norm(const SpectralVectorField& f);

/// Vertical-then-horizontal mixed norm: the horizontal L^q norm of each
/// x3-slice, then the vertical L^p norm of the slice profile.
double mixed_norm(const PhysicalVectorField& f, double p_vertical, double q_horizontal);

/// Plain L2 norms straight from either representation (Parseval partners).
double l2_norm(const SpectralVectorField& f);
double l2_norm(const SpectralField& f);
double l2_norm(const PhysicalVectorField& f);

/// L2 inner product of two spectral fields, sum_k Re(conj(f) g).
double l2_inner(const SpectralVectorField& f, const SpectralVectorField& g);

}  // namespace dampflow
