#pragma once

#include <cstdint>
#include <vector>

#include "dampflow/field.hpp"

namespace dampflow {

/// Aggregate of an empirical inequality probe. These record observed ratios
/// for regression tracking; they are evidence of boundedness, not proofs.
struct ProbeStats {
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

/// ||fg||_{H^{s1+s2-3/2}} / (||f||_{H^{s1}} ||g||_{H^{s2}}) for scalar fields
/// (homogeneous norms; the product has its mean removed first, since the
/// homogeneous norm of negative order excludes the zero mode).
double product_law_ratio(const SpectralField& f, const SpectralField& g, double s1, double s2);

/// Ratio statistics over random mean-zero band-limited scalar pairs.
/// Requires s1, s2 < 3/2, s1 + s2 > 0, trials >= 1.
ProbeStats product_law_probe(double s1, double s2, std::size_t trials, const Grid& grid,
                             std::uint64_t seed);

/// Per-slice ratios ||w||_{L4_h} / (||w||^{1/2}_{L2_h} ||grad_h w||^{1/2}_{L2_h})
/// for every x3 slice with a nonzero denominator.
std::vector<double> interpolation_ratios(const SpectralField& w);

/// Slice-ratio statistics over random band-limited scalar fields.
ProbeStats interpolation_probe(std::size_t trials, const Grid& grid, std::uint64_t seed);

}  // namespace dampflow
