#include "dampflow/probes.hpp"

#include <cmath>
#include <stdexcept>

#include "dampflow/fft.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/random.hpp"

namespace dampflow {

namespace {

ProbeStats aggregate(const std::vector<double>& ratios, std::uint64_t seed) {
    ProbeStats stats;
    stats.seed = seed;
    stats.count = ratios.size();
    for (double r : ratios) {
        stats.max_ratio = std::max(stats.max_ratio, r);
        stats.mean_ratio += r;
    }
    if (!ratios.empty()) stats.mean_ratio /= static_cast<double>(ratios.size());
    return stats;
}

}  // namespace

double product_law_ratio(const SpectralField& f, const SpectralField& g, double s1, double s2) {
    const PhysicalField fp = inverse_transform(f);
    const PhysicalField gp = inverse_transform(g);
    PhysicalField prod(f.grid);
    for (std::size_t i = 0; i < prod.samples.size(); ++i) prod.samples[i] = fp.samples[i] * gp.samples[i];
    SpectralField prod_hat = forward_transform(prod);
    prod_hat.coeffs[0] = Complex{0.0, 0.0};  // torus analogue: drop the mean

    const double s = s1 + s2 - 1.5;
    const double num = sobolev_norm(prod_hat, s, true);
    const double den = sobolev_norm(f, s1, true) * sobolev_norm(g, s2, true);
    if (den == 0.0) throw std::invalid_argument("product_law_ratio: zero input field");
    return num / den;
}

ProbeStats product_law_probe(double s1, double s2, std::size_t trials, const Grid& grid,
                             std::uint64_t seed) {
    if (!(s1 < 1.5) || !(s2 < 1.5) || !(s1 + s2 > 0.0)) {
        throw std::invalid_argument("product_law_probe: need s1, s2 < 3/2 and s1 + s2 > 0");
    }
    if (trials < 1) throw std::invalid_argument("product_law_probe: trials must be >= 1");
    Rng rng(substream_seed(seed, "probe.product_law"));
    std::vector<double> ratios;
    ratios.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const SpectralField f = random_band_limited_scalar(grid, rng);
        const SpectralField g = random_band_limited_scalar(grid, rng);
        ratios.push_back(product_law_ratio(f, g, s1, s2));
    }
    return aggregate(ratios, seed);
}

std::vector<double> interpolation_ratios(const SpectralField& w) {
    const Grid& grid = w.grid;
    const auto& n = grid.modes();
    const PhysicalField wp = inverse_transform(w);
    const PhysicalField d1 = inverse_transform(derivative(w, 0), false);
    const PhysicalField d2 = inverse_transform(derivative(w, 1), false);
    const double cell_area = (grid.box()[0] / n[0]) * (grid.box()[1] / n[1]);

    std::vector<double> ratios;
    for (int i3 = 0; i3 < n[2]; ++i3) {
        double l2 = 0.0, l4 = 0.0, grad2 = 0.0;
        for (int i1 = 0; i1 < n[0]; ++i1) {
            for (int i2 = 0; i2 < n[1]; ++i2) {
                const std::size_t idx = grid.index(i1, i2, i3);
                const double v = wp.samples[idx];
                l2 += v * v;
                l4 += v * v * v * v;
                grad2 += d1.samples[idx] * d1.samples[idx] + d2.samples[idx] * d2.samples[idx];
            }
        }
        const double norm_l2 = std::sqrt(l2 * cell_area);
        const double norm_l4 = std::pow(l4 * cell_area, 0.25);
        const double norm_grad = std::sqrt(grad2 * cell_area);
        const double den = std::sqrt(norm_l2) * std::sqrt(norm_grad);
        if (den > 0.0) ratios.push_back(norm_l4 / den);
    }
    return ratios;
}

ProbeStats interpolation_probe(std::size_t trials, const Grid& grid, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("interpolation_probe: trials must be >= 1");
    Rng rng(substream_seed(seed, "probe.interpolation"));
    std::vector<double> ratios;
    for (std::size_t t = 0; t < trials; ++t) {
        const SpectralField w = random_band_limited_scalar(grid, rng);
        const auto slice_ratios = interpolation_ratios(w);
        ratios.insert(ratios.end(), slice_ratios.begin(), slice_ratios.end());
    }
    return aggregate(ratios, seed);
}

}  // namespace dampflow
