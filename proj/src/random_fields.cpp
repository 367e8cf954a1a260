#include "dampflow/random.hpp"

#include <cmath>

#include "dampflow/operators.hpp"

namespace dampflow {

std::uint64_t substream_seed(std::uint64_t master, std::string_view name, std::uint64_t index) {
    // FNV-1a over the name, then splitmix64 finalization.
    std::uint64_t h = 14695981039346656037ull;
    for (char ch : name) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(ch));
        h *= 1099511628211ull;
    }
    std::uint64_t z = master ^ h ^ (0x9e3779b97f4a7c15ull * (index + 1));
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

double Rng::normal() {
    // Polar method, no spare caching: the stream position after a call is a
    // fixed function of the accepted pair count only.
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

namespace {

template <typename Assign>
void fill_band_limited(const Grid& grid, double spectrum_slope, Assign&& assign) {
    const double band = (2.0 / 3.0) * grid.xi_nyquist_min();
    const double band2 = band * band;
    const auto& n = grid.modes();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n[0]; ++i1) {
        const double x1 = grid.xi(0, i1);
        for (int i2 = 0; i2 < n[1]; ++i2) {
            const double x2 = grid.xi(1, i2);
            for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                const double x3 = grid.xi(2, i3);
                const double xi2 = x1 * x1 + x2 * x2 + x3 * x3;
                if (xi2 == 0.0 || xi2 > band2) continue;
                const double amp = spectrum_slope == 0.0 ? 1.0 : std::pow(std::sqrt(xi2), spectrum_slope);
                assign(idx, amp);
            }
        }
    }
}

}  // namespace

SpectralField random_band_limited_scalar(const Grid& grid, Rng& rng) {
    SpectralField f(grid);
    fill_band_limited(grid, 0.0, [&](std::size_t idx, double amp) {
        f.coeffs[idx] = Complex{amp * rng.normal(), amp * rng.normal()};
    });
    hermitian_symmetrize(f);
    f.coeffs[0] = Complex{0.0, 0.0};
    return f;
}

SpectralVectorField random_band_limited_vector(const Grid& grid, Rng& rng, double spectrum_slope) {
    SpectralVectorField f(grid);
    fill_band_limited(grid, spectrum_slope, [&](std::size_t idx, double amp) {
        for (int j = 0; j < 3; ++j) {
            f.coeffs[j][idx] = Complex{amp * rng.normal(), amp * rng.normal()};
        }
    });
    hermitian_symmetrize(f);
    for (int j = 0; j < 3; ++j) f.coeffs[j][0] = Complex{0.0, 0.0};
    return f;
}

SpectralVectorField random_divergence_free(const Grid& grid, Rng& rng, double spectrum_slope) {
    SpectralVectorField f = random_band_limited_vector(grid, rng, spectrum_slope);
    leray_project_in_place(f);
    return f;
}

}  // namespace dampflow
