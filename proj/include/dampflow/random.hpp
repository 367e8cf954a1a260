#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "dampflow/field.hpp"

namespace dampflow {

/// Derive a named sub-stream seed from the master seed, so every consumer of
/// randomness (ic, probe, sweep child, ...) is independently reproducible.
std::uint64_t substream_seed(std::uint64_t master, std::string_view name, std::uint64_t index = 0);

/// mt19937_64 wrapper with a pinned normal sampler (polar Box-Muller without
/// spare caching) so the draw sequence does not depend on the standard
/// library's distribution implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal();

    std::uint64_t next_u64() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

/// Random mean-zero band-limited scalar field: i.i.d. complex Gaussian
/// coefficients on |xi| <= (2/3) * min-axis Nyquist, Hermitian-symmetrized.
SpectralField random_band_limited_scalar(const Grid& grid, Rng& rng);

/// Vector version; spectrum_slope scales coefficient magnitudes by
/// |xi|^slope (slope 0 = flat).
SpectralVectorField random_band_limited_vector(const Grid& grid, Rng& rng, double spectrum_slope = 0.0);

/// Band-limited random field pushed through the Leray projector; real and
/// divergence-free by construction.
SpectralVectorField random_divergence_free(const Grid& grid, Rng& rng, double spectrum_slope = 0.0);

}  // namespace dampflow
