#include "dampflow/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace dampflow {

namespace {

// FFTW plan creation is not thread-safe; execution via fftw_execute_dft on
// distinct arrays is. Plans are cached per (grid dims, sign) and created with
// FFTW_ESTIMATE so planning is cheap and the chosen algorithm (hence rounding)
// is reproducible across runs of the same build.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(const std::array<int, 3>& n, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        const Key key{n[0], n[1], n[2], sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        const std::size_t total = static_cast<std::size_t>(n[0]) * n[1] * n[2];
        std::vector<Complex> in(total), out(total);
        fftw_plan p = fftw_plan_dft_3d(n[0], n[1], n[2], reinterpret_cast<fftw_complex*>(in.data()),
                                       reinterpret_cast<fftw_complex*>(out.data()), sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (p == nullptr) throw std::runtime_error("fftw_plan_dft_3d failed");
        plans_.emplace(key, p);
        return p;
    }

  private:
    using Key = std::tuple<int, int, int, int>;
    std::mutex mutex_;
    std::map<Key, fftw_plan> plans_;
};

void execute(const Grid& grid, int sign, const Complex* in, Complex* out) {
    fftw_plan p = PlanCache::instance().get(grid.modes(), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void forward_scalar(const Grid& grid, const std::vector<double>& samples, std::vector<Complex>& coeffs) {
    const std::size_t n = grid.mode_count();
    std::vector<Complex> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = Complex{samples[i], 0.0};
    coeffs.resize(n);
    execute(grid, FFTW_FORWARD, in.data(), coeffs.data());
    const double scale = std::sqrt(grid.volume()) / static_cast<double>(n);
    for (auto& c : coeffs) c *= scale;
}

void inverse_scalar(const Grid& grid, const std::vector<Complex>& coeffs, std::vector<double>& samples) {
    const std::size_t n = grid.mode_count();
    std::vector<Complex> out(n);
    execute(grid, FFTW_BACKWARD, coeffs.data(), out.data());
    const double scale = 1.0 / std::sqrt(grid.volume());
    samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = out[i].real() * scale;
}

std::size_t conjugate_index(const Grid& grid, std::size_t idx) {
    const auto& n = grid.modes();
    const int i3 = static_cast<int>(idx % n[2]);
    const int i2 = static_cast<int>((idx / n[2]) % n[1]);
    const int i1 = static_cast<int>(idx / (static_cast<std::size_t>(n[1]) * n[2]));
    const int j1 = (n[0] - i1) % n[0];
    const int j2 = (n[1] - i2) % n[1];
    const int j3 = (n[2] - i3) % n[2];
    return grid.index(j1, j2, j3);
}

double hermitian_defect_scalar(const Grid& grid, const std::vector<Complex>& c) {
    double worst = 0.0;
    const std::size_t n = grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = conjugate_index(grid, i);
        if (j < i) continue;
        worst = std::max(worst, std::abs(c[i] - std::conj(c[j])));
    }
    return worst;
}

void symmetrize_scalar(const Grid& grid, std::vector<Complex>& c) {
    const std::size_t n = grid.mode_count();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = conjugate_index(grid, i);
        if (j < i) continue;
        if (j == i) {
            c[i] = Complex{c[i].real(), 0.0};
        } else {
            const Complex avg = 0.5 * (c[i] + std::conj(c[j]));
            c[i] = avg;
            c[j] = std::conj(avg);
        }
    }
}

void require_symmetry(const Grid& grid, const std::vector<Complex>& c, double max_mag, double rel_tol) {
    const double defect = hermitian_defect_scalar(grid, c);
    if (defect > rel_tol * std::max(max_mag, 1e-300)) {
        throw std::invalid_argument("inverse_transform: Hermitian symmetry violated (defect " +
                                    std::to_string(defect) + ", field magnitude " + std::to_string(max_mag) +
                                    ")");
    }
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
    SpectralField out(f.grid);
    forward_scalar(f.grid, f.samples, out.coeffs);
    return out;
}

SpectralVectorField forward_transform(const PhysicalVectorField& f) {
    SpectralVectorField out(f.grid);
    for (int j = 0; j < 3; ++j) forward_scalar(f.grid, f.samples[j], out.coeffs[j]);
    return out;
}

PhysicalField inverse_transform(const SpectralField& f, bool check_symmetry, double hermitian_tol) {
    if (check_symmetry) require_symmetry(f.grid, f.coeffs, max_abs(f), hermitian_tol);
    PhysicalField out(f.grid);
    inverse_scalar(f.grid, f.coeffs, out.samples);
    return out;
}

PhysicalVectorField inverse_transform(const SpectralVectorField& f, bool check_symmetry,
                                      double hermitian_tol) {
    if (check_symmetry) {
        const double mag = max_abs(f);
        for (int j = 0; j < 3; ++j) require_symmetry(f.grid, f.coeffs[j], mag, hermitian_tol);
    }
    PhysicalVectorField out(f.grid);
    for (int j = 0; j < 3; ++j) inverse_scalar(f.grid, f.coeffs[j], out.samples[j]);
    return out;
}

double hermitian_defect(const SpectralField& f) { return hermitian_defect_scalar(f.grid, f.coeffs); }

double hermitian_defect(const SpectralVectorField& f) {
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) worst = std::max(worst, hermitian_defect_scalar(f.grid, f.coeffs[j]));
    return worst;
}

void hermitian_symmetrize(SpectralField& f) { symmetrize_scalar(f.grid, f.coeffs); }

void hermitian_symmetrize(SpectralVectorField& f) {
    for (int j = 0; j < 3; ++j) symmetrize_scalar(f.grid, f.coeffs[j]);
}

}  // namespace dampflow
