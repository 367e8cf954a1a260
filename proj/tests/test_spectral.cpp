#include <catch2/catch_amalgamated.hpp>

#include "dampflow/oracle.hpp"
#include "test_support.hpp"

using namespace dampflow;
using dftest::cube;
using dftest::kTwoPi;
using dftest::rel_diff;

TEST_CASE("Grid validates its construction parameters") {
    CHECK_THROWS_AS(Grid({3, 8, 8}, {1, 1, 1}), std::invalid_argument);  // odd
    CHECK_THROWS_AS(Grid({2, 8, 8}, {1, 1, 1}), std::invalid_argument);  // < 4
    CHECK_THROWS_AS(Grid({8, 8, 8}, {0, 1, 1}), std::invalid_argument);
    const Grid g = cube(8);
    CHECK(g.mode_count() == 512);
    CHECK(g.cell_volume() == Catch::Approx(g.volume() / 512.0));
}

TEST_CASE("Wavenumber tables are antisymmetric except at Nyquist") {
    const Grid g({8, 12, 16}, {kTwoPi, 2.0, 5.0});
    for (int axis = 0; axis < 3; ++axis) {
        const int n = g.modes()[axis];
        const auto& xi = g.wavenumbers(axis);
        REQUIRE(static_cast<int>(xi.size()) == n);
        CHECK(xi[0] == 0.0);
        for (int i = 1; i < n / 2; ++i) {
            CHECK(xi[i] == Catch::Approx(-xi[n - i]).margin(0.0));
        }
        // Nyquist mode carries +N/2 and has no negative partner.
        CHECK(xi[n / 2] == Catch::Approx(std::numbers::pi * n / g.box()[axis]));
    }
}

TEST_CASE("Forward transform of a constant puts everything in the zero mode") {
    const Grid g = cube(8);
    const double c = 1.75;
    PhysicalVectorField f(g);
    for (auto& v : f.samples[0]) v = c;
    const SpectralVectorField f_hat = forward_transform(f);
    // Unit-Parseval normalization: the DC coefficient is c*sqrt(V).
    const double expected = c * std::sqrt(g.volume());
    CHECK(std::abs(f_hat.coeffs[0][0] - Complex{expected, 0.0}) <= 1e-13 * expected);
    double off_dc = 0.0;
    for (std::size_t i = 1; i < f_hat.coeffs[0].size(); ++i) off_dc += std::abs(f_hat.coeffs[0][i]);
    CHECK(off_dc <= 1e-12 * expected);
}

TEST_CASE("cos(2 pi x1 / L1) lands on the conjugate mode pair") {
    const Grid g = cube(8);
    const auto f = dftest::sample_component(g, 1, [](double x, double, double) { return std::cos(x); });
    const SpectralVectorField f_hat = forward_transform(f);
    const double expected = 0.5 * std::sqrt(g.volume());
    const std::size_t plus = g.index(1, 0, 0);
    const std::size_t minus = g.index(7, 0, 0);
    CHECK(std::abs(f_hat.coeffs[1][plus] - Complex{expected, 0.0}) <= 1e-12 * expected);
    CHECK(std::abs(f_hat.coeffs[1][minus] - Complex{expected, 0.0}) <= 1e-12 * expected);
    double rest = 0.0;
    for (std::size_t i = 0; i < f_hat.coeffs[1].size(); ++i) {
        if (i != plus && i != minus) rest = std::max(rest, std::abs(f_hat.coeffs[1][i]));
    }
    CHECK(rest <= 1e-12 * expected);
}

TEST_CASE("Forward transform matches the direct DFT oracle on random 8^3 fields") {
    const Grid g = cube(8);
    Rng rng(substream_seed(7, "test.spectral.oracle"));
    for (int trial = 0; trial < 3; ++trial) {
        PhysicalVectorField f(g);
        for (int j = 0; j < 3; ++j) {
            for (auto& v : f.samples[j]) v = rng.uniform(-1.0, 1.0);
        }
        CHECK(rel_diff(forward_transform(f), oracle::naive_dft(f)) <= 1e-12);
    }
}

TEST_CASE("Inverse transform matches the direct inverse DFT oracle") {
    const Grid g = cube(8);
    Rng rng(substream_seed(8, "test.spectral.oracle_inv"));
    SpectralVectorField f = random_band_limited_vector(g, rng);
    CHECK(rel_diff(inverse_transform(f), oracle::naive_inverse_dft(f)) <= 1e-12);
}

TEST_CASE("Round trips are identities to 1e-13 relative") {
    const Grid g = cube(16);
    Rng rng(substream_seed(9, "test.spectral.roundtrip"));
    PhysicalVectorField f(g);
    for (int j = 0; j < 3; ++j) {
        for (auto& v : f.samples[j]) v = rng.uniform(-1.0, 1.0);
    }
    CHECK(rel_diff(inverse_transform(forward_transform(f)), f) <= 1e-13);

    SpectralVectorField s = random_band_limited_vector(g, rng);
    CHECK(rel_diff(forward_transform(inverse_transform(s)), s) <= 1e-13);
}

TEST_CASE("Inverse transform of zero coefficients is the zero field") {
    const Grid g = cube(8);
    const PhysicalVectorField f = inverse_transform(SpectralVectorField(g));
    for (int j = 0; j < 3; ++j) {
        for (double v : f.samples[j]) CHECK(v == 0.0);
    }
}

TEST_CASE("A single conjugate pair inverts to a sampled cosine") {
    const Grid g = cube(8);
    SpectralVectorField s(g);
    const double amp = 0.5 * std::sqrt(g.volume());
    s.coeffs[0][g.index(0, 0, 2)] = Complex{amp, 0.0};
    s.coeffs[0][g.index(0, 0, 6)] = Complex{amp, 0.0};
    const PhysicalVectorField f = inverse_transform(s);
    const auto expected =
        dftest::sample_component(g, 0, [](double, double, double z) { return std::cos(2.0 * z); });
    CHECK(rel_diff(f, expected) <= 1e-13);
}

TEST_CASE("Inverse transform rejects Hermitian symmetry violations") {
    const Grid g = cube(8);
    SpectralVectorField s(g);
    s.coeffs[0][g.index(1, 2, 3)] = Complex{1.0, 0.5};  // no conjugate partner
    CHECK_THROWS_AS(inverse_transform(s), std::invalid_argument);
    hermitian_symmetrize(s);
    CHECK(hermitian_defect(s) == 0.0);
    CHECK_NOTHROW(inverse_transform(s));
}

TEST_CASE("Parseval holds with unit constant") {
    const Grid g({8, 12, 16}, {kTwoPi, 3.0, 1.5});
    Rng rng(substream_seed(10, "test.spectral.parseval"));
    PhysicalVectorField f(g);
    for (int j = 0; j < 3; ++j) {
        for (auto& v : f.samples[j]) v = rng.normal();
    }
    const double phys = lebesgue_norm(f, 2.0);
    const double spec = l2_norm(forward_transform(f));
    CHECK(std::abs(phys - spec) <= 1e-13 * phys);
}

TEST_CASE("Leray projection annihilates gradients and fixes solenoidal fields") {
    const Grid g = cube(16);
    Rng rng(substream_seed(11, "test.spectral.leray"));

    SECTION("pure gradient maps to zero") {
        const SpectralField s = random_band_limited_scalar(g, rng);
        SpectralVectorField grad(g);
        const auto& n = g.modes();
        std::size_t idx = 0;
        for (int i1 = 0; i1 < n[0]; ++i1) {
            for (int i2 = 0; i2 < n[1]; ++i2) {
                for (int i3 = 0; i3 < n[2]; ++i3, ++idx) {
                    grad.coeffs[0][idx] = g.xi(0, i1) * s.coeffs[idx];
                    grad.coeffs[1][idx] = g.xi(1, i2) * s.coeffs[idx];
                    grad.coeffs[2][idx] = g.xi(2, i3) * s.coeffs[idx];
                }
            }
        }
        const double in_norm = l2_norm(grad);
        REQUIRE(in_norm > 0.0);
        CHECK(l2_norm(leray_project(grad)) <= 1e-13 * in_norm);
    }

    SECTION("divergence-free input is a fixed point; projection is an L2 contraction") {
        const SpectralVectorField f = random_band_limited_vector(g, rng);
        const SpectralVectorField p = leray_project(f);
        CHECK(max_divergence(p) <= 1e-12 * max_abs(p));
        CHECK(rel_diff(leray_project(p), p) <= 1e-13);
        CHECK(l2_norm(p) <= l2_norm(f) * (1.0 + 1e-14));
        CHECK(is_divergence_free(p));
    }

    SECTION("zero mode passes through unchanged") {
        SpectralVectorField f(g);
        f.coeffs[0][0] = Complex{2.0, 0.0};
        f.coeffs[2][0] = Complex{-1.0, 0.0};
        const SpectralVectorField p = leray_project(f);
        CHECK(p.coeffs[0][0] == Complex{2.0, 0.0});
        CHECK(p.coeffs[2][0] == Complex{-1.0, 0.0});
    }
}

TEST_CASE("Friedrichs cutoff truncates sharply and contracts every Sobolev norm") {
    const Grid g = cube(16);
    Rng rng(substream_seed(12, "test.spectral.friedrichs"));
    const SpectralVectorField f = random_band_limited_vector(g, rng);

    SECTION("radius above the grid maximum is the identity") {
        CHECK(dftest::bitwise_equal(friedrichs_cutoff(f, g.xi_max() + 1.0), f));
    }

    SECTION("radius below the smallest nonzero wavenumber keeps only the mean") {
        SpectralVectorField with_mean = f;
        with_mean.coeffs[0][0] = Complex{3.0, 0.0};
        const SpectralVectorField cut = friedrichs_cutoff(with_mean, 0.5);
        CHECK(cut.coeffs[0][0] == Complex{3.0, 0.0});
        double rest = 0.0;
        for (int j = 0; j < 3; ++j) {
            for (std::size_t i = 1; i < cut.coeffs[j].size(); ++i) rest += std::abs(cut.coeffs[j][i]);
        }
        CHECK(rest == 0.0);
    }

    SECTION("median-radius cutoff is idempotent and norm non-increasing") {
        const double radius = 4.0;  // cuts into the band-limited support
        const SpectralVectorField cut = friedrichs_cutoff(f, radius);
        CHECK(dftest::bitwise_equal(friedrichs_cutoff(cut, radius), cut));
        CHECK(l2_norm(cut) <= l2_norm(f));
        for (double s : {-1.0, 0.5, 2.0}) {
            CHECK(sobolev_norm(cut, s, true) <= sobolev_norm(f, s, true) * (1.0 + 1e-14));
        }
        // Equality iff nothing was removed.
        const SpectralVectorField untouched = friedrichs_cutoff(f, g.xi_max() + 1.0);
        CHECK(l2_norm(untouched) == l2_norm(f));
        CHECK(l2_norm(cut) < l2_norm(f));
    }

    SECTION("cutoff commutes with the other multipliers") {
        const double radius = 3.0;
        CHECK(rel_diff(friedrichs_cutoff(leray_project(f), radius),
                       leray_project(friedrichs_cutoff(f, radius))) <= 1e-13);
        for (int axis = 0; axis < 3; ++axis) {
            CHECK(rel_diff(friedrichs_cutoff(derivative(f, axis), radius),
                           derivative(friedrichs_cutoff(f, radius), axis)) <= 1e-13);
        }
        CHECK(rel_diff(friedrichs_cutoff(horizontal_laplacian(f), radius),
                       horizontal_laplacian(friedrichs_cutoff(f, radius))) <= 1e-13);
    }

    SECTION("nonpositive radius is rejected") {
        CHECK_THROWS_AS(friedrichs_cutoff(f, 0.0), std::invalid_argument);
    }
}

TEST_CASE("Spectral derivative: constants, single modes, Nyquist") {
    const Grid g = cube(8);

    SECTION("constant field differentiates to zero") {
        PhysicalVectorField c(g);
        for (auto& v : c.samples[0]) v = 4.2;
        const SpectralVectorField d = derivative(forward_transform(c), 0);
        CHECK(max_abs(d) <= 1e-13);
    }

    SECTION("sin(2 pi x3/L3) maps to (2 pi/L3) cos") {
        const auto f = dftest::sample_component(g, 2, [](double, double, double z) { return std::sin(z); });
        const PhysicalVectorField d = inverse_transform(derivative(forward_transform(f), 2));
        const auto expected =
            dftest::sample_component(g, 2, [](double, double, double z) { return std::cos(z); });
        CHECK(rel_diff(d, expected) <= 1e-13);
    }

    SECTION("Nyquist mode has derivative multiplier zero") {
        SpectralVectorField s(g);
        s.coeffs[0][g.index(4, 0, 0)] = Complex{1.0, 0.0};  // self-conjugate Nyquist plane
        CHECK(max_abs(derivative(s, 0)) == 0.0);
        // but the wavenumber table itself keeps +N/2 for norms
        CHECK(g.xi(0, 4) > 0.0);
    }
}

TEST_CASE("Spectral derivative beats centered differences at second order") {
    const auto analytic = [](double x, double y, double z) {
        return std::sin(x) * std::cos(2.0 * y) * std::sin(z);
    };
    double prev_err = 0.0;
    std::vector<double> errors;
    for (int n : {8, 16, 32}) {
        const Grid g = cube(n);
        const auto f = dftest::sample_component(g, 0, analytic);
        const PhysicalVectorField spectral = inverse_transform(derivative(forward_transform(f), 1));
        // Centered finite difference along axis 2 (index i2).
        double worst = 0.0;
        const double h = g.box()[1] / n;
        for (int i1 = 0; i1 < n; ++i1) {
            for (int i2 = 0; i2 < n; ++i2) {
                for (int i3 = 0; i3 < n; ++i3) {
                    const double up = f.samples[0][g.index(i1, (i2 + 1) % n, i3)];
                    const double dn = f.samples[0][g.index(i1, (i2 - 1 + n) % n, i3)];
                    const double fd = (up - dn) / (2.0 * h);
                    worst = std::max(worst, std::abs(fd - spectral.samples[0][g.index(i1, i2, i3)]));
                }
            }
        }
        errors.push_back(worst);
        prev_err = worst;
    }
    (void)prev_err;
    REQUIRE(errors.size() == 3);
    CHECK(errors[0] / errors[1] == Catch::Approx(4.0).epsilon(0.2));
    CHECK(errors[1] / errors[2] == Catch::Approx(4.0).epsilon(0.2));
}

TEST_CASE("Horizontal Laplacian keeps its vertical kernel") {
    const Grid g = cube(8);

    SECTION("fields supported on xi_h = 0 map to zero") {
        SpectralVectorField s(g);
        s.coeffs[1][g.index(0, 0, 1)] = Complex{1.0, -0.5};
        s.coeffs[1][g.index(0, 0, 7)] = Complex{1.0, 0.5};
        s.coeffs[2][g.index(0, 0, 3)] = Complex{0.25, 0.0};
        CHECK(max_abs(horizontal_laplacian(s)) == 0.0);
    }

    SECTION("single horizontal mode scales by -(2 pi/L1)^2") {
        SpectralVectorField s(g);
        s.coeffs[1][g.index(1, 0, 0)] = Complex{1.0, 0.0};
        const SpectralVectorField lap = horizontal_laplacian(s);
        CHECK(lap.coeffs[1][g.index(1, 0, 0)] == Complex{-1.0, 0.0});  // 2 pi / L = 1 here
    }

    SECTION("matches the composition of first derivatives") {
        Rng rng(substream_seed(13, "test.spectral.hlap"));
        const SpectralVectorField f = random_band_limited_vector(g, rng);
        const SpectralVectorField composed = [&] {
            SpectralVectorField acc = derivative(derivative(f, 0), 0);
            const SpectralVectorField d22 = derivative(derivative(f, 1), 1);
            for (int j = 0; j < 3; ++j) {
                for (std::size_t i = 0; i < acc.coeffs[j].size(); ++i) {
                    acc.coeffs[j][i] += d22.coeffs[j][i];
                }
            }
            return acc;
        }();
        CHECK(rel_diff(horizontal_laplacian(f), composed) <= 1e-13);
    }
}

TEST_CASE("Hermitian symmetry of random real fields is preserved by the operators") {
    const Grid g = cube(8);
    Rng rng(substream_seed(14, "test.spectral.symmetry"));
    const SpectralVectorField f = random_band_limited_vector(g, rng);
    CHECK(hermitian_defect(f) <= 1e-13 * max_abs(f));
    CHECK(hermitian_defect(leray_project(f)) <= 1e-13 * max_abs(f));
    CHECK(hermitian_defect(derivative(f, 0)) <= 1e-13 * max_abs(f) * g.xi_max());
    CHECK(hermitian_defect(friedrichs_cutoff(f, 2.0)) <= 1e-13 * max_abs(f));
}
