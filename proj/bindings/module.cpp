#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dampflow/checks.hpp"
#include "dampflow/config.hpp"
#include "dampflow/damping.hpp"
#include "dampflow/fft.hpp"
#include "dampflow/initial_condition.hpp"
#include "dampflow/norms.hpp"
#include "dampflow/operators.hpp"
#include "dampflow/probes.hpp"
#include "dampflow/random.hpp"
#include "dampflow/solver.hpp"
#include "dampflow/stability.hpp"

namespace py = pybind11;
namespace df = dampflow;

namespace {

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

void check_shape(const py::buffer_info& info, const df::Grid& grid, const char* what) {
    const auto& n = grid.modes();
    if (info.ndim != 4 || info.shape[0] != 3 || info.shape[1] != n[0] || info.shape[2] != n[1] ||
        info.shape[3] != n[2]) {
        throw py::value_error(std::string(what) + ": expected shape (3, N1, N2, N3) matching the grid");
    }
}

df::SpectralVectorField to_spectral(const df::Grid& grid, const ComplexArray& arr) {
    const auto info = arr.request();
    check_shape(info, grid, "spectral field");
    df::SpectralVectorField f(grid);
    const auto* data = static_cast<const std::complex<double>*>(info.ptr);
    const std::size_t n = grid.mode_count();
    for (int j = 0; j < 3; ++j) {
        std::copy(data + j * n, data + (j + 1) * n, f.coeffs[j].begin());
    }
    return f;
}

df::PhysicalVectorField to_physical(const df::Grid& grid, const RealArray& arr) {
    const auto info = arr.request();
    check_shape(info, grid, "physical field");
    df::PhysicalVectorField f(grid);
    const auto* data = static_cast<const double*>(info.ptr);
    const std::size_t n = grid.mode_count();
    for (int j = 0; j < 3; ++j) {
        std::copy(data + j * n, data + (j + 1) * n, f.samples[j].begin());
    }
    return f;
}

ComplexArray from_spectral(const df::SpectralVectorField& f) {
    const auto& n = f.grid.modes();
    ComplexArray arr({py::ssize_t{3}, py::ssize_t(n[0]), py::ssize_t(n[1]), py::ssize_t(n[2])});
    auto* data = static_cast<std::complex<double>*>(arr.request().ptr);
    const std::size_t count = f.grid.mode_count();
    for (int j = 0; j < 3; ++j) std::copy(f.coeffs[j].begin(), f.coeffs[j].end(), data + j * count);
    return arr;
}

RealArray from_physical(const df::PhysicalVectorField& f) {
    const auto& n = f.grid.modes();
    RealArray arr({py::ssize_t{3}, py::ssize_t(n[0]), py::ssize_t(n[1]), py::ssize_t(n[2])});
    auto* data = static_cast<double*>(arr.request().ptr);
    const std::size_t count = f.grid.mode_count();
    for (int j = 0; j < 3; ++j) std::copy(f.samples[j].begin(), f.samples[j].end(), data + j * count);
    return arr;
}

df::DampingSpec damping_from_args(const std::string& kind, double alpha, double beta) {
    if (kind == "none") return df::DampingSpec::none();
    if (kind == "logarithmic") return df::DampingSpec::logarithmic(alpha);
    if (kind == "power_law") {
        if (beta == 3.0) return df::DampingSpec::power_law_borderline(alpha);
        return df::DampingSpec::power_law(alpha, beta);
    }
    throw py::value_error("damping kind must be 'none', 'logarithmic' or 'power_law'");
}

py::dict ledger_to_dict(const df::EnergyLedger& ledger) {
    const auto& rows = ledger.rows();
    const py::ssize_t n = static_cast<py::ssize_t>(rows.size());
    py::array_t<double> t(n), kinetic(n), dz_kinetic(n);
    auto* tp = t.mutable_data();
    auto* kp = kinetic.mutable_data();
    auto* dzp = dz_kinetic.mutable_data();
    std::array<py::array_t<double>, df::kLedgerCumCount> cums;
    std::array<double*, df::kLedgerCumCount> cp;
    for (int c = 0; c < df::kLedgerCumCount; ++c) {
        cums[c] = py::array_t<double>(n);
        cp[c] = cums[c].mutable_data();
    }
    for (py::ssize_t i = 0; i < n; ++i) {
        tp[i] = rows[i].t;
        kp[i] = rows[i].kinetic;
        dzp[i] = rows[i].dz_kinetic;
        for (int c = 0; c < df::kLedgerCumCount; ++c) cp[c][i] = rows[i].cum[c];
    }
    py::dict d;
    d["t"] = t;
    d["l2_kinetic"] = kinetic;
    d["dz_l2_kinetic"] = dz_kinetic;
    const char* names[df::kLedgerCumCount] = {
        "two_int_gradh_u_sq",           "two_alpha_int_damping_L1",   "two_int_gradh_dz_u_sq",
        "alpha_int_ratio_dz_usq_sq_L1", "alpha_int_log_dz_usq_sq_L1", "alpha_int_log_usq_dzu_sq_L1",
        "alpha_bm1_int_pow_dz_usq_sq_L1", "two_alpha_int_pow_dz_usq_L1", "sixteen_int_usq_dz_usq_L1",
        "sixteen_int_pow_dz_usq_L1",    "eight_int_usq_dz_usq_L1"};
    for (int c = 0; c < df::kLedgerCumCount; ++c) d[names[c]] = cums[c];
    d["initial_kinetic"] = ledger.initial_kinetic();
    d["initial_dz_kinetic"] = ledger.initial_dz_kinetic();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudo-spectral anisotropic Navier-Stokes with nonlinear damping";

    py::register_exception<df::ConfigError>(m, "ConfigError");
    py::register_exception<df::BlowUpError>(m, "BlowUpError");

    py::class_<df::Grid>(m, "Grid")
        .def(py::init([](std::array<int, 3> modes, std::array<double, 3> box) {
                 return df::Grid(modes, box);
             }),
             py::arg("modes"),
             py::arg("box") = std::array<double, 3>{6.283185307179586, 6.283185307179586,
                                                    6.283185307179586})
        .def_property_readonly("modes", [](const df::Grid& g) { return g.modes(); })
        .def_property_readonly("box", [](const df::Grid& g) { return g.box(); })
        .def_property_readonly("mode_count", [](const df::Grid& g) { return g.mode_count(); })
        .def_property_readonly("volume", [](const df::Grid& g) { return g.volume(); })
        .def("wavenumbers", [](const df::Grid& g, int axis) { return g.wavenumbers(axis); })
        .def("__repr__", [](const df::Grid& g) {
            return "Grid(modes=(" + std::to_string(g.modes()[0]) + "," + std::to_string(g.modes()[1]) +
                   "," + std::to_string(g.modes()[2]) + "))";
        });

    m.def(
        "forward_transform",
        [](const df::Grid& grid, const RealArray& f) {
            return from_spectral(df::forward_transform(to_physical(grid, f)));
        },
        py::arg("grid"), py::arg("samples"));
    m.def(
        "inverse_transform",
        [](const df::Grid& grid, const ComplexArray& f, bool check_symmetry) {
            return from_physical(df::inverse_transform(to_spectral(grid, f), check_symmetry));
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("check_symmetry") = true);
    m.def(
        "leray_project",
        [](const df::Grid& grid, const ComplexArray& f) {
            return from_spectral(df::leray_project(to_spectral(grid, f)));
        },
        py::arg("grid"), py::arg("coeffs"));
    m.def(
        "friedrichs_cutoff",
        [](const df::Grid& grid, const ComplexArray& f, double radius) {
            return from_spectral(df::friedrichs_cutoff(to_spectral(grid, f), radius));
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("radius"));
    m.def(
        "derivative",
        [](const df::Grid& grid, const ComplexArray& f, int axis) {
            return from_spectral(df::derivative(to_spectral(grid, f), axis));
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("axis"));
    m.def(
        "horizontal_laplacian",
        [](const df::Grid& grid, const ComplexArray& f) {
            return from_spectral(df::horizontal_laplacian(to_spectral(grid, f)));
        },
        py::arg("grid"), py::arg("coeffs"));
    m.def(
        "max_divergence",
        [](const df::Grid& grid, const ComplexArray& f) {
            return df::max_divergence(to_spectral(grid, f));
        },
        py::arg("grid"), py::arg("coeffs"));

    m.def(
        "lebesgue_norm",
        [](const df::Grid& grid, const RealArray& f, double p) {
            return df::lebesgue_norm(to_physical(grid, f), p);
        },
        py::arg("grid"), py::arg("samples"), py::arg("p"));
    m.def(
        "sobolev_norm",
        [](const df::Grid& grid, const ComplexArray& f, double s, bool homogeneous) {
            return df::sobolev_norm(to_spectral(grid, f), s, homogeneous);
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("s"), py::arg("homogeneous") = true);
    m.def(
        "h01_norm",
        [](const df::Grid& grid, const ComplexArray& f) { return df::h01_norm(to_spectral(grid, f)); },
        py::arg("grid"), py::arg("coeffs"));
    m.def(
        "mixed_norm",
        [](const df::Grid& grid, const RealArray& f, double p_vertical, double q_horizontal) {
            return df::mixed_norm(to_physical(grid, f), p_vertical, q_horizontal);
        },
        py::arg("grid"), py::arg("samples"), py::arg("p_vertical"), py::arg("q_horizontal"));

    m.def(
        "damping_term",
        [](const df::Grid& grid, const RealArray& u, const std::string& kind, double alpha, double beta) {
            return from_physical(df::damping_term(to_physical(grid, u), damping_from_args(kind, alpha, beta)));
        },
        py::arg("grid"), py::arg("samples"), py::arg("kind"), py::arg("alpha") = 1.0,
        py::arg("beta") = 4.0);

    m.def(
        "taylor_green",
        [](const df::Grid& grid, double amplitude) {
            return from_spectral(df::make_initial_condition(df::TaylorGreenIC{amplitude}, grid, 0));
        },
        py::arg("grid"), py::arg("amplitude") = 1.0);
    m.def(
        "random_divergence_free",
        [](const df::Grid& grid, std::uint64_t seed, double slope) {
            df::Rng rng(seed);
            return from_spectral(df::random_divergence_free(grid, rng, slope));
        },
        py::arg("grid"), py::arg("seed"), py::arg("spectrum_slope") = 0.0);

    m.def(
        "nonlinear_term",
        [](const df::Grid& grid, const ComplexArray& u, bool dealias) {
            return from_spectral(df::nonlinear_term(to_spectral(grid, u),
                                                    dealias ? df::DealiasRule::TwoThirds
                                                            : df::DealiasRule::None));
        },
        py::arg("grid"), py::arg("coeffs"), py::arg("dealias") = true);

    m.def(
        "monotonicity_check",
        [](int dimension, std::size_t trials, std::uint64_t seed) {
            const auto report = df::monotonicity_check(dimension, trials, seed);
            py::dict d;
            d["dimension"] = report.dimension;
            d["trials"] = report.trials;
            d["min_inner"] = report.min_inner;
            d["min_normalized"] = report.min_normalized;
            return d;
        },
        py::arg("dimension"), py::arg("trials"), py::arg("seed") = 0);

    m.def(
        "b_alpha",
        [](double alpha) {
            const df::BAlpha b(alpha);
            py::dict d;
            d["theorem"] = b.theorem_variant();
            d["proof"] = b.proof_variant();
            d["max"] = b.max_variant();
            return d;
        },
        py::arg("alpha"));

    m.def(
        "gronwall_envelope",
        [](const std::vector<double>& t, const std::vector<double>& f, const std::vector<double>& g,
           const std::vector<double>& h, double A, double tolerance) {
            df::GronwallInput input{t, f, g, h, A};
            const auto report = df::gronwall_envelope(input, tolerance);
            py::dict d;
            d["hypothesis_ok"] = report.hypothesis_ok;
            d["conclusion_ok"] = report.conclusion_ok;
            d["max_hypothesis_defect"] = report.max_hypothesis_defect;
            d["max_conclusion_defect"] = report.max_conclusion_defect;
            d["envelope"] = report.envelope;
            d["verdict"] = report.verdict;
            return d;
        },
        py::arg("t"), py::arg("f"), py::arg("g"), py::arg("h"), py::arg("A"),
        py::arg("tolerance") = 1e-10);

    m.def(
        "product_law_probe",
        [](double s1, double s2, std::size_t trials, const df::Grid& grid, std::uint64_t seed) {
            const auto stats = df::product_law_probe(s1, s2, trials, grid, seed);
            py::dict d;
            d["max_ratio"] = stats.max_ratio;
            d["mean_ratio"] = stats.mean_ratio;
            d["count"] = stats.count;
            return d;
        },
        py::arg("s1"), py::arg("s2"), py::arg("trials"), py::arg("grid"), py::arg("seed") = 0);

    m.def(
        "run_simulation",
        [](const std::string& config_json) {
            const auto j = nlohmann::json::parse(config_json);
            const df::RunSettings settings = df::parse_run_settings(j);
            const df::RunResult result = df::run(settings.solver);
            py::dict d;
            d["ledger"] = ledger_to_dict(result.ledger);
            d["final_state"] = from_spectral(result.state.u_hat);
            d["final_time"] = result.state.t;
            d["steps"] = result.state.step_index;
            return d;
        },
        py::arg("config_json"),
        "Integrate a JSON configuration (same schema as the CLI) and return the ledger");

    m.def(
        "stability_probe",
        [](const std::string& config_json, double epsilon, std::uint64_t seed) {
            const auto j = nlohmann::json::parse(config_json);
            const df::RunSettings settings = df::parse_run_settings(j);
            const auto report = df::stability_probe(settings.solver, epsilon, seed);
            py::dict d;
            d["times"] = report.times;
            d["w_norm_sq"] = report.w_norm_sq;
            d["growth_ratio"] = report.growth_ratio;
            d["fitted_exponent"] = report.fitted_exponent;
            d["fitted_c"] = report.fitted_c;
            d["bound_holds"] = report.bound_holds;
            d["identical"] = report.identical;
            return d;
        },
        py::arg("config_json"), py::arg("epsilon"), py::arg("seed") = 0);

    m.attr("__version__") = "0.1.0";
}
