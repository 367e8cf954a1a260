#include "dampflow/damping.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dampflow {

DampingSpec DampingSpec::logarithmic(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("DampingSpec: alpha must be positive");
    return DampingSpec(DampingKind::Logarithmic, alpha, 0.0);
}

DampingSpec DampingSpec::power_law(double alpha, double beta) {
    if (!(alpha > 0.0)) throw std::invalid_argument("DampingSpec: alpha must be positive");
    if (!(beta > 3.0)) {
        throw std::invalid_argument(
            "DampingSpec: power law requires beta > 3; use power_law_borderline() for beta = 3");
    }
    return DampingSpec(DampingKind::PowerLaw, alpha, beta);
}

DampingSpec DampingSpec::power_law_borderline(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("DampingSpec: alpha must be positive");
    return DampingSpec(DampingKind::PowerLaw, alpha, 3.0);
}

std::string DampingSpec::describe() const {
    switch (kind_) {
        case DampingKind::None:
            return "none";
        case DampingKind::Logarithmic:
            return "logarithmic(alpha=" + std::to_string(alpha_) + ")";
        case DampingKind::PowerLaw:
            return "power_law(alpha=" + std::to_string(alpha_) + ", beta=" + std::to_string(beta_) + ")";
    }
    return "?";
}

PhysicalVectorField damping_term(const PhysicalVectorField& u, const DampingSpec& spec) {
    PhysicalVectorField out(u.grid);
    if (!spec.active()) return out;
    const std::size_t n = u.grid.mode_count();
    const double alpha = spec.alpha();
    if (spec.kind() == DampingKind::Logarithmic) {
        for (std::size_t i = 0; i < n; ++i) {
            const double m2 = u.samples[0][i] * u.samples[0][i] + u.samples[1][i] * u.samples[1][i] +
                              u.samples[2][i] * u.samples[2][i];
            const double factor = alpha * std::log(std::numbers::e + m2) * m2;
            out.samples[0][i] = factor * u.samples[0][i];
            out.samples[1][i] = factor * u.samples[1][i];
            out.samples[2][i] = factor * u.samples[2][i];
        }
    } else {
        const double beta = spec.beta();
        for (std::size_t i = 0; i < n; ++i) {
            const double m2 = u.samples[0][i] * u.samples[0][i] + u.samples[1][i] * u.samples[1][i] +
                              u.samples[2][i] * u.samples[2][i];
            const double factor = m2 > 0.0 ? alpha * std::pow(std::sqrt(m2), beta - 1.0) : 0.0;
            out.samples[0][i] = factor * u.samples[0][i];
            out.samples[1][i] = factor * u.samples[1][i];
            out.samples[2][i] = factor * u.samples[2][i];
        }
    }
    return out;
}

double damping_dissipation_density(double m2, const DampingSpec& spec) {
    switch (spec.kind()) {
        case DampingKind::None:
            return 0.0;
        case DampingKind::Logarithmic:
            return std::log(std::numbers::e + m2) * m2 * m2;
        case DampingKind::PowerLaw:
            return m2 > 0.0 ? std::pow(std::sqrt(m2), spec.beta() + 1.0) : 0.0;
    }
    return 0.0;
}

}  // namespace dampflow
