#pragma once

#include <string>

#include "dampflow/field.hpp"

namespace dampflow {

enum class DampingKind { None, PowerLaw, Logarithmic };

/// The zero-order absorption nonlinearity: alpha*|u|^{beta-1}*u (power law)
/// or alpha*log(e+|u|^2)*|u|^2*u (logarithmic).
///
/// The power law requires beta > 3; beta = 3 is the borderline case the
/// logarithmic factor was brought in for, and is constructible only through
/// power_law_borderline(). beta < 3 is rejected outright.
class DampingSpec {
  public:
    static DampingSpec none() { return DampingSpec(DampingKind::None, 0.0, 0.0); }
    static DampingSpec logarithmic(double alpha);
    static DampingSpec power_law(double alpha, double beta);
    /// beta = 3 with an explicit opt-in; runs report rather than assert the
    /// vertical-derivative estimate in this regime.
    static DampingSpec power_law_borderline(double alpha);

    DampingKind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    bool active() const { return kind_ != DampingKind::None; }
    bool borderline() const { return kind_ == DampingKind::PowerLaw && beta_ == 3.0; }

    std::string describe() const;

  private:
    DampingSpec(DampingKind kind, double alpha, double beta) : kind_(kind), alpha_(alpha), beta_(beta) {}

    DampingKind kind_;
    double alpha_;
    double beta_;
};

/// Pointwise damping force on the collocation lattice; vanishes where u does.
PhysicalVectorField damping_term(const PhysicalVectorField& u, const DampingSpec& spec);

/// The energy-ledger dissipation density D(u) at one lattice point, given
/// the squared speed m2 = |u|^2: log mode log(e+m2)*m2^2, power mode
/// |u|^{beta+1}. Integrated over the box this is the damping contribution to
/// the L2 energy balance.
double damping_dissipation_density(double m2, const DampingSpec& spec);

}  // namespace dampflow
