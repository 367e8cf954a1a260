#include "dampflow/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "dampflow/random.hpp"

namespace dampflow {

namespace {

double dz_lhs(const LedgerRow& row, DampingKind kind) {
    double lhs = row.dz_kinetic + row.cum[2];
    if (kind == DampingKind::Logarithmic) {
        lhs += row.cum[3] + row.cum[4] + row.cum[5];
    } else if (kind == DampingKind::PowerLaw) {
        lhs += row.cum[6] + row.cum[7];
    }
    return lhs;
}

void require_rows(const EnergyLedger& ledger, const char* op) {
    if (ledger.rows().empty()) throw std::invalid_argument(std::string(op) + ": ledger has no rows");
}

}  // namespace

BAlpha::BAlpha(double a) : alpha(a) {
    if (!(a > 0.0)) throw std::invalid_argument("BAlpha: alpha must be positive");
}

double BAlpha::theorem_variant() const { return std::exp(3.0 / alpha) - std::numbers::e; }

double BAlpha::proof_variant() const {
    return std::max(std::exp(1.5 / alpha) - std::numbers::e, 0.0);
}

double BAlpha::max_variant() const {
    return std::max({theorem_variant(), proof_variant(), 0.0});
}

double b_value(const BAlpha& b, BVariant variant) {
    switch (variant) {
        case BVariant::Theorem:
            return b.theorem_variant();
        case BVariant::Proof:
            return b.proof_variant();
        case BVariant::Max:
            return b.max_variant();
    }
    return b.max_variant();
}

std::string InequalityReport::summary() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: %s (max defect %.3e at t=%.4g, tolerance %.3e)", name.c_str(),
                  pass ? "pass" : "FAIL", max_defect, worst_time, tolerance);
    return buf;
}

double default_inequality_tolerance(double dt, double t, double scale) {
    return std::max(1e-8, 50.0 * dt * dt * t * scale);
}

InequalityReport check_energy_inequality(const EnergyLedger& ledger, double tolerance) {
    require_rows(ledger, "check_energy_inequality");
    InequalityReport report;
    report.name = "energy_inequality";
    report.tolerance = tolerance;
    const double e0 = ledger.initial_kinetic();
    bool first = true;
    for (const auto& row : ledger.rows()) {
        const double lhs = row.kinetic + row.cum[0] + row.cum[1];
        const double defect = lhs - e0;
        if (first || defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_time = row.t;
        }
        report.max_abs_defect = std::max(report.max_abs_defect, std::abs(defect));
        first = false;
    }
    report.pass = report.max_defect <= tolerance;
    return report;
}

InequalityReport check_dz_inequality(const EnergyLedger& ledger, const BAlpha& b, BVariant variant,
                                     double tolerance) {
    require_rows(ledger, "check_dz_inequality");
    InequalityReport report;
    report.name = "dz_envelope";
    report.tolerance = tolerance;
    const double dz0 = ledger.initial_dz_kinetic();
    const double growth = b_value(b, variant);
    const DampingKind kind = ledger.damping().kind();
    bool first = true;
    for (const auto& row : ledger.rows()) {
        const double envelope = dz0 * std::exp(growth * row.t);
        const double defect = dz_lhs(row, kind) - envelope;
        if (first || defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_time = row.t;
        }
        report.max_abs_defect = std::max(report.max_abs_defect, std::abs(defect));
        first = false;
    }
    report.pass = report.max_defect <= tolerance;
    return report;
}

std::string DzCandidateReport::summary() const {
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "dz_candidates: min margins 16|u|^2: %.3e, 16|u|^(b-1): %.3e, 8|u|^2: %.3e (informational)",
                  margin_16_usq, margin_16_pow, margin_8_usq);
    return buf;
}

DzCandidateReport report_dz_candidates(const EnergyLedger& ledger) {
    require_rows(ledger, "report_dz_candidates");
    DzCandidateReport report;
    const double dz0 = ledger.initial_dz_kinetic();
    const DampingKind kind = ledger.damping().kind();
    bool first = true;
    for (const auto& row : ledger.rows()) {
        const double lhs = dz_lhs(row, kind);
        const double m16u = dz0 + row.cum[8] - lhs;
        const double m16p = dz0 + row.cum[9] - lhs;
        const double m8u = dz0 + row.cum[10] - lhs;
        if (first || m16u < report.margin_16_usq) {
            report.margin_16_usq = m16u;
            report.worst_time = row.t;
        }
        report.margin_16_pow = first ? m16p : std::min(report.margin_16_pow, m16p);
        report.margin_8_usq = first ? m8u : std::min(report.margin_8_usq, m8u);
        first = false;
    }
    return report;
}

void GronwallInput::validate() const {
    const std::size_t n = t.size();
    if (n == 0) throw std::invalid_argument("GronwallInput: empty time grid");
    if (f.size() != n || g.size() != n || h.size() != n) {
        throw std::invalid_argument("GronwallInput: series must share the time grid");
    }
    if (A < 0.0) throw std::invalid_argument("GronwallInput: A must be nonnegative");
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] < 0.0 || g[i] < 0.0 || h[i] < 0.0) {
            throw std::invalid_argument("GronwallInput: samples must be nonnegative");
        }
        if (i > 0 && !(t[i] > t[i - 1])) {
            throw std::invalid_argument("GronwallInput: time grid must be strictly increasing");
        }
    }
}

GronwallReport gronwall_envelope(const GronwallInput& input, double tolerance) {
    input.validate();
    const std::size_t n = input.t.size();
    GronwallReport report;
    report.envelope.resize(n);

    double int_g = 0.0, int_h = 0.0, int_hf = 0.0;
    double max_hyp = 0.0, max_con = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double half_dt = 0.5 * (input.t[i] - input.t[i - 1]);
            int_g += half_dt * (input.g[i] + input.g[i - 1]);
            int_h += half_dt * (input.h[i] + input.h[i - 1]);
            int_hf += half_dt * (input.h[i] * input.f[i] + input.h[i - 1] * input.f[i - 1]);
        }
        report.envelope[i] = input.A * std::exp(int_h);
        max_hyp = std::max(max_hyp, input.f[i] + int_g - (input.A + int_hf));
        max_con = std::max(max_con, input.f[i] + int_g - report.envelope[i]);
    }
    report.max_hypothesis_defect = max_hyp;
    report.max_conclusion_defect = max_con;
    report.hypothesis_ok = max_hyp <= tolerance;
    report.conclusion_ok = max_con <= tolerance;
    if (!report.hypothesis_ok) {
        report.verdict = "hypothesis violated";
    } else if (!report.conclusion_ok) {
        report.verdict = "conclusion violated";
    } else {
        report.verdict = "pass";
    }
    return report;
}

GronwallInput gronwall_input_from_ledger(const EnergyLedger& ledger) {
    require_rows(ledger, "gronwall_input_from_ledger");
    GronwallInput input;
    input.A = ledger.initial_kinetic();
    const auto& rows = ledger.rows();
    input.t.reserve(rows.size());
    for (const auto& row : rows) {
        input.t.push_back(row.t);
        input.f.push_back(row.kinetic);
        // Instantaneous dissipation; trapezoid over these samples reproduces
        // the ledger's cumulative columns bit for bit.
        input.g.push_back(row.integrands[0] + row.integrands[1]);
        input.h.push_back(0.0);
    }
    return input;
}

namespace {

double log_damping_factor(double r2) { return std::log(std::numbers::e + r2) * r2; }

}  // namespace

MonotonicityReport monotonicity_check(int dimension, std::size_t trials, std::uint64_t seed) {
    if (dimension < 1 || dimension > 3) {
        throw std::invalid_argument("monotonicity_check: dimension must be 1, 2 or 3");
    }
    if (trials < 1) throw std::invalid_argument("monotonicity_check: trials must be >= 1");

    Rng rng(substream_seed(seed, "probe.monotonicity", static_cast<std::uint64_t>(dimension)));
    MonotonicityReport report;
    report.dimension = dimension;
    report.trials = trials;

    double x[3] = {0, 0, 0}, y[3] = {0, 0, 0};
    for (std::size_t trial = 0; trial < trials; ++trial) {
        // Mixed scales: uniform ball, heavy tails, near-collinear, x close to y.
        const int family = static_cast<int>(trial % 4);
        for (int d = 0; d < dimension; ++d) x[d] = rng.uniform(-1.0, 1.0);
        switch (family) {
            case 0:
                for (int d = 0; d < dimension; ++d) y[d] = rng.uniform(-1.0, 1.0);
                break;
            case 1: {
                const double sx = std::exp(3.0 * rng.normal());
                const double sy = std::exp(3.0 * rng.normal());
                for (int d = 0; d < dimension; ++d) {
                    x[d] *= sx;
                    y[d] = sy * rng.uniform(-1.0, 1.0);
                }
                break;
            }
            case 2: {
                const double lambda = rng.uniform(0.0, 2.0);
                for (int d = 0; d < dimension; ++d) y[d] = lambda * x[d] + 1e-8 * rng.uniform(-1.0, 1.0);
                break;
            }
            default:
                for (int d = 0; d < dimension; ++d) y[d] = x[d] * (1.0 + 1e-10 * rng.uniform(-1.0, 1.0));
                break;
        }

        double x2 = 0.0, y2 = 0.0;
        for (int d = 0; d < dimension; ++d) {
            x2 += x[d] * x[d];
            y2 += y[d] * y[d];
        }
        const double ax = log_damping_factor(x2);
        const double ay = log_damping_factor(y2);
        double inner = 0.0;
        for (int d = 0; d < dimension; ++d) inner += (ax * x[d] - ay * y[d]) * (x[d] - y[d]);

        const double scale = std::max(std::max(x2, y2), 1e-300);
        const double normalized = inner / (scale * scale);
        if (trial == 0 || inner < report.min_inner) report.min_inner = inner;
        if (trial == 0 || normalized < report.min_normalized) report.min_normalized = normalized;
    }
    return report;
}

std::string DecayReport::summary() const {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "decay_function(b=%.4g): %s (largest increase %.3e at t=%.4g, tolerance %.3e)", b,
                  pass ? "pass" : "FAIL", largest_increase, worst_time, tolerance);
    return buf;
}

DecayReport decay_function_check(const EnergyLedger& ledger, const BAlpha& b, BVariant variant,
                                 double tolerance) {
    require_rows(ledger, "decay_function_check");
    DecayReport report;
    report.b = b_value(b, variant);
    report.tolerance = tolerance;
    const auto& rows = ledger.rows();
    double prev = std::exp(-report.b * rows[0].t) * rows[0].dz_kinetic;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double cur = std::exp(-report.b * rows[i].t) * rows[i].dz_kinetic;
        const double increase = cur - prev;
        if (increase > report.largest_increase) {
            report.largest_increase = increase;
            report.worst_time = rows[i].t;
        }
        prev = cur;
    }
    report.pass = report.largest_increase <= tolerance;
    return report;
}

}  // namespace dampflow
