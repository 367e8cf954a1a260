#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "dampflow/damping.hpp"
#include "dampflow/field.hpp"

namespace dampflow {

/// Number of cumulative (time-integrated) ledger columns.
inline constexpr int kLedgerCumCount = 11;

/// One sampled row of the energy ledger. Cumulative entries are trapezoid
/// integrals from t = 0; every one of them is non-decreasing in t because its
/// integrand is an L1 norm or a squared norm.
struct LedgerRow {
    double t = 0.0;
    double kinetic = 0.0;     // ||u||_L2^2
    double dz_kinetic = 0.0;  // ||d3 u||_L2^2
    // Cumulative columns, in CSV order:
    //  0 two_int_gradh_u_sq           2 int ||grad_h u||^2
    //  1 two_alpha_int_damping_L1     2a int D(u)            (mode-specific density)
    //  2 two_int_gradh_dz_u_sq        2 int ||grad_h d3 u||^2
    //  3 alpha_int_ratio_dz_usq_sq    a int ||(|u|^2/(e+|u|^2)) |d3|u|^2|^2||_L1   (log)
    //  4 alpha_int_log_dz_usq_sq      a int ||log(e+|u|^2) |d3|u|^2|^2||_L1        (log)
    //  5 alpha_int_log_usq_dzu_sq     a int ||log(e+|u|^2)|u|^2 |d3 u|^2||_L1      (log)
    //  6 alpha_bm1_int_pow_dz_usq_sq  a(b-1) int |||u|^(b-3) |d3|u|^2|^2||_L1      (power)
    //  7 two_alpha_int_pow_dz_usq     2a int |||u|^(b-1) d3|u|^2||_L1              (power)
    //  8 sixteen_int_usq_dz_usq       16 int |||u|^2 d3|u|^2||_L1
    //  9 sixteen_int_pow_dz_usq       16 int |||u|^(b-1) d3|u|^2||_L1  (b = 3 when not power)
    // 10 eight_int_usq_dz_usq          8 int |||u|^2 d3|u|^2||_L1
    std::array<double, kLedgerCumCount> cum{};
    // Instantaneous integrand values behind each cumulative column, so
    // downstream quadrature can reproduce the sums exactly. Not serialized.
    std::array<double, kLedgerCumCount> integrands{};
};

/// Snapshot of the accumulator state, enough to continue integration
/// seamlessly after a checkpoint restore.
struct LedgerAccumulator {
    std::uint32_t has_rows = 0;
    double last_t = 0.0;
    double initial_kinetic = 0.0;
    double initial_dz_kinetic = 0.0;
    std::array<double, kLedgerCumCount> cum{};
    std::array<double, kLedgerCumCount> last_integrands{};
};

/// Append-only time series of every term in the a-priori energy
/// inequalities, accumulated along one trajectory.
class EnergyLedger {
  public:
    EnergyLedger() = default;

    /// Append a sample; integrands are the instantaneous values of the
    /// cumulative columns' integrands (prefactors included). Rejects
    /// non-monotone times.
    const LedgerRow& append(double t, double kinetic, double dz_kinetic,
                            const std::array<double, kLedgerCumCount>& integrands);

    const std::vector<LedgerRow>& rows() const { return rows_; }
    bool empty() const { return rows_.empty() && !acc_.has_rows; }

    double initial_kinetic() const { return acc_.initial_kinetic; }
    double initial_dz_kinetic() const { return acc_.initial_dz_kinetic; }

    const DampingSpec& damping() const { return damping_; }
    void set_damping(const DampingSpec& d) { damping_ = d; }

    LedgerAccumulator snapshot() const { return acc_; }
    /// Restore accumulator state from a checkpoint; subsequent appends
    /// continue the integrals bit-for-bit.
    void restore(const LedgerAccumulator& acc) { acc_ = acc; }

    static std::string csv_header();
    static std::string csv_row(const LedgerRow& row);
    void write_csv(std::ostream& os) const;

  private:
    std::vector<LedgerRow> rows_;
    LedgerAccumulator acc_;
    DampingSpec damping_ = DampingSpec::none();
};

}  // namespace dampflow
