#include "dampflow/ledger.hpp"

#include <cstdio>
#include <stdexcept>

namespace dampflow {

namespace {

const char* kColumnNames[kLedgerCumCount] = {
    "two_int_gradh_u_sq",
    "two_alpha_int_damping_L1",
    "two_int_gradh_dz_u_sq",
    "alpha_int_ratio_dz_usq_sq_L1",
    "alpha_int_log_dz_usq_sq_L1",
    "alpha_int_log_usq_dzu_sq_L1",
    "alpha_bm1_int_pow_dz_usq_sq_L1",
    "two_alpha_int_pow_dz_usq_L1",
    "sixteen_int_usq_dz_usq_L1",
    "sixteen_int_pow_dz_usq_L1",
    "eight_int_usq_dz_usq_L1",
};

void append_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

const LedgerRow& EnergyLedger::append(double t, double kinetic, double dz_kinetic,
                                      const std::array<double, kLedgerCumCount>& integrands) {
    LedgerRow row;
    row.t = t;
    row.kinetic = kinetic;
    row.dz_kinetic = dz_kinetic;
    row.integrands = integrands;
    if (!acc_.has_rows) {
        // First sample defines the initial energies (t = 0 for a fresh run).
        acc_.initial_kinetic = kinetic;
        acc_.initial_dz_kinetic = dz_kinetic;
        row.cum = {};
    } else {
        if (!(t > acc_.last_t)) {
            throw std::invalid_argument("EnergyLedger::append: time must increase (got t=" +
                                        std::to_string(t) + " after t=" + std::to_string(acc_.last_t) +
                                        ")");
        }
        const double half_dt = 0.5 * (t - acc_.last_t);
        for (int i = 0; i < kLedgerCumCount; ++i) {
            row.cum[i] = acc_.cum[i] + half_dt * (acc_.last_integrands[i] + integrands[i]);
        }
    }
    acc_.has_rows = 1;
    acc_.last_t = t;
    acc_.cum = row.cum;
    acc_.last_integrands = integrands;
    rows_.push_back(row);
    return rows_.back();
}

std::string EnergyLedger::csv_header() {
    std::string h = "t,l2_kinetic,dz_l2_kinetic";
    for (const char* name : kColumnNames) {
        h += ',';
        h += name;
    }
    return h;
}

std::string EnergyLedger::csv_row(const LedgerRow& row) {
    std::string line;
    append_double(line, row.t);
    line += ',';
    append_double(line, row.kinetic);
    line += ',';
    append_double(line, row.dz_kinetic);
    for (double v : row.cum) {
        line += ',';
        append_double(line, v);
    }
    return line;
}

void EnergyLedger::write_csv(std::ostream& os) const {
    os << csv_header() << '\n';
    for (const auto& row : rows_) os << csv_row(row) << '\n';
}

}  // namespace dampflow
