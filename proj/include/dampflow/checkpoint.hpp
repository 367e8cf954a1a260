#pragma once

#include <cstdint>
#include <string>

#include "dampflow/field.hpp"
#include "dampflow/ledger.hpp"

namespace dampflow {

/// Binary restart file. Layout (all multi-byte values little-endian):
///   magic "DFCKPT01" (8 bytes)
///   u32 N1, N2, N3
///   f64 L1, L2, L3
///   f64 t, u64 step, u64 config_hash
///   ledger accumulator: u32 has_rows, f64 last_t, f64 initial_kinetic,
///     f64 initial_dz_kinetic, f64 cum[11], f64 last_integrands[11]
///   coefficients, component-major: for j = 1..3, for each mode in row-major
///     order, f64 re, f64 im
/// Round trips are bit-exact.
struct Checkpoint {
    double t = 0.0;
    std::uint64_t step = 0;
    std::uint64_t config_hash = 0;
    SpectralVectorField u_hat;
    LedgerAccumulator ledger_state;

    explicit Checkpoint(const Grid& grid) : u_hat(grid) {}
};

void write_checkpoint(const std::string& path, const Checkpoint& ckpt);

/// Throws ConfigError on unreadable, truncated or wrong-magic files.
Checkpoint read_checkpoint(const std::string& path);

}  // namespace dampflow
