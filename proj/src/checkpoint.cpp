#include "dampflow/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "dampflow/errors.hpp"

namespace dampflow {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian; byte swapping is not implemented");

constexpr char kMagic[8] = {'D', 'F', 'C', 'K', 'P', 'T', '0', '1'};

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is, const std::string& path) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw ConfigError("checkpoint: truncated file " + path);
    return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const Checkpoint& ckpt) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("checkpoint: cannot open " + path + " for writing");
    os.write(kMagic, sizeof(kMagic));
    const Grid& grid = ckpt.u_hat.grid;
    for (int axis = 0; axis < 3; ++axis) put<std::uint32_t>(os, grid.modes()[axis]);
    for (int axis = 0; axis < 3; ++axis) put<double>(os, grid.box()[axis]);
    put<double>(os, ckpt.t);
    put<std::uint64_t>(os, ckpt.step);
    put<std::uint64_t>(os, ckpt.config_hash);

    const LedgerAccumulator& acc = ckpt.ledger_state;
    put<std::uint32_t>(os, acc.has_rows);
    put<double>(os, acc.last_t);
    put<double>(os, acc.initial_kinetic);
    put<double>(os, acc.initial_dz_kinetic);
    for (double v : acc.cum) put<double>(os, v);
    for (double v : acc.last_integrands) put<double>(os, v);

    for (int j = 0; j < 3; ++j) {
        for (const Complex& c : ckpt.u_hat.coeffs[j]) {
            put<double>(os, c.real());
            put<double>(os, c.imag());
        }
    }
    os.flush();
    if (!os) throw ConfigError("checkpoint: write failed for " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("checkpoint: cannot open " + path);
    char magic[8];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ConfigError("checkpoint: " + path + " is not a checkpoint file (bad magic)");
    }
    std::array<int, 3> modes;
    for (int axis = 0; axis < 3; ++axis) modes[axis] = static_cast<int>(get<std::uint32_t>(is, path));
    std::array<double, 3> box;
    for (int axis = 0; axis < 3; ++axis) box[axis] = get<double>(is, path);

    Grid grid(modes, box);
    Checkpoint ckpt(grid);
    ckpt.t = get<double>(is, path);
    ckpt.step = get<std::uint64_t>(is, path);
    ckpt.config_hash = get<std::uint64_t>(is, path);

    LedgerAccumulator acc;
    acc.has_rows = get<std::uint32_t>(is, path);
    acc.last_t = get<double>(is, path);
    acc.initial_kinetic = get<double>(is, path);
    acc.initial_dz_kinetic = get<double>(is, path);
    for (double& v : acc.cum) v = get<double>(is, path);
    for (double& v : acc.last_integrands) v = get<double>(is, path);
    ckpt.ledger_state = acc;

    for (int j = 0; j < 3; ++j) {
        for (Complex& c : ckpt.u_hat.coeffs[j]) {
            const double re = get<double>(is, path);
            const double im = get<double>(is, path);
            c = Complex{re, im};
        }
    }
    return ckpt;
}

}  // namespace dampflow
