#include "dampflow/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dampflow {

Grid::Grid(std::array<int, 3> modes, std::array<double, 3> box) : modes_(modes), box_(box) {
    for (int axis = 0; axis < 3; ++axis) {
        if (modes_[axis] < 4 || modes_[axis] % 2 != 0) {
            throw std::invalid_argument("Grid: mode count along axis " + std::to_string(axis + 1) +
                                        " must be even and >= 4, got " + std::to_string(modes_[axis]));
        }
        if (!(box_[axis] > 0.0)) {
            throw std::invalid_argument("Grid: box length along axis " + std::to_string(axis + 1) +
                                        " must be positive");
        }
    }
    total_ = static_cast<std::size_t>(modes_[0]) * modes_[1] * modes_[2];
    for (int axis = 0; axis < 3; ++axis) {
        const int n = modes_[axis];
        xi_[axis].resize(n);
        const double base = 2.0 * std::numbers::pi / box_[axis];
        for (int i = 0; i < n; ++i) {
            xi_[axis][i] = base * static_cast<double>(mode_index(axis, i));
        }
    }
}

double Grid::xi_max() const {
    double s = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        const double nyq = std::numbers::pi * modes_[axis] / box_[axis];
        s += nyq * nyq;
    }
    return std::sqrt(s);
}

double Grid::xi_nyquist_min() const {
    double m = std::numbers::pi * modes_[0] / box_[0];
    for (int axis = 1; axis < 3; ++axis) {
        m = std::min(m, std::numbers::pi * modes_[axis] / box_[axis]);
    }
    return m;
}

}  // namespace dampflow
