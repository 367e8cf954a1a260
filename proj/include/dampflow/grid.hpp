#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace dampflow {

/// Uniform discretization of the periodic box [0,L1) x [0,L2) x [0,L3).
///
/// Wavenumber tables follow the usual FFT layout: along each axis the mode
/// at storage position i carries the signed integer index
/// k = i for i <= N/2 and k = i - N otherwise, so k runs over
/// {-N/2+1, ..., N/2} with the Nyquist mode stored as +N/2.
/// The physical wavenumber is xi = 2*pi*k/L.
class Grid {
  public:
    Grid(std::array<int, 3> modes, std::array<double, 3> box);

    const std::array<int, 3>& modes() const { return modes_; }
    const std::array<double, 3>& box() const { return box_; }

    std::size_t mode_count() const { return total_; }
    double volume() const { return box_[0] * box_[1] * box_[2]; }
    double cell_volume() const { return volume() / static_cast<double>(total_); }

    /// Signed integer mode index at storage position i (Nyquist = +N/2).
    int mode_index(int axis, int i) const {
        const int n = modes_[axis];
        return i <= n / 2 ? i : i - n;
    }

    double xi(int axis, int i) const { return xi_[axis][i]; }
    const std::vector<double>& wavenumbers(int axis) const { return xi_[axis]; }

    /// Largest |xi| on the grid (the Nyquist corner).
    double xi_max() const;
    /// Smallest per-axis Nyquist wavenumber, min_i pi*N_i/L_i.
    double xi_nyquist_min() const;

    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * modes_[1] + i2) * static_cast<std::size_t>(modes_[2]) + i3;
    }

    /// Collocation point coordinate along an axis: x = i*L/N.
    double coord(int axis, int i) const {
        return box_[axis] * static_cast<double>(i) / static_cast<double>(modes_[axis]);
    }

    bool operator==(const Grid& other) const { return modes_ == other.modes_ && box_ == other.box_; }
    bool operator!=(const Grid& other) const { return !(*this == other); }

  private:
    std::array<int, 3> modes_;
    std::array<double, 3> box_;
    std::array<std::vector<double>, 3> xi_;
    std::size_t total_;
};

}  // namespace dampflow
