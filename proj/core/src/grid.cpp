#include "fwlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fwlab {

Grid::Grid(std::size_t n, double half_length)
    : n_(n),
      half_length_(half_length),
      length_(2.0 * std::numbers::pi * half_length),
      dx_(length_ / static_cast<double>(n)),
      nyquist_(static_cast<double>(n) / (2.0 * half_length)),
      freq_(n) {
  for (std::size_t bin = 0; bin < n_; ++bin) {
    freq_[bin] = static_cast<double>(signed_index(bin)) / half_length_;
  }
}

GridPtr make_grid(std::size_t num_points, double half_length) {
  if (num_points < 16 || (num_points & (num_points - 1)) != 0) {
    throw std::invalid_argument("make_grid: num_points must be a power of two >= 16");
  }
  if (!std::isfinite(half_length) || half_length < 1.0) {
    throw std::invalid_argument("make_grid: half_length must be finite and >= 1");
  }
  return std::shared_ptr<const Grid>(new Grid(num_points, half_length));
}

}  // namespace fwlab
