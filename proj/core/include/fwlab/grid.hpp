#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fwlab {

/// Uniform periodic grid on [-pi*M, pi*M) with N sample points.
///
/// Frequencies are xi_k = k/M for k = -N/2 ... N/2-1, stored in FFT bin
/// order (k = 0, 1, ..., N/2-1, -N/2, ..., -1).  The k = -N/2 bin is the
/// Nyquist mode; every multiplier application zeroes it.
class Grid {
 public:
  std::size_t num_points() const { return n_; }
  double half_length() const { return half_length_; }
  double length() const { return length_; }
  double dx() const { return dx_; }
  /// Largest resolvable frequency, N/(2M).
  double nyquist() const { return nyquist_; }

  double x(std::size_t i) const { return -0.5 * length_ + dx_ * static_cast<double>(i); }
  /// Signed mode number for a storage bin.
  long signed_index(std::size_t bin) const {
    return bin < n_ / 2 ? static_cast<long>(bin) : static_cast<long>(bin) - static_cast<long>(n_);
  }
  double frequency(std::size_t bin) const { return freq_[bin]; }
  std::span<const double> frequencies() const { return freq_; }

  bool same_as(const Grid& other) const {
    return n_ == other.n_ && half_length_ == other.half_length_;
  }

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

 private:
  Grid(std::size_t n, double half_length);
  friend std::shared_ptr<const Grid> make_grid(std::size_t, double);

  std::size_t n_;
  double half_length_;
  double length_;
  double dx_;
  double nyquist_;
  std::vector<double> freq_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// num_points must be a power of two >= 16; half_length >= 1.
/// Throws std::invalid_argument otherwise.
GridPtr make_grid(std::size_t num_points, double half_length);

}  // namespace fwlab
