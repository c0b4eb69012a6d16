#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fwlab/grid.hpp"

namespace fwlab {

/// Real-valued periodic field holding both representations at once:
/// point samples and Fourier coefficients with the 1/L analysis weight,
/// coeffs_k ~ (1/L) * integral of u(x) exp(-i xi_k x).  Immutable after
/// construction; safe to share across threads.
class Field {
 public:
  /// Analysis constructor: computes coeffs from samples (one FFT).
  static Field from_samples(GridPtr grid, std::vector<double> samples);
  /// Synthesis constructor: computes samples from coeffs (one FFT).
  /// Coefficients are expected Hermitian-symmetric; the imaginary residue
  /// of the synthesis is dropped.
  static Field from_coeffs(GridPtr grid, std::vector<std::complex<double>> coeffs);
  static Field zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }
  std::size_t size() const { return samples_.size(); }

  double max_abs() const;

 private:
  Field() = default;
  static Field from_pair(GridPtr grid, std::vector<double> samples,
                         std::vector<std::complex<double>> coeffs);
  friend Field operator+(const Field& a, const Field& b);
  friend Field operator*(double c, const Field& a);

  GridPtr grid_;
  std::vector<double> samples_;
  std::vector<std::complex<double>> coeffs_;
};

/// Linear combinations act on both representations; no FFT involved.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& a);

/// Pointwise product of samples (one analysis FFT for the result).
Field pointwise_product(const Field& a, const Field& b);

namespace detail {
// Raw transform kernels shared by Field and the time steppers.
// analysis: samples -> coeffs; synthesis: coeffs -> samples (real part).
void analysis(const Grid& grid, const double* samples, std::complex<double>* coeffs);
void synthesis(const Grid& grid, const std::complex<double>* coeffs, double* samples);
}  // namespace detail

}  // namespace fwlab
