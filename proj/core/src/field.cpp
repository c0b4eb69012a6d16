#include "fwlab/field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "fft_backend.hpp"
#include "fwlab/errors.hpp"

namespace fwlab {

namespace detail {

// The grid origin sits at sample N/2 (x = 0 at i = N/2), which shows up as
// an alternating-sign phase relative to the index-0-origin DFT:
//   coeffs_k = (-1)^k / N * DFT_k(samples).
void analysis(const Grid& grid, const double* samples, std::complex<double>* coeffs) {
  const std::size_t n = grid.num_points();
  std::vector<std::complex<double>> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = samples[i];
  dft(n, in.data(), coeffs, /*inverse=*/false);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    coeffs[k] *= (k & 1) ? -inv_n : inv_n;
  }
}

void synthesis(const Grid& grid, const std::complex<double>* coeffs, double* samples) {
  const std::size_t n = grid.num_points();
  std::vector<std::complex<double>> in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) {
    in[k] = (k & 1) ? -coeffs[k] : coeffs[k];
  }
  dft(n, in.data(), out.data(), /*inverse=*/true);
  for (std::size_t i = 0; i < n; ++i) samples[i] = out[i].real();
}

}  // namespace detail

namespace {

void require_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw numeric_fault("field input contains NaN/Inf");
  }
}

void require_finite(const std::vector<std::complex<double>>& v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw numeric_fault("field input contains NaN/Inf");
    }
  }
}

void require_size(std::size_t got, std::size_t want) {
  if (got != want) throw std::invalid_argument("field data length does not match grid");
}

}  // namespace

Field Field::from_samples(GridPtr grid, std::vector<double> samples) {
  require_size(samples.size(), grid->num_points());
  require_finite(samples);
  Field f;
  f.grid_ = std::move(grid);
  f.samples_ = std::move(samples);
  f.coeffs_.resize(f.samples_.size());
  detail::analysis(*f.grid_, f.samples_.data(), f.coeffs_.data());
  return f;
}

Field Field::from_coeffs(GridPtr grid, std::vector<std::complex<double>> coeffs) {
  require_size(coeffs.size(), grid->num_points());
  require_finite(coeffs);
  Field f;
  f.grid_ = std::move(grid);
  f.coeffs_ = std::move(coeffs);
  f.samples_.resize(f.coeffs_.size());
  detail::synthesis(*f.grid_, f.coeffs_.data(), f.samples_.data());
  return f;
}

Field Field::zero(GridPtr grid) {
  Field f;
  f.samples_.assign(grid->num_points(), 0.0);
  f.coeffs_.assign(grid->num_points(), {0.0, 0.0});
  f.grid_ = std::move(grid);
  return f;
}

double Field::max_abs() const {
  double m = 0;
  for (double s : samples_) m = std::max(m, std::abs(s));
  return m;
}

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!a.grid()->same_as(*b.grid())) {
    throw std::invalid_argument("field operands live on different grids");
  }
}

}  // namespace

Field Field::from_pair(GridPtr grid, std::vector<double> samples,
                       std::vector<std::complex<double>> coeffs) {
  Field f;
  f.grid_ = std::move(grid);
  f.samples_ = std::move(samples);
  f.coeffs_ = std::move(coeffs);
  return f;
}

Field operator+(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> samples(a.size());
  std::vector<std::complex<double>> coeffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    samples[i] = a.samples()[i] + b.samples()[i];
    coeffs[i] = a.coeffs()[i] + b.coeffs()[i];
  }
  // Both representations combine linearly; no transform needed.
  return Field::from_pair(a.grid(), std::move(samples), std::move(coeffs));
}

Field operator-(const Field& a, const Field& b) {
  return a + (-1.0 * b);
}

Field operator*(double c, const Field& a) {
  if (!std::isfinite(c)) throw numeric_fault("scalar factor is not finite");
  std::vector<double> samples(a.size());
  std::vector<std::complex<double>> coeffs(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    samples[i] = c * a.samples()[i];
    coeffs[i] = c * a.coeffs()[i];
  }
  return Field::from_pair(a.grid(), std::move(samples), std::move(coeffs));
}

Field pointwise_product(const Field& a, const Field& b) {
  require_same_grid(a, b);
  std::vector<double> samples(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) samples[i] = a.samples()[i] * b.samples()[i];
  return Field::from_samples(a.grid(), std::move(samples));
}

}  // namespace fwlab
