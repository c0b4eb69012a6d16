#include "fwlab/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fwlab/errors.hpp"

namespace fwlab {

Field transform(const Field& u, TransformDirection direction) {
  if (direction == TransformDirection::analysis) {
    return Field::from_samples(u.grid(), {u.samples().begin(), u.samples().end()});
  }
  return Field::from_coeffs(u.grid(), {u.coeffs().begin(), u.coeffs().end()});
}

Field apply_multiplier(const Field& u, const std::function<std::complex<double>(double)>& m) {
  const Grid& grid = *u.grid();
  const std::size_t n = grid.num_points();
  std::vector<std::complex<double>> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) {
    coeffs[k] = u.coeffs()[k] * m(grid.frequency(k));
  }
  coeffs[n / 2] = 0.0;  // Nyquist bin carries no usable phase.
  return Field::from_coeffs(u.grid(), std::move(coeffs));
}

Field derivative(const Field& u, int order) {
  if (order < 1 || order > 4) {
    throw std::invalid_argument("derivative: order must be in 1..4");
  }
  const Grid& grid = *u.grid();
  const std::size_t n = grid.num_points();
  std::vector<std::complex<double>> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> m{0.0, grid.frequency(k)};
    std::complex<double> factor = m;
    for (int q = 1; q < order; ++q) factor *= m;
    coeffs[k] = u.coeffs()[k] * factor;
  }
  coeffs[n / 2] = 0.0;
  return Field::from_coeffs(u.grid(), std::move(coeffs));
}

Field nonlocal_velocity(const Field& u) {
  const Grid& grid = *u.grid();
  const std::size_t n = grid.num_points();
  std::vector<std::complex<double>> coeffs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = grid.frequency(k);
    coeffs[k] = u.coeffs()[k] * std::complex<double>{0.0, xi / (1.0 + xi * xi)};
  }
  coeffs[n / 2] = 0.0;
  return Field::from_coeffs(u.grid(), std::move(coeffs));
}

double lp_norm(const Field& u, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("lp_norm: p must be >= 1 (or infinity)");
  }
  if (std::isinf(p)) return u.max_abs();
  const double dx = u.grid()->dx();
  double acc = 0;
  if (p == 2.0) {
    for (double s : u.samples()) acc += s * s;
    return std::sqrt(dx * acc);
  }
  if (p == 1.0) {
    for (double s : u.samples()) acc += std::abs(s);
    return dx * acc;
  }
  for (double s : u.samples()) acc += std::pow(std::abs(s), p);
  return std::pow(dx * acc, 1.0 / p);
}

Field dealias(const Field& u) {
  const Grid& grid = *u.grid();
  const std::size_t n = grid.num_points();
  std::vector<std::complex<double>> coeffs(u.coeffs().begin(), u.coeffs().end());
  for (std::size_t k = 0; k < n; ++k) {
    const long mode = grid.signed_index(k);
    if (3 * std::labs(mode) > static_cast<long>(n)) coeffs[k] = 0.0;
  }
  return Field::from_coeffs(u.grid(), std::move(coeffs));
}

double spectral_tail_fraction(const Field& u, double cutoff_fraction) {
  if (!(cutoff_fraction > 0.0) || !(cutoff_fraction < 1.0)) {
    throw std::invalid_argument("spectral_tail_fraction: cutoff_fraction must lie in (0, 1)");
  }
  const Grid& grid = *u.grid();
  const double threshold = cutoff_fraction * static_cast<double>(grid.num_points()) / 2.0;
  double tail = 0, total = 0;
  for (std::size_t k = 0; k < grid.num_points(); ++k) {
    const double e = std::norm(u.coeffs()[k]);
    total += e;
    if (std::abs(static_cast<double>(grid.signed_index(k))) > threshold) tail += e;
  }
  if (total == 0.0) return 0.0;
  return tail / total;
}

}  // namespace fwlab
