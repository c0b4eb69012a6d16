#include "fwlab/initial_data.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "bridge.hpp"
#include "fwlab/errors.hpp"
#include "fwlab/spectral.hpp"

namespace fwlab {

double bump_spectrum(double xi) {
  const double a = std::fabs(xi);
  if (a <= 0.25) return 1.0;
  if (a >= 0.5) return 0.0;
  return 1.0 - detail::smooth_bridge((a - 0.25) / 0.25);
}

namespace {

void require_carrier(const Grid& grid, double omega) {
  // The modulated bump occupies [omega - 1/2, omega + 1/2]; it must sit
  // strictly below the Nyquist frequency or synthesis would alias.
  if (!(omega + 0.5 < grid.nyquist())) {
    throw frequency_overflow("carrier " + std::to_string(omega) +
                             " too close to nyquist " +
                             std::to_string(grid.nyquist()));
  }
}

void require_bump_grid(const Grid& grid) {
  if (grid.half_length() < 32.0) {
    throw insufficient_resolution(
        "bump profile needs half_length >= 32, got " +
        std::to_string(grid.half_length()));
  }
  if (!(grid.nyquist() > 0.5)) {
    throw insufficient_resolution("nyquist below bump support");
  }
}

double dyadic_power(double exponent) { return std::pow(2.0, exponent); }

// Accumulates amp * psi(x) * cos(omega x) (or sin) directly as its
// spectrum, so the coefficients are exactly zero outside the carrier
// band.  Assembling the product in sample space instead would smear
// rounding noise across the whole spectrum, and Besov weights at large
// block indices amplify that noise above the smallest real amplitudes.
void add_carrier(std::vector<std::complex<double>>& coeffs, const Grid& grid,
                 double amp, double omega, bool sine) {
  const double scale = amp * 0.5 / grid.length();
  for (std::size_t bin = 0; bin < coeffs.size(); ++bin) {
    const double xi = grid.frequency(bin);
    const double up = bump_spectrum(xi - omega);
    const double down = bump_spectrum(xi + omega);
    if (up == 0.0 && down == 0.0) continue;
    if (sine) {
      coeffs[bin] += std::complex<double>(0.0, -scale * (up - down));
    } else {
      coeffs[bin] += scale * (up + down);
    }
  }
}

}  // namespace

BumpProfile bump_profile(const GridPtr& grid) {
  require_bump_grid(*grid);
  const std::size_t n = grid->num_points();
  const double length = grid->length();
  std::vector<std::complex<double>> coeffs(n);
  for (std::size_t bin = 0; bin < n; ++bin) {
    // Sampling the continuum spectrum at the grid frequencies makes psi
    // the periodization of the line bump; the support check above keeps
    // every nonzero sample strictly inside the resolved band.
    coeffs[bin] = bump_spectrum(grid->frequency(bin)) / length;
  }
  return BumpProfile{Field::from_coeffs(grid, std::move(coeffs))};
}

Field carrier_bump(const GridPtr& grid, double omega) {
  require_bump_grid(*grid);
  require_carrier(*grid, omega);
  std::vector<std::complex<double>> coeffs(grid->num_points());
  add_carrier(coeffs, *grid, 1.0, omega, false);
  return Field::from_coeffs(grid, std::move(coeffs));
}

DataFamily high_freq_data(const GridPtr& grid, int n, double s) {
  if (n < 2) {
    throw std::invalid_argument("high_freq_data needs n >= 2");
  }
  const double omega = carrier_ratio * dyadic_power(n);
  require_bump_grid(*grid);
  require_carrier(*grid, omega);
  std::vector<std::complex<double>> coeffs(grid->num_points());
  add_carrier(coeffs, *grid, dyadic_power(-s * n), omega, true);
  DataParams params;
  params.kind = DataKind::high_freq;
  params.n = n;
  params.s = s;
  return DataFamily{params, Field::from_coeffs(grid, std::move(coeffs))};
}

DataFamily low_freq_data(const GridPtr& grid, int n) {
  const Field psi = bump_profile(grid).psi;
  const double amp = (24.0 / 33.0) * dyadic_power(-n);
  DataParams params;
  params.kind = DataKind::low_freq;
  params.n = n;
  return DataFamily{params, amp * psi};
}

DataFamily combined_data(const GridPtr& grid, int n, double s) {
  DataFamily high = high_freq_data(grid, n, s);
  DataFamily low = low_freq_data(grid, n);
  DataParams params;
  params.kind = DataKind::combined;
  params.n = n;
  params.s = s;
  return DataFamily{params, high.field + low.field};
}

DataFamily lacunary_data(const GridPtr& grid, int l, double sigma,
                         int n_terms) {
  if (l < 4) {
    throw std::invalid_argument("lacunary_data needs gap exponent l >= 4");
  }
  if (n_terms < 1) {
    throw std::invalid_argument("lacunary_data needs at least one term");
  }
  // The top carrier decides resolvability; lower terms then fit a fortiori.
  require_bump_grid(*grid);
  require_carrier(*grid, carrier_ratio * dyadic_power(l * (n_terms - 1)));
  std::vector<std::complex<double>> coeffs(grid->num_points());
  for (int m = 0; m < n_terms; ++m) {
    add_carrier(coeffs, *grid, dyadic_power(-sigma * l * m),
                carrier_ratio * dyadic_power(l * m), false);
  }
  DataParams params;
  params.kind = DataKind::lacunary;
  params.l = l;
  params.sigma = sigma;
  params.n_terms = n_terms;
  return DataFamily{params, Field::from_coeffs(grid, std::move(coeffs))};
}

DataFamily peakon_field(const GridPtr& grid, double t) {
  // Matching A exp(-|x - ct|/2) against the evolution forces c = -4/3 and
  // A = 2c/3: the crest travels leftward in this sign convention.
  const double center = -(4.0 / 3.0) * t;
  if (!(std::fabs(center) < grid->half_length() / 2.0)) {
    throw out_of_window("peakon center " + std::to_string(center) +
                        " outside half the window");
  }
  const std::size_t count = grid->num_points();
  const double length = grid->length();
  // Summing every periodic image of exp(-|x|/2) telescopes to a closed
  // form: with d = distance to the nearest image, the total is
  // (e^{-d/2} + e^{-(L-d)/2}) / (1 - e^{-L/2}).
  const double tail = 1.0 / (1.0 - std::exp(-0.5 * length));
  std::vector<double> samples(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double d = std::fabs(std::remainder(grid->x(i) - center, length));
    samples[i] = -(8.0 / 9.0) * tail *
                 (std::exp(-0.5 * d) + std::exp(-0.5 * (length - d)));
  }
  DataParams params;
  params.kind = DataKind::peakon;
  params.t = t;
  return DataFamily{params, Field::from_samples(grid, std::move(samples))};
}

Field quadratic_drift(const Field& u0, bool include_nonlocal) {
  Field drift = -1.5 * dealias(pointwise_product(u0, derivative(u0)));
  if (include_nonlocal) {
    drift = drift + nonlocal_velocity(u0);
  }
  return drift;
}

DataFamily regenerate(const GridPtr& grid, const DataParams& params) {
  switch (params.kind) {
    case DataKind::high_freq:
      return high_freq_data(grid, params.n, params.s);
    case DataKind::low_freq:
      return low_freq_data(grid, params.n);
    case DataKind::combined:
      return combined_data(grid, params.n, params.s);
    case DataKind::lacunary:
      return lacunary_data(grid, params.l, params.sigma, params.n_terms);
    case DataKind::peakon:
      return peakon_field(grid, params.t);
  }
  throw std::invalid_argument("unknown data kind");
}

}  // namespace fwlab
