#pragma once

#include "fwlab/field.hpp"

namespace fwlab {

/// Frequency ratio placing carriers mid-plateau of the dyadic cutoffs:
/// 33/24 * 2^n lies in the exact-1 region {5/4 <= |xi|/2^n <= 3/2}.
inline constexpr double carrier_ratio = 33.0 / 24.0;

/// Smooth bump spectrum: 1 for |xi| <= 1/4, 0 for |xi| >= 1/2.
double bump_spectrum(double xi);

/// Band-limited bump psi synthesized from bump_spectrum samples at the
/// grid frequencies (coefficient psi_hat(xi_k)/L).  Real, even, and its
/// coefficients vanish identically for |xi_k| >= 1/2.
struct BumpProfile {
  Field psi;
};

/// Requires half_length >= 32 and nyquist > 1/2; throws
/// insufficient_resolution otherwise.
BumpProfile bump_profile(const GridPtr& grid);

/// psi(x) * cos(omega x).  Requires omega + 1/2 < nyquist
/// (frequency_overflow otherwise).
Field carrier_bump(const GridPtr& grid, double omega);

enum class DataKind { high_freq, low_freq, combined, lacunary, peakon };

/// Everything needed to regenerate the field bit-identically.
struct DataParams {
  DataKind kind{};
  int n = 0;
  double s = 0;
  int l = 0;
  double sigma = 0;
  int n_terms = 0;
  double t = 0;
};

struct DataFamily {
  DataParams params;
  Field field;
};

/// 2^{-ns} psi(x) sin(33/24 * 2^n x); n >= 2.
DataFamily high_freq_data(const GridPtr& grid, int n, double s);

/// (24/33) 2^{-n} psi(x).
DataFamily low_freq_data(const GridPtr& grid, int n);

/// Sum of the two: the perturbed member of the data pair.
DataFamily combined_data(const GridPtr& grid, int n, double s);

/// sum_{m=0}^{n_terms-1} 2^{-l m sigma} psi(x) cos(33/24 * 2^{lm} x); l >= 4.
DataFamily lacunary_data(const GridPtr& grid, int l, double sigma, int n_terms);

/// Periodized peakon -(8/9) exp(-|x + (4/3)t| / 2), the exact traveling
/// wave of the equation in the sign convention used here (the familiar
/// +8/9 rightward peakon belongs to the mirrored convention; the two are
/// conjugate under u(t,x) -> -u(t,-x)).  Requires |4t/3| < M/2 for grid
/// half-length M (out_of_window otherwise).  Not band-limited; the
/// spectral tail is reported by diagnostics rather than hidden.
DataFamily peakon_field(const GridPtr& grid, double t);

/// First-order drift of the evolution started at u0:
///   -(3/2) dealias(u0 * d/dx u0), plus the nonlocal velocity term when
/// include_nonlocal is set (the full first-order tendency).
Field quadratic_drift(const Field& u0, bool include_nonlocal = false);

/// Rebuilds the field for stored metadata on the given grid.
DataFamily regenerate(const GridPtr& grid, const DataParams& params);

}  // namespace fwlab
