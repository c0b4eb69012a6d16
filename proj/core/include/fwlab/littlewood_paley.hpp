#pragma once

#include "fwlab/field.hpp"

namespace fwlab {

/// Smooth dyadic cutoff pair built from the exp(-1/t) bridge.
///
///   chi(xi) = 1 for |xi| <= 3/4, = 0 for |xi| >= 5/4, smooth bridge between;
///   phi(xi) = chi(xi/2) - chi(xi), supported in {3/4 <= |xi| <= 5/2}
///             and identically 1 on {5/4 <= |xi| <= 3/2}.
///
/// chi + sum_{j>=0} phi(2^-j xi) telescopes to 1 exactly.  The plateau
/// {5/4 <= |xi| <= 3/2} contains every 33/24-carrier support the data
/// families produce, so their dyadic localization is exact.
enum class CutoffKind { chi, phi };

double cutoff_eval(CutoffKind kind, double xi);

/// Largest block index carrying any grid frequency: ceil(log2(nyquist / (3/4))).
int max_block_index(const Grid& grid);

/// Dyadic block Delta_j: j = -1 applies chi, j >= 0 applies phi(2^-j xi),
/// j <= -2 returns the zero field.
Field dyadic_block(const Field& u, int j);

/// Low-frequency partial sum S_j = sum_{j' < j} Delta_{j'}; equals the
/// chi(2^-j xi) filter for j >= 0 and zero for j < 0.
Field low_freq_sum(const Field& u, int j);

/// p and r may be infinity (std::numeric_limits<double>::infinity()).
struct BesovParams {
  double s = 0;
  double p = 2;
  double r = 2;
};

/// l^r over j of 2^{js} ||Delta_j u||_{L^p}, j = -1 ... max_block_index.
double besov_norm(const Field& u, const BesovParams& params);

/// (L * sum_k (1 + xi_k^2)^s |coeffs_k|^2)^(1/2); s = 0 recovers the L^2 norm.
double sobolev_norm(const Field& u, double s);

}  // namespace fwlab
