#pragma once

#include <complex>
#include <functional>

#include "fwlab/field.hpp"

namespace fwlab {

enum class TransformDirection { analysis, synthesis };

/// Rebuilds the field through the requested transform leg.  analysis
/// recomputes coeffs from samples, synthesis recomputes samples from
/// coeffs; the two compose to the identity up to roundoff.
Field transform(const Field& u, TransformDirection direction);

/// Applies m(xi) to every coefficient and zeroes the Nyquist bin.
/// m must satisfy m(-xi) = conj(m(xi)) for the result to stay real.
Field apply_multiplier(const Field& u, const std::function<std::complex<double>(double)>& m);

/// Spectral derivative of the given order (1..4).
Field derivative(const Field& u, int order = 1);

/// Velocity part of the Fornberg-Whitham nonlocality: the Fourier
/// multiplier i*xi / (1 + xi^2), i.e. d/dx applied to the inverse
/// Helmholtz operator (1 - d^2/dx^2)^{-1}.
Field nonlocal_velocity(const Field& u);

/// Grid L^p norm, (dx * sum |u_i|^p)^(1/p); p = infinity gives max |u_i|.
double lp_norm(const Field& u, double p);

/// Two-thirds rule: zeroes all coefficients with |k| > N/3.
Field dealias(const Field& u);

/// Energy fraction carried by bins |k| > cutoff_fraction * N/2.
/// Zero field reports 0.
double spectral_tail_fraction(const Field& u, double cutoff_fraction);

}  // namespace fwlab
