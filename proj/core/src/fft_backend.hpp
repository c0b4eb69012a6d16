#pragma once

#include <complex>
#include <cstddef>

namespace fwlab::detail {

// Unnormalized complex DFT of length n through cached FFTW plans.
// inverse = false: sum_i in_i exp(-2 pi i k i / n)
// inverse = true:  sum_k in_k exp(+2 pi i k i / n)
// Plan creation is serialized; execution is safe from concurrent threads
// on distinct buffers.  in and out must not alias.
void dft(std::size_t n, const std::complex<double>* in, std::complex<double>* out, bool inverse);

}  // namespace fwlab::detail
