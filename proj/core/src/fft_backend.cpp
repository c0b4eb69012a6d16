#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace fwlab::detail {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

// FFTW_UNALIGNED lets the cached plan run on any caller buffer via the
// new-array execute interface.
PlanPair& plans_for(std::size_t n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<std::complex<double>> scratch_in(n), scratch_out(n);
  auto* in = reinterpret_cast<fftw_complex*>(scratch_in.data());
  auto* out = reinterpret_cast<fftw_complex*>(scratch_out.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT;
  PlanPair pair;
  pair.forward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags);
  pair.backward = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags);
  return cache.emplace(n, pair).first->second;
}

}  // namespace

void dft(std::size_t n, const std::complex<double>* in, std::complex<double>* out, bool inverse) {
  PlanPair& pair = plans_for(n);
  // Out-of-place c2c with PRESERVE_INPUT never writes the input buffer.
  auto* fin = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in));
  auto* fout = reinterpret_cast<fftw_complex*>(out);
  fftw_execute_dft(inverse ? pair.backward : pair.forward, fin, fout);
}

}  // namespace fwlab::detail
