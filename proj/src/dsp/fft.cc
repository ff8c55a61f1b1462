// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "devo/dsp.h"
#include "devo/error.h"

namespace devo {
namespace {

// FFTW planning is not thread-safe; execution with new arrays is. Plans are
// created once per length and live for the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    double* in = fftw_alloc_real(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    fftw_plan plan = fftw_plan_dft_r2c_1d(
        n, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(n, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<int, fftw_plan> plans_;
};

}  // namespace

std::vector<double> hann_window(int n) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  }
  return w;
}

std::vector<std::complex<double>> rfft(std::span<const double> in) {
  const int n = static_cast<int>(in.size());
  if (n <= 0) throw Error(ErrorCode::kInvalidArgument, "empty FFT input");
  std::vector<double> buffer(in.begin(), in.end());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
  fftw_execute_dft_r2c(PlanCache::instance().get(n), buffer.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<std::complex<double>> rfft(std::span<const double> in,
                                       int fft_len) {
  std::vector<double> padded(static_cast<std::size_t>(fft_len), 0.0);
  std::copy_n(in.begin(), std::min<std::size_t>(in.size(), padded.size()),
              padded.begin());
  return rfft(padded);
}

}  // namespace devo
