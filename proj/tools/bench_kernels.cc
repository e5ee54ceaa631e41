// tools/bench_kernels.cc
//
// Copyright 2026  The nusmodem authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.
//
// Times the three kernel routes (serial reference, OpenMP, FFT) on
// packet-sized problems and reports the largest deviation from the serial
// reference.  Serial and OpenMP must agree bit for bit; the FFT route is
// equal to rounding.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "nusmodem/kernels.h"
#include "nusmodem/signal.h"

using nusmodem::cplx;
using nusmodem::kernels::Exec;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e30;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    fn();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int main() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto rand_cplx = [&](size_t n) {
    std::vector<cplx> v(n);
    for (auto& c : v) c = cplx{gauss(rng), gauss(rng)};
    return v;
  };
  auto rand_real = [&](size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = gauss(rng);
    return v;
  };

  std::printf("threads: %d\n\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %10s %12s\n", "kernel", "serial", "openmp",
              "fft", "max |diff|");

  {
    const auto sig = rand_cplx(100000);
    const auto taps = rand_real(289);
    std::vector<cplx> a, b, c;
    const double ts = time_best_of(3, [&] {
      a = nusmodem::kernels::fir_filter_same(sig, taps, Exec::kSerial);
    });
    const double tp = time_best_of(3, [&] {
      b = nusmodem::kernels::fir_filter_same(sig, taps, Exec::kParallel);
    });
    const double tf =
        time_best_of(3, [&] { c = nusmodem::kernels::fir_filter_same_fft(sig, taps); });
    std::printf("%-28s %8.1fms %8.1fms %8.1fms %12.2e\n",
                "fir 100k x 289", ts, tp, tf,
                std::max(max_abs_diff(a, b), max_abs_diff(a, c)));
  }

  {
    const auto sig = rand_real(100000);
    const auto rir = rand_real(20000);
    std::vector<double> a, b, c;
    const double ts = time_best_of(3, [&] {
      a = nusmodem::kernels::convolve_full(sig, rir, Exec::kSerial);
    });
    const double tp = time_best_of(3, [&] {
      b = nusmodem::kernels::convolve_full(sig, rir, Exec::kParallel);
    });
    const double tf =
        time_best_of(3, [&] { c = nusmodem::kernels::convolve_full_fft(sig, rir); });
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
      d = std::max({d, std::abs(a[i] - b[i]), std::abs(a[i] - c[i])});
    std::printf("%-28s %8.1fms %8.1fms %8.1fms %12.2e\n",
                "convolve 100k x 20k", ts, tp, tf, d);
  }

  {
    const auto sig = rand_cplx(48000);
    const auto tpl = rand_cplx(6409);
    const size_t lags = sig.size() - tpl.size() + 1;
    std::vector<cplx> a, b, c;
    const double ts = time_best_of(3, [&] {
      a = nusmodem::kernels::cross_correlate_at(sig, tpl, 0, 1, lags, Exec::kSerial);
    });
    const double tp = time_best_of(3, [&] {
      b = nusmodem::kernels::cross_correlate_at(sig, tpl, 0, 1, lags, Exec::kParallel);
    });
    const double tf = time_best_of(3, [&] {
      c = nusmodem::kernels::cross_correlate_fft(sig, tpl);
      c.resize(lags);
    });
    std::printf("%-28s %8.1fms %8.1fms %8.1fms %12.2e\n",
                "correlate 48k x 6409", ts, tp, tf,
                std::max(max_abs_diff(a, b), max_abs_diff(a, c)));
  }

  return 0;
}
