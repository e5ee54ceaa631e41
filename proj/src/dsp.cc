// src/dsp.cc
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

#include "nusmodem/dsp.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nusmodem/fft.h"

namespace nusmodem {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Above this many multiply-accumulates the transform route is cheaper.
constexpr double kFftCrossover = 4.0e6;

// The occupied band is f_c +- f_b (1+beta)/2.  beta is unknown here, so the
// check assumes the worst-case roll-off of one: halfband = f_b = f_s / sps.
void check_carrier(double f_c, double f_s, int sps, const char* who) {
  const double halfband = sps > 0 ? f_s / sps : 0.0;
  if (f_c - halfband < 0.0 || f_c + halfband > f_s / 2.0) {
    throw std::invalid_argument(
        std::string(who) + ": band [" + std::to_string(f_c - halfband) +
        ", " + std::to_string(f_c + halfband) + "] Hz does not fit below " +
        std::to_string(f_s / 2.0) + " Hz");
  }
}

}  // namespace

BasebandSignal shape_symbols(std::span<const cplx> symbols,
                             const FilterTaps& taps, int sps) {
  if (symbols.empty()) throw std::invalid_argument("shape_symbols: no symbols");
  if (sps < 1) throw std::invalid_argument("shape_symbols: bad sps");
  const int ntaps = static_cast<int>(taps.taps.size());
  const size_t out_len = (symbols.size() - 1) * sps + ntaps;
  std::vector<cplx> out(out_len, cplx{0.0, 0.0});
  for (size_t k = 0; k < symbols.size(); ++k) {
    const cplx s = symbols[k];
    double* dst = reinterpret_cast<double*>(out.data() + k * sps);
    for (int i = 0; i < ntaps; ++i) {
      dst[2 * i] += s.real() * taps.taps[i];
      dst[2 * i + 1] += s.imag() * taps.taps[i];
    }
  }
  return BasebandSignal{std::move(out), 0.0, sps};
}

PassbandWaveform upconvert(const BasebandSignal& bb, double f_c) {
  if (bb.sample_rate <= 0.0)
    throw std::invalid_argument("upconvert: sample_rate unset");
  check_carrier(f_c, bb.sample_rate, bb.samples_per_symbol, "upconvert");
  const double w = kTwoPi * f_c / bb.sample_rate;
  std::vector<double> out(bb.samples.size());
  for (size_t n = 0; n < out.size(); ++n) {
    const double c = std::cos(w * static_cast<double>(n));
    const double s = std::sin(w * static_cast<double>(n));
    out[n] = bb.samples[n].real() * c - bb.samples[n].imag() * s;
  }
  return PassbandWaveform{std::move(out), bb.sample_rate};
}

BasebandSignal downconvert(const PassbandWaveform& wave, double f_c,
                           std::span<const double> taps,
                           int samples_per_symbol) {
  if (wave.sample_rate <= 0.0)
    throw std::invalid_argument("downconvert: sample_rate unset");
  check_carrier(f_c, wave.sample_rate, samples_per_symbol, "downconvert");
  const double w = kTwoPi * f_c / wave.sample_rate;
  std::vector<cplx> mixed(wave.samples.size());
  for (size_t n = 0; n < mixed.size(); ++n) {
    const double c = std::cos(w * static_cast<double>(n));
    const double s = std::sin(w * static_cast<double>(n));
    // Factor 2 undoes the halving from taking the real part on the way up.
    mixed[n] = cplx{2.0 * wave.samples[n] * c, -2.0 * wave.samples[n] * s};
  }
  std::vector<cplx> filtered;
  if (static_cast<double>(mixed.size()) * taps.size() > kFftCrossover) {
    filtered = kernels::fir_filter_same_fft(mixed, taps);
  } else {
    filtered = kernels::fir_filter_same(mixed, taps,
                                        kernels::Exec::kParallel);
  }
  return BasebandSignal{std::move(filtered), wave.sample_rate,
                        samples_per_symbol};
}

std::vector<cplx> cross_correlate(std::span<const cplx> sig,
                                  std::span<const cplx> tpl) {
  if (tpl.empty() || tpl.size() > sig.size())
    throw std::invalid_argument("cross_correlate: bad template length");
  const size_t n_lags = sig.size() - tpl.size() + 1;
  if (static_cast<double>(n_lags) * tpl.size() > kFftCrossover) {
    std::vector<cplx> full = kernels::cross_correlate_fft(sig, tpl);
    full.resize(n_lags);
    return full;
  }
  return kernels::cross_correlate_at(sig, tpl, 0, 1, n_lags,
                                     kernels::Exec::kParallel);
}

double band_power(std::span<const double> x, double sample_rate, double f_lo,
                  double f_hi) {
  if (x.empty()) return 0.0;
  if (f_lo > f_hi) throw std::invalid_argument("band_power: f_lo > f_hi");
  const size_t nfft = fft::next_pow2(x.size());
  std::vector<cplx> buf(nfft, cplx{0.0, 0.0});
  for (size_t n = 0; n < x.size(); ++n) buf[n] = cplx{x[n], 0.0};
  fft::forward(buf);
  // Parseval with zero padding: mean power over the original N samples is
  // sum_k |X[k]|^2 / (N * nfft).  Fold negative frequencies onto positive.
  const double norm = 1.0 / (static_cast<double>(x.size()) * nfft);
  const double bin_hz = sample_rate / nfft;
  double acc = 0.0;
  for (size_t k = 0; k <= nfft / 2; ++k) {
    const double f = k * bin_hz;
    if (f < f_lo || f > f_hi) continue;
    const double p = std::norm(buf[k]) * norm;
    acc += (k == 0 || k == nfft / 2) ? p : 2.0 * p;
  }
  return acc;
}

}  // namespace nusmodem
