// nusmodem/rrc.cc
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

#include "nusmodem/rrc.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nusmodem {

namespace {
constexpr double kPi = std::numbers::pi;
}

FilterTaps design_rrc(double beta, int sps, int span_symbols) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("rrc beta must be in (0, 1]");
  if (sps < 2) throw std::invalid_argument("rrc sps must be >= 2");
  if (span_symbols < 4 || span_symbols % 2 != 0)
    throw std::invalid_argument("rrc span_symbols must be even and >= 4");

  const int n = span_symbols * sps + 1;
  const int center = (n - 1) / 2;
  FilterTaps f;
  f.taps.resize(n);
  f.sps = sps;
  f.span_symbols = span_symbols;
  f.beta = beta;

  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i - center) / sps;  // symbol periods
    double v;
    if (i == center) {
      v = 1.0 - beta + 4.0 * beta / kPi;
    } else {
      const double x = 4.0 * beta * t;
      if (std::abs(1.0 - x * x) < 1e-10) {
        // t = +-1/(4 beta)
        v = (beta / std::sqrt(2.0)) *
            ((1.0 + 2.0 / kPi) * std::sin(kPi / (4.0 * beta)) +
             (1.0 - 2.0 / kPi) * std::cos(kPi / (4.0 * beta)));
      } else {
        v = (std::sin(kPi * t * (1.0 - beta)) +
             4.0 * beta * t * std::cos(kPi * t * (1.0 + beta))) /
            (kPi * t * (1.0 - x * x));
      }
    }
    f.taps[i] = v;
  }

  double energy = 0.0;
  for (double v : f.taps) energy += v * v;
  const double scale = 1.0 / std::sqrt(energy);
  for (double& v : f.taps) v *= scale;
  return f;
}

std::vector<double> design_lowpass(double cutoff_hz, double sample_rate,
                                   int ntaps) {
  if (!(cutoff_hz > 0.0) || cutoff_hz >= sample_rate / 2)
    throw std::invalid_argument("lowpass cutoff must be in (0, fs/2)");
  if (ntaps < 3 || ntaps % 2 == 0)
    throw std::invalid_argument("lowpass ntaps must be odd and >= 3");
  std::vector<double> h(ntaps);
  const int center = (ntaps - 1) / 2;
  const double fc = cutoff_hz / sample_rate;  // cycles per sample
  double sum = 0.0;
  for (int i = 0; i < ntaps; ++i) {
    const int k = i - center;
    double v = (k == 0) ? 2.0 * fc
                        : std::sin(2.0 * kPi * fc * k) / (kPi * k);
    v *= 0.54 - 0.46 * std::cos(2.0 * kPi * i / (ntaps - 1));  // Hamming
    h[i] = v;
    sum += v;
  }
  for (double& v : h) v /= sum;  // unit DC gain
  return h;
}

}  // namespace nusmodem
