// src/sync.cc
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

#include "nusmodem/sync.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "nusmodem/dsp.h"
#include "nusmodem/kernels.h"

namespace nusmodem {

namespace {

// Sliding window energies via a prefix sum: energy[k] over [k, k+m).
std::vector<double> window_energies(std::span<const cplx> sig, size_t m) {
  std::vector<double> prefix(sig.size() + 1, 0.0);
  for (size_t i = 0; i < sig.size(); ++i)
    prefix[i + 1] = prefix[i] + std::norm(sig[i]);
  std::vector<double> energy(sig.size() - m + 1);
  for (size_t k = 0; k < energy.size(); ++k)
    energy[k] = prefix[k + m] - prefix[k];
  return energy;
}

double template_norm(std::span<const cplx> tpl) {
  double e = 0.0;
  for (const cplx& c : tpl) e += std::norm(c);
  return std::sqrt(e);
}

SyncResult result_at(int peak, double metric, const cplx& corr,
                     const BasebandSignal& received, const ModemConfig& cfg) {
  const PacketFormat fmt = PacketFormat::from(cfg);
  SyncResult r;
  r.peak_index = peak;
  r.peak_metric = metric;
  r.peak_phase = std::arg(corr);
  r.data_start_index = peak + fmt.pilot_samples + fmt.guard_samples +
                       (fmt.ntaps - 1) / 2;
  r.detected = metric >= kDetectionThreshold &&
               r.data_start_index <
                   static_cast<int>(received.samples.size());
  return r;
}

}  // namespace

SyncResult detect_pilot(const BasebandSignal& received,
                        std::span<const cplx> pilot_template,
                        const ModemConfig& cfg) {
  const auto& sig = received.samples;
  if (pilot_template.empty() || sig.size() < pilot_template.size())
    throw std::invalid_argument("detect_pilot: stream shorter than template");

  const std::vector<cplx> corr = cross_correlate(sig, pilot_template);
  const std::vector<double> energy =
      window_energies(sig, pilot_template.size());
  const double tpl_norm = template_norm(pilot_template);

  int best = 0;
  double best_metric = 0.0;
  for (size_t k = 0; k < corr.size(); ++k) {
    const double denom = std::sqrt(energy[k]) * tpl_norm;
    if (denom <= 0.0) continue;
    const double metric = std::abs(corr[k]) / denom;
    if (metric > best_metric) {
      best_metric = metric;
      best = static_cast<int>(k);
    }
  }
  return result_at(best, best_metric, corr[best], received, cfg);
}

SyncResult refine_timing(const BasebandSignal& received,
                         const SyncResult& coarse,
                         std::span<const cplx> pilot_template,
                         const ModemConfig& cfg) {
  if (!coarse.detected)
    throw std::invalid_argument("refine_timing: coarse result not detected");
  const auto& sig = received.samples;
  const int half = cfg.sps() / 2;
  const int max_lag = static_cast<int>(sig.size() - pilot_template.size());
  const int first = std::max(0, coarse.peak_index - half);
  const int last = std::min(max_lag, coarse.peak_index + half);
  const size_t count = static_cast<size_t>(last - first + 1);

  const std::vector<cplx> corr = kernels::cross_correlate_at(
      sig, pilot_template, first, 1, count, kernels::Exec::kParallel);
  const std::vector<double> energy =
      window_energies(sig, pilot_template.size());
  const double tpl_norm = template_norm(pilot_template);

  int best = coarse.peak_index;
  double best_metric = 0.0;
  cplx best_corr{0.0, 0.0};
  for (size_t i = 0; i < count; ++i) {
    const int k = first + static_cast<int>(i);
    const double denom = std::sqrt(energy[k]) * tpl_norm;
    if (denom <= 0.0) continue;
    const double metric = std::abs(corr[i]) / denom;
    if (metric > best_metric) {
      best_metric = metric;
      best = k;
      best_corr = corr[i];
    }
  }
  return result_at(best, best_metric, best_corr, received, cfg);
}

}  // namespace nusmodem
