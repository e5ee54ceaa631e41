// src/eq.cc
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

#include "nusmodem/eq.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nusmodem {

namespace {

// Initial inverse-correlation scale: P = I / kRlsDelta.
constexpr double kRlsDelta = 1e-3;
constexpr double kNlmsEps = 1e-8;
constexpr double kWeightLimit = 1e6;

}  // namespace

DecisionFeedbackEqualizer::DecisionFeedbackEqualizer(const ModemConfig& cfg)
    : cfg_(cfg.eq),
      con_(cfg.M),
      n_ff_(cfg.eq.ff_len()),
      n_fb_(cfg.eq.fb_taps),
      n_(n_ff_ + n_fb_),
      weights_(n_, cplx{0.0, 0.0}),
      u_(n_),
      pu_(n_),
      history_(n_fb_, cplx{0.0, 0.0}) {
  if (cfg_.adaptation == Adaptation::kRls) {
    p_.assign(static_cast<size_t>(n_) * n_, cplx{0.0, 0.0});
    for (int i = 0; i < n_; ++i)
      p_[static_cast<size_t>(i) * n_ + i] = cplx{1.0 / kRlsDelta, 0.0};
  }
}

cplx DecisionFeedbackEqualizer::step(std::span<const cplx> window,
                                     const cplx* reference) {
  if (static_cast<int>(window.size()) != n_ff_)
    throw std::invalid_argument("eq step: window length != ff length");

  const cplx rot{std::cos(-theta_), std::sin(-theta_)};
  double u_energy = 0.0;
  for (int i = 0; i < n_ff_; ++i) {
    u_[i] = rot * window[i];
    u_energy += std::norm(u_[i]);
  }
  for (int j = 0; j < n_fb_; ++j) {
    u_[n_ff_ + j] = -history_[j];
    u_energy += std::norm(history_[j]);
  }

  cplx soft{0.0, 0.0};
  for (int i = 0; i < n_; ++i) soft += std::conj(weights_[i]) * u_[i];

  const cplx decision = reference ? *reference : con_.nearest(soft);
  const cplx err = decision - soft;

  // A silent step (no signal, no history, zero reference) is a fixed point;
  // skipping it also keeps P from drifting while nothing is observed.
  if (!diverged_ && !frozen_ && u_energy > 0.0) {
    if (cfg_.adaptation == Adaptation::kRls) {
      const double lambda = cfg_.forgetting_factor;
      for (int i = 0; i < n_; ++i) {
        cplx acc{0.0, 0.0};
        const cplx* row = &p_[static_cast<size_t>(i) * n_];
        for (int j = 0; j < n_; ++j) acc += row[j] * u_[j];
        pu_[i] = acc;
      }
      // u^H P u is real for Hermitian P; accumulate the real part directly.
      double uhpu = 0.0;
      for (int i = 0; i < n_; ++i)
        uhpu += u_[i].real() * pu_[i].real() + u_[i].imag() * pu_[i].imag();
      const double denom = lambda + uhpu;
      const double inv_denom = 1.0 / denom;
      const cplx err_conj = std::conj(err);
      for (int i = 0; i < n_; ++i)
        weights_[i] += pu_[i] * inv_denom * err_conj;
      // P <- (P - g pu^H) / lambda, updated on the upper triangle and
      // mirrored to keep P exactly Hermitian.
      const double inv_lambda = 1.0 / lambda;
      for (int i = 0; i < n_; ++i) {
        cplx* row_i = &p_[static_cast<size_t>(i) * n_];
        const cplx gi = pu_[i] * inv_denom;
        for (int j = i; j < n_; ++j) {
          const cplx v = (row_i[j] - gi * std::conj(pu_[j])) * inv_lambda;
          row_i[j] = v;
          p_[static_cast<size_t>(j) * n_ + i] = std::conj(v);
        }
      }
    } else {
      const cplx scale = cfg_.step_size / (kNlmsEps + u_energy) *
                         std::conj(err);
      for (int i = 0; i < n_; ++i) weights_[i] += u_[i] * scale;
    }
  }

  const double phi = (soft * std::conj(decision)).imag();
  phi_integral_ += phi;
  theta_ += cfg_.pll_kp * phi + cfg_.pll_ki * phi_integral_;

  std::rotate(history_.rbegin(), history_.rbegin() + 1, history_.rend());
  if (n_fb_ > 0) history_[0] = decision;
  last_decision_ = decision;

  if (!diverged_) {
    if (!std::isfinite(theta_) || !std::isfinite(soft.real()) ||
        !std::isfinite(soft.imag())) {
      diverged_ = true;
    } else {
      for (const cplx& w : weights_) {
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) ||
            std::abs(w) > kWeightLimit) {
          diverged_ = true;
          break;
        }
      }
    }
  }
  return soft;
}

EqualizedPacket equalize_packet(const BasebandSignal& received,
                                const SyncResult& sync,
                                std::span<const cplx> training,
                                const ModemConfig& cfg) {
  cfg.validate();
  if (!sync.detected)
    throw std::invalid_argument("equalize_packet: sync not detected");
  const PacketFormat fmt = PacketFormat::from(cfg);
  if (static_cast<int>(training.size()) != fmt.n_training)
    throw std::invalid_argument("equalize_packet: training length mismatch");

  DecisionFeedbackEqualizer eq(cfg);
  eq.set_theta(sync.peak_phase);

  const int n_ff = cfg.eq.ff_len();
  const int spacing = cfg.eq.ff_spacing;
  const auto& rx = received.samples;
  const long long n_rx = static_cast<long long>(rx.size());
  std::vector<cplx> window(n_ff);

  EqualizedPacket out;
  out.soft_symbols.resize(fmt.n_symbols);
  out.hard_symbols.resize(fmt.n_symbols);

  for (int k = 0; k < fmt.n_symbols; ++k) {
    const long long center =
        static_cast<long long>(sync.data_start_index) +
        static_cast<long long>(k) * fmt.sps;
    for (int i = 0; i < n_ff; ++i) {
      const long long idx =
          center + static_cast<long long>(i - cfg.eq.ff_causal) * spacing;
      window[i] = (idx >= 0 && idx < n_rx) ? rx[idx] : cplx{0.0, 0.0};
    }
    if (k == fmt.n_training && cfg.eq.freeze_after_training) eq.freeze();
    const cplx* ref = k < fmt.n_training ? &training[k] : nullptr;
    out.soft_symbols[k] = eq.step(window, ref);
    out.hard_symbols[k] = eq.last_decision();
  }

  out.converged = !eq.diverged();

  const Constellation con(cfg.M);
  std::vector<int> indices(fmt.n_symbols);
  for (int k = 0; k < fmt.n_symbols; ++k)
    indices[k] = con.demap(out.hard_symbols[k]);
  out.bits = ungroup_bits(indices, cfg.M);
  out.bits.resize(cfg.payload_bits + 32);  // strip symbol padding

  const int dd = fmt.n_training;
  if (fmt.n_symbols - dd >= 100) {
    out.output_snr_db = estimate_output_snr(
        std::span<const cplx>(out.soft_symbols).subspan(dd),
        std::span<const cplx>(out.hard_symbols).subspan(dd));
  }
  return out;
}

double estimate_output_snr(std::span<const cplx> soft,
                           std::span<const cplx> hard) {
  if (soft.size() != hard.size())
    throw std::invalid_argument("estimate_output_snr: length mismatch");
  if (soft.size() < 100)
    throw std::invalid_argument("estimate_output_snr: need >= 100 symbols");
  double sig = 0.0, err = 0.0;
  for (size_t i = 0; i < soft.size(); ++i) {
    sig += std::norm(hard[i]);
    err += std::norm(hard[i] - soft[i]);
  }
  if (err <= 0.0) return 60.0;
  return std::min(60.0, 10.0 * std::log10(sig / err));
}

}  // namespace nusmodem
