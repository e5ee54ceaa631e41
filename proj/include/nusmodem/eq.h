// nusmodem/eq.h
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

#ifndef NUSMODEM_EQ_H_
#define NUSMODEM_EQ_H_

#include <span>
#include <vector>

#include "nusmodem/bits.h"
#include "nusmodem/config.h"
#include "nusmodem/constellation.h"
#include "nusmodem/signal.h"
#include "nusmodem/sync.h"

namespace nusmodem {

// Decision feedback equalizer with a phase tracker folded into the loop:
//
//   y_k = e^{-j theta} (ff^H window) - fb^H history
//
// The feedforward and feedback weights adapt jointly (RLS by default,
// normalized LMS as an option) against the error x_k - y_k, where x_k is the
// known training symbol or the hard decision.  theta follows a second-order
// PLL driven by the decision-directed phase detector Im{y_k conj(x_k)}.
// Rotating the window by theta before adaptation keeps the weights free of
// the phase trajectory, so the two loops do not chase each other.
class DecisionFeedbackEqualizer {
 public:
  explicit DecisionFeedbackEqualizer(const ModemConfig& cfg);

  // One symbol.  window spans the feedforward taps, oldest sample first,
  // already gathered at the configured tap spacing (length ff_len()).
  // reference is the known symbol during training, nullptr once
  // decision-directed.  Returns the soft estimate; the decision lands in
  // last_decision().
  cplx step(std::span<const cplx> window, const cplx* reference);

  cplx last_decision() const { return last_decision_; }
  double theta() const { return theta_; }
  double phi_integral() const { return phi_integral_; }
  bool diverged() const { return diverged_; }
  std::span<const cplx> ff_weights() const {
    return std::span<const cplx>(weights_).first(n_ff_);
  }
  std::span<const cplx> fb_weights() const {
    return std::span<const cplx>(weights_).subspan(n_ff_);
  }

  // theta is normally seeded from the synchronizer's pilot phase so the
  // data block starts phase-aligned.
  void set_theta(double theta) { theta_ = theta; }

  // Stop weight adaptation from the next step on.  The feedback path and
  // the carrier loop keep running; only the taps stop moving.
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

 private:
  EqualizerConfig cfg_;
  Constellation con_;
  int n_ff_;
  int n_fb_;
  int n_;                       // n_ff_ + n_fb_
  std::vector<cplx> weights_;   // ff stacked over fb
  std::vector<cplx> p_;         // n x n inverse-correlation estimate (RLS)
  std::vector<cplx> u_;         // scratch joint regressor
  std::vector<cplx> pu_;        // scratch P*u
  std::vector<cplx> history_;   // history_[j] = decision k-1-j
  cplx last_decision_{0.0, 0.0};
  double theta_ = 0.0;
  double phi_integral_ = 0.0;
  bool diverged_ = false;
  bool frozen_ = false;
};

struct EqualizedPacket {
  std::vector<cplx> soft_symbols;
  std::vector<cplx> hard_symbols;
  BitVector bits;               // payload + CRC (pad stripped)
  double output_snr_db = 0.0;   // over the decision-directed span
  bool converged = true;
};

// Runs the equalizer over every symbol of a synchronized packet: the first
// floor(training_fraction * N) symbols in training mode against `training`,
// the rest decision-directed.  Window samples outside the received stream
// read as zero.
EqualizedPacket equalize_packet(const BasebandSignal& received,
                                const SyncResult& sync,
                                std::span<const cplx> training,
                                const ModemConfig& cfg);

// 10 log10( sum|hard|^2 / sum|hard-soft|^2 ), capped at 60 dB.  Requires at
// least 100 symbols for a stable estimate.
double estimate_output_snr(std::span<const cplx> soft,
                           std::span<const cplx> hard);

}  // namespace nusmodem

#endif  // NUSMODEM_EQ_H_
