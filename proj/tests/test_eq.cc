// tests/test_eq.cc
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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "nusmodem/channel.h"
#include "nusmodem/dsp.h"
#include "nusmodem/sync.h"
#include "nusmodem/tx.h"

using nusmodem::Adaptation;
using nusmodem::BasebandSignal;
using nusmodem::ChannelSpec;
using nusmodem::Constellation;
using nusmodem::DecisionFeedbackEqualizer;
using nusmodem::EqualizedPacket;
using nusmodem::ModemConfig;
using nusmodem::PacketFormat;
using nusmodem::PassbandWaveform;
using nusmodem::SyncResult;
using nusmodem::cplx;

namespace {

// Single-tap feedforward, single feedback tap: the smallest filter the
// config allows, enough to expose the adaptation loop on its own.
ModemConfig tiny_eq_config() {
  ModemConfig cfg;
  cfg.eq.ff_noncausal = 0;
  cfg.eq.ff_causal = 0;
  cfg.eq.fb_taps = 1;
  return cfg;
}

std::vector<cplx> qpsk_stream(size_t n, unsigned seed) {
  const Constellation con(4);
  std::mt19937 rng(seed);
  std::vector<cplx> s(n);
  for (auto& v : s) v = con.map(static_cast<int>(rng() & 3u));
  return s;
}

struct Pipeline {
  ModemConfig cfg;
  PacketFormat fmt = PacketFormat::from(cfg);
  nusmodem::FilterTaps rrc =
      nusmodem::design_rrc(cfg.beta, cfg.sps(), cfg.rrc_span);
  nusmodem::BitVector tx_bits;
  std::vector<cplx> symbols;
  PassbandWaveform wave;

  explicit Pipeline(unsigned seed) {
    std::mt19937 rng(seed);
    nusmodem::BitVector payload(5120);
    for (auto& b : payload) b = static_cast<std::uint8_t>(rng() & 1u);
    const nusmodem::Packet packet = nusmodem::build_payload(payload);
    tx_bits = packet.payload;
    tx_bits.insert(tx_bits.end(), packet.crc.begin(), packet.crc.end());
    symbols = nusmodem::packet_symbols(packet, cfg);
    wave = nusmodem::build_packet_waveform(packet, cfg);
  }

  EqualizedPacket decode(const PassbandWaveform& rx) const {
    const BasebandSignal bb =
        nusmodem::downconvert(rx, cfg.f_c, rrc.taps, fmt.sps);
    return decode_baseband(bb);
  }

  EqualizedPacket decode_baseband(const BasebandSignal& bb) const {
    const BasebandSignal tpl = nusmodem::pilot_baseband(cfg, rrc);
    SyncResult sync = nusmodem::detect_pilot(bb, tpl.samples, cfg);
    REQUIRE(sync.detected);
    sync = nusmodem::refine_timing(bb, sync, tpl.samples, cfg);
    const std::span<const cplx> training =
        std::span<const cplx>(symbols).first(fmt.n_training);
    return nusmodem::equalize_packet(bb, sync, training, cfg);
  }

  int bit_errors(const EqualizedPacket& eqp) const {
    int errors = 0;
    for (size_t i = 0; i < tx_bits.size(); ++i)
      if (eqp.bits[i] != tx_bits[i]) ++errors;
    return errors;
  }
};

}  // namespace

TEST_CASE("training drives the error to zero on a clean channel") {
  const ModemConfig cfg = tiny_eq_config();
  DecisionFeedbackEqualizer eq(cfg);
  const std::vector<cplx> refs = qpsk_stream(200, 1);
  for (size_t k = 0; k < refs.size(); ++k) {
    const cplx window[1] = {refs[k]};
    const cplx soft = eq.step(window, &refs[k]);
    if (k >= 50) {
      CAPTURE(k);
      REQUIRE(std::abs(soft - refs[k]) < 1e-3);
    }
  }
  // The single feedforward tap carries the whole solution.
  CHECK(std::abs(eq.ff_weights()[0] - cplx{1.0, 0.0}) < 1e-2);
  CHECK(std::abs(eq.fb_weights()[0]) < 1e-2);
  CHECK_FALSE(eq.diverged());
}

TEST_CASE("a pilot-seeded phase estimate absorbs a static rotation") {
  const ModemConfig cfg = tiny_eq_config();
  DecisionFeedbackEqualizer eq(cfg);
  eq.set_theta(0.6);  // what the synchronizer would report
  const cplx rot = std::polar(1.0, 0.6);
  const std::vector<cplx> refs = qpsk_stream(300, 2);
  double tail_err = 0.0;
  for (size_t k = 0; k < refs.size(); ++k) {
    const cplx window[1] = {rot * refs[k]};
    const cplx soft = eq.step(window, &refs[k]);
    if (k >= 200) tail_err = std::max(tail_err, std::abs(soft - refs[k]));
  }
  CHECK(tail_err < 1e-2);
}

TEST_CASE("silence with a zero reference is a fixed point") {
  const ModemConfig cfg = tiny_eq_config();
  DecisionFeedbackEqualizer eq(cfg);
  const cplx zero{0.0, 0.0};
  const double theta_before = eq.theta();
  for (int k = 0; k < 50; ++k) {
    const cplx window[1] = {zero};
    const cplx soft = eq.step(window, &zero);
    CHECK(soft == zero);
  }
  CHECK(eq.theta() == theta_before);
  CHECK(eq.ff_weights()[0] == zero);
  CHECK(eq.fb_weights()[0] == zero);
}

TEST_CASE("post-training decisions are invariant to received gain") {
  const ModemConfig cfg = tiny_eq_config();
  DecisionFeedbackEqualizer quiet(cfg);
  DecisionFeedbackEqualizer loud(cfg);
  const std::vector<cplx> train = qpsk_stream(100, 3);
  for (const cplx& s : train) {
    const cplx wq[1] = {0.1 * s};
    const cplx wl[1] = {10.0 * s};
    quiet.step(wq, &s);
    loud.step(wl, &s);
  }
  const std::vector<cplx> data = qpsk_stream(200, 4);
  int mismatches = 0;
  for (const cplx& s : data) {
    const cplx wq[1] = {0.1 * s};
    const cplx wl[1] = {10.0 * s};
    quiet.step(wq, nullptr);
    loud.step(wl, nullptr);
    if (std::abs(quiet.last_decision() - loud.last_decision()) > 1e-9)
      ++mismatches;
    if (std::abs(quiet.last_decision() - s) > 1e-9) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("an unstable step size trips the divergence flag and halts "
          "adaptation") {
  ModemConfig cfg = tiny_eq_config();
  cfg.eq.adaptation = Adaptation::kNlms;
  cfg.eq.step_size = 50.0;  // far outside the stable range on purpose
  DecisionFeedbackEqualizer eq(cfg);
  const std::vector<cplx> refs = qpsk_stream(40, 5);
  for (size_t k = 0; k < refs.size(); ++k) {
    const cplx window[1] = {refs[k]};
    eq.step(window, &refs[k]);
    if (eq.diverged()) break;
  }
  REQUIRE(eq.diverged());
  const cplx w_ff = eq.ff_weights()[0];
  const cplx w_fb = eq.fb_weights()[0];
  for (size_t k = 0; k < 5; ++k) {
    const cplx window[1] = {refs[k]};
    eq.step(window, &refs[k]);
  }
  CHECK(eq.ff_weights()[0] == w_ff);
  CHECK(eq.fb_weights()[0] == w_fb);
}

TEST_CASE("feedback taps cancel causal intersymbol interference") {
  const ModemConfig cfg = tiny_eq_config();
  DecisionFeedbackEqualizer eq(cfg);
  const std::vector<cplx> refs = qpsk_stream(800, 6);
  double tail_err = 0.0;
  for (size_t k = 0; k < refs.size(); ++k) {
    const cplx prev = k > 0 ? refs[k - 1] : cplx{0.0, 0.0};
    const cplx window[1] = {refs[k] + 0.5 * prev};
    const cplx soft = eq.step(window, &refs[k]);
    if (k >= 600) tail_err = std::max(tail_err, std::abs(soft - refs[k]));
  }
  CHECK(tail_err < 1e-2);
  CHECK(std::abs(eq.ff_weights()[0] - cplx{1.0, 0.0}) < 0.05);
  CHECK(std::abs(eq.fb_weights()[0] - cplx{0.5, 0.0}) < 0.05);
}

TEST_CASE("freezing stops weight motion but keeps decisions flowing") {
  const ModemConfig cfg = tiny_eq_config();
  DecisionFeedbackEqualizer eq(cfg);
  const std::vector<cplx> train = qpsk_stream(100, 7);
  for (const cplx& s : train) {
    const cplx window[1] = {s};
    eq.step(window, &s);
  }
  eq.freeze();
  CHECK(eq.frozen());
  const cplx w_ff = eq.ff_weights()[0];
  const cplx w_fb = eq.fb_weights()[0];
  const std::vector<cplx> data = qpsk_stream(100, 8);
  int errors = 0;
  for (const cplx& s : data) {
    const cplx window[1] = {s};
    eq.step(window, nullptr);
    if (std::abs(eq.last_decision() - s) > 1e-9) ++errors;
  }
  CHECK(errors == 0);
  CHECK(eq.ff_weights()[0] == w_ff);
  CHECK(eq.fb_weights()[0] == w_fb);
}

TEST_CASE("normalized LMS converges on a clean channel") {
  ModemConfig cfg = tiny_eq_config();
  cfg.eq.adaptation = Adaptation::kNlms;
  DecisionFeedbackEqualizer eq(cfg);
  const std::vector<cplx> refs = qpsk_stream(300, 9);
  double tail_err = 0.0;
  for (size_t k = 0; k < refs.size(); ++k) {
    const cplx window[1] = {refs[k]};
    const cplx soft = eq.step(window, &refs[k]);
    if (k >= 200) tail_err = std::max(tail_err, std::abs(soft - refs[k]));
  }
  CHECK(tail_err < 1e-2);
  CHECK_FALSE(eq.diverged());
}

TEST_CASE("step rejects a wrong-size window") {
  const ModemConfig cfg;  // default shape: 29 feedforward taps
  DecisionFeedbackEqualizer eq(cfg);
  std::vector<cplx> window(5, cplx{0.0, 0.0});
  CHECK_THROWS(eq.step(window, nullptr));
}

TEST_CASE("a clean packet decodes without bit errors") {
  const Pipeline p(21);
  const EqualizedPacket eqp = p.decode(p.wave);
  CHECK(eqp.converged);
  CHECK(p.bit_errors(eqp) == 0);
  CHECK(eqp.output_snr_db >= 40.0);
}

TEST_CASE("a rotated baseband decodes through the pilot phase seed") {
  const Pipeline p(22);
  BasebandSignal bb =
      nusmodem::downconvert(p.wave, p.cfg.f_c, p.rrc.taps, p.fmt.sps);
  const cplx rot = std::polar(1.0, -2.0 * std::numbers::pi / 6.0);
  for (auto& s : bb.samples) s *= rot;
  const EqualizedPacket eqp = p.decode_baseband(bb);
  CHECK(eqp.converged);
  CHECK(p.bit_errors(eqp) == 0);
}

TEST_CASE("a strong echo at ten milliseconds is equalized away") {
  const Pipeline p(23);
  ChannelSpec spec;
  spec.rir.taps.assign(481, 0.0);
  spec.rir.taps[0] = 1.0;
  spec.rir.taps[480] = 0.501;  // 6 dB below the direct path
  spec.rir.sample_rate = 48000.0;
  spec.snr_db = 30.0;
  spec.seed = 77;
  spec.measure_begin =
      static_cast<size_t>(p.fmt.pilot_samples + p.fmt.guard_samples);
  spec.measure_len = static_cast<size_t>(p.fmt.data_samples);
  const PassbandWaveform rx = nusmodem::apply_channel(p.wave, spec);
  const EqualizedPacket eqp = p.decode(rx);
  CHECK(eqp.converged);
  CHECK(p.bit_errors(eqp) == 0);
  CHECK(eqp.output_snr_db >= 25.0);
}

TEST_CASE("equalize_packet validates its inputs") {
  const Pipeline p(24);
  const BasebandSignal bb =
      nusmodem::downconvert(p.wave, p.cfg.f_c, p.rrc.taps, p.fmt.sps);
  SyncResult missing;
  missing.detected = false;
  const std::span<const cplx> training =
      std::span<const cplx>(p.symbols).first(p.fmt.n_training);
  CHECK_THROWS(nusmodem::equalize_packet(bb, missing, training, p.cfg));

  const nusmodem::BasebandSignal tpl = nusmodem::pilot_baseband(p.cfg, p.rrc);
  const SyncResult sync = nusmodem::detect_pilot(bb, tpl.samples, p.cfg);
  const std::span<const cplx> short_training =
      std::span<const cplx>(p.symbols).first(10);
  CHECK_THROWS(nusmodem::equalize_packet(bb, sync, short_training, p.cfg));
}

TEST_CASE("output quality estimate behaves across its domain") {
  const std::vector<cplx> hard = qpsk_stream(1000, 10);
  CHECK(nusmodem::estimate_output_snr(hard, hard) == 60.0);

  // Errors of constant magnitude 0.1 against unit symbols: exactly 20 dB.
  std::vector<cplx> soft(hard.size());
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (size_t i = 0; i < hard.size(); ++i)
    soft[i] = hard[i] + std::polar(0.1, phase(rng));
  CHECK(nusmodem::estimate_output_snr(soft, hard) ==
        doctest::Approx(20.0).epsilon(1e-12));

  const std::vector<cplx> few(50, cplx{1.0, 0.0});
  CHECK_THROWS(nusmodem::estimate_output_snr(few, few));
  const std::vector<cplx> a(200, cplx{1.0, 0.0});
  const std::vector<cplx> b(300, cplx{1.0, 0.0});
  CHECK_THROWS(nusmodem::estimate_output_snr(a, b));
}
