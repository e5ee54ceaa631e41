// src/sim.cc
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

#include "nusmodem/sim.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "nusmodem/dsp.h"
#include "nusmodem/eq.h"
#include "nusmodem/sync.h"
#include "nusmodem/tx.h"

namespace nusmodem {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t split_seed(uint64_t base, uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

BitVector random_payload(const ModemConfig& cfg, uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitVector bits(cfg.payload_bits);
  for (auto& b : bits) b = static_cast<uint8_t>(rng() & 1u);
  return bits;
}

double band_lo(const ModemConfig& cfg) {
  return cfg.f_c - cfg.f_b * (1.0 + cfg.beta) / 2.0;
}

double band_hi(const ModemConfig& cfg) {
  return cfg.f_c + cfg.f_b * (1.0 + cfg.beta) / 2.0;
}

TrialResult run_trial(const LinkSpec& link, uint64_t seed) {
  const ModemConfig& cfg = link.cfg;
  cfg.validate();
  const PacketFormat fmt = PacketFormat::from(cfg);

  const BitVector payload = random_payload(cfg, split_seed(seed, 1));
  const Packet packet = build_payload(payload);
  const PassbandWaveform wave = build_packet_waveform(packet, cfg);

  ChannelSpec ch;
  ch.rir = link.rir;
  ch.snr_db = link.snr_db;
  ch.cfo_hz = link.cfo_hz;
  ch.seed = split_seed(seed, 2);
  ch.band_lo = band_lo(cfg);
  ch.band_hi = band_hi(cfg);
  ch.measure_begin = static_cast<size_t>(fmt.pilot_samples) +
                     static_cast<size_t>(fmt.guard_samples);
  ch.measure_len = static_cast<size_t>(fmt.data_samples);
  const PassbandWaveform rx = apply_channel(wave, ch);

  const FilterTaps rrc = design_rrc(cfg.beta, fmt.sps, cfg.rrc_span);
  const BasebandSignal bb = downconvert(rx, cfg.f_c, rrc.taps, fmt.sps);
  const BasebandSignal tpl = pilot_baseband(cfg, rrc);

  TrialResult r;
  SyncResult sync = detect_pilot(bb, tpl.samples, cfg);
  r.peak_metric = sync.peak_metric;
  if (!sync.detected) return r;
  sync = refine_timing(bb, sync, tpl.samples, cfg);
  r.sync_ok = true;

  int true_start = fmt.first_symbol_center;
  if (!link.rir.taps.empty()) {
    // The sync reference point moves with the dominant channel path.
    size_t peak_tap = 0;
    for (size_t i = 1; i < link.rir.taps.size(); ++i)
      if (std::abs(link.rir.taps[i]) > std::abs(link.rir.taps[peak_tap]))
        peak_tap = i;
    true_start += static_cast<int>(peak_tap);
  }
  r.timing_error = sync.data_start_index - true_start;

  const std::vector<cplx> symbols = packet_symbols(packet, cfg);
  const std::span<const cplx> training =
      std::span<const cplx>(symbols).first(fmt.n_training);
  const EqualizedPacket eqp = equalize_packet(bb, sync, training, cfg);

  r.converged = eqp.converged;
  r.output_snr_db = eqp.output_snr_db;

  BitVector tx_bits = packet.payload;
  tx_bits.insert(tx_bits.end(), packet.crc.begin(), packet.crc.end());
  r.bits_all = static_cast<int>(tx_bits.size());
  const int dd_first_bit = fmt.n_training * fmt.bits_per_symbol;
  r.bits_dd = r.bits_all - dd_first_bit;
  for (int i = 0; i < r.bits_all; ++i) {
    if (eqp.bits[i] != tx_bits[i]) {
      ++r.errors_all;
      if (i >= dd_first_bit) ++r.errors_dd;
    }
  }
  r.crc_ok = verify_payload(Packet{
      BitVector(eqp.bits.begin(), eqp.bits.begin() + cfg.payload_bits),
      BitVector(eqp.bits.begin() + cfg.payload_bits, eqp.bits.end())});
  return r;
}

std::vector<SweepPoint> run_sweep(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("run_sweep: trials < 1");
  spec.link.cfg.validate();
  std::vector<SweepPoint> points;
  points.reserve(spec.snr_db_points.size());

  for (size_t p = 0; p < spec.snr_db_points.size(); ++p) {
    const uint64_t point_seed = split_seed(spec.master_seed, p);
    LinkSpec link = spec.link;
    link.snr_db = spec.snr_db_points[p];

    std::vector<TrialResult> trials(spec.trials);
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < spec.trials; ++t) {
      try {
        trials[t] = run_trial(link, split_seed(point_seed, t));
      } catch (const std::exception&) {
        trials[t] = TrialResult{};  // counted below as a sync failure
      }
    }

    SweepPoint pt;
    pt.snr_db = link.snr_db;
    pt.trials = spec.trials;
    pt.ber_ref = qpsk_ber_awgn(link.snr_db, link.cfg.beta);
    double snr_acc = 0.0;
    int snr_count = 0;
    for (const TrialResult& tr : trials) {
      if (!tr.sync_ok) {
        ++pt.sync_failures;
        continue;
      }
      if (!tr.converged) ++pt.divergences;
      if (!tr.crc_ok) ++pt.crc_failures;
      pt.bits_all += tr.bits_all;
      pt.errors_all += tr.errors_all;
      pt.bits_dd += tr.bits_dd;
      pt.errors_dd += tr.errors_dd;
      snr_acc += tr.output_snr_db;
      ++snr_count;
    }
    pt.mean_output_snr_db = snr_count > 0 ? snr_acc / snr_count : 0.0;
    points.push_back(pt);
  }
  return points;
}

void write_csv(const std::string& path, const SweepSpec& spec,
               const std::vector<SweepPoint>& points) {
  FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_csv: cannot open '" + path + "'");
  const ModemConfig& c = spec.link.cfg;
  std::fprintf(f, "# nusmodem sweep v1\n");
  std::fprintf(f,
               "# config: f_c=%g f_b=%g f_s=%g beta=%g M=%d rrc_span=%d "
               "frank_order=%d guard_seconds=%g training_fraction=%g "
               "tx_amplitude=%g payload_bits=%d\n",
               c.f_c, c.f_b, c.f_s, c.beta, c.M, c.rrc_span, c.frank_order,
               c.guard_seconds, c.training_fraction, c.tx_amplitude,
               c.payload_bits);
  std::fprintf(f,
               "# equalizer: ff_noncausal=%d ff_causal=%d fb_taps=%d "
               "ff_spacing=%d adaptation=%s forgetting_factor=%g "
               "step_size=%g pll_kp=%g pll_ki=%g freeze_after_training=%d\n",
               c.eq.ff_noncausal, c.eq.ff_causal, c.eq.fb_taps,
               c.eq.ff_spacing,
               c.eq.adaptation == Adaptation::kRls ? "rls" : "nlms",
               c.eq.forgetting_factor, c.eq.step_size, c.eq.pll_kp,
               c.eq.pll_ki, c.eq.freeze_after_training ? 1 : 0);
  std::fprintf(f, "# channel: rir=%s cfo_hz=%g\n",
               spec.link.rir.taps.empty() ? "identity"
                                          : spec.link.rir.meta.c_str(),
               spec.link.cfo_hz);
  std::fprintf(f, "# master_seed=%llu trials=%d\n",
               static_cast<unsigned long long>(spec.master_seed), spec.trials);
  std::fprintf(f,
               "snr_db,trials,total_bits,bit_errors,ber,dd_bits,dd_errors,"
               "dd_ber,ber_ref,mean_output_snr_db,sync_failures,crc_failures,"
               "divergences\n");
  for (const SweepPoint& p : points) {
    const double ber =
        p.bits_all > 0 ? static_cast<double>(p.errors_all) / p.bits_all : 0.0;
    const double dd_ber =
        p.bits_dd > 0 ? static_cast<double>(p.errors_dd) / p.bits_dd : 0.0;
    std::fprintf(f, "%.6g,%d,%lld,%lld,%.8e,%lld,%lld,%.8e,%.8e,%.4f,%d,%d,%d\n",
                 p.snr_db, p.trials, p.bits_all, p.errors_all, ber, p.bits_dd,
                 p.errors_dd, dd_ber, p.ber_ref, p.mean_output_snr_db,
                 p.sync_failures, p.crc_failures, p.divergences);
  }
  std::fclose(f);
}

double qpsk_ber_awgn(double snr_db, double beta) {
  const double snr = std::pow(10.0, snr_db / 10.0);
  const double ebn0 = snr * (1.0 + beta) / 2.0;
  return 0.5 * std::erfc(std::sqrt(ebn0));
}

}  // namespace nusmodem
