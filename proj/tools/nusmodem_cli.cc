// tools/nusmodem_cli.cc
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
// Command-line front end: tx / rx / sweep / rir-gen.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 no packet
// detected, 4 CRC failure, 5 equalizer divergence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nusmodem/bits.h"
#include "nusmodem/channel.h"
#include "nusmodem/config.h"
#include "nusmodem/dsp.h"
#include "nusmodem/eq.h"
#include "nusmodem/sim.h"
#include "nusmodem/sync.h"
#include "nusmodem/tx.h"
#include "nusmodem/wav.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNoDetect = 3;
constexpr int kExitCrc = 4;
constexpr int kExitDiverged = 5;

nusmodem::ModemConfig make_config(const std::string& config_path,
                                  const std::vector<std::string>& overrides) {
  nusmodem::ModemConfig cfg;
  if (!config_path.empty()) cfg = nusmodem::load_config(config_path);
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: override needs key=value: " + kv);
    nusmodem::apply_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

nusmodem::BitVector payload_from_flags(const nusmodem::ModemConfig& cfg,
                                       const std::string& text,
                                       const std::string& hex,
                                       uint64_t seed) {
  if (!text.empty() && !hex.empty())
    throw std::invalid_argument("config: --payload and --payload-hex clash");
  if (!text.empty()) {
    return nusmodem::bits_from_bytes(
        reinterpret_cast<const uint8_t*>(text.data()), text.size());
  }
  if (!hex.empty()) return nusmodem::bits_from_hex(hex);
  return nusmodem::random_payload(cfg, nusmodem::split_seed(seed, 1));
}

std::string to_hex(const std::vector<uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

int cmd_tx(const nusmodem::ModemConfig& base, const std::string& out,
           const std::string& payload_text, const std::string& payload_hex,
           uint64_t seed) {
  nusmodem::ModemConfig cfg = base;
  const nusmodem::BitVector payload =
      payload_from_flags(cfg, payload_text, payload_hex, seed);
  if (payload.empty()) throw std::invalid_argument("config: empty payload");
  cfg.payload_bits = static_cast<int>(payload.size());
  cfg.validate();

  const nusmodem::Packet packet = nusmodem::build_payload(payload);
  const nusmodem::PassbandWaveform wave =
      nusmodem::build_packet_waveform(packet, cfg);
  nusmodem::write_wav(out, wave);

  const nusmodem::PacketFormat fmt = nusmodem::PacketFormat::from(cfg);
  std::printf("wrote %s: %zu samples, %.3f s\n", out.c_str(),
              wave.samples.size(), wave.samples.size() / cfg.f_s);
  std::printf("packet: %d payload bits + 32 crc, %d symbols, rate %.0f bits/s\n",
              cfg.payload_bits, fmt.n_symbols, nusmodem::data_rate(cfg));
  return 0;
}

int cmd_rx(const nusmodem::ModemConfig& base, const std::string& in,
           const std::string& train_hex, uint64_t train_seed,
           bool have_seed, const std::string& out) {
  nusmodem::ModemConfig cfg = base;
  nusmodem::BitVector ref_payload;
  if (!train_hex.empty()) {
    ref_payload = nusmodem::bits_from_hex(train_hex);
  } else if (have_seed) {
    ref_payload =
        nusmodem::random_payload(cfg, nusmodem::split_seed(train_seed, 1));
  } else {
    throw std::invalid_argument(
        "config: rx needs --train-seed or --train-hex (training reference)");
  }
  cfg.payload_bits = static_cast<int>(ref_payload.size());
  cfg.validate();
  const nusmodem::PacketFormat fmt = nusmodem::PacketFormat::from(cfg);

  const nusmodem::PassbandWaveform wave = nusmodem::read_wav(in);
  if (wave.sample_rate != cfg.f_s)
    throw std::invalid_argument("config: file rate " +
                                std::to_string(wave.sample_rate) +
                                " != f_s " + std::to_string(cfg.f_s));

  const nusmodem::FilterTaps rrc =
      nusmodem::design_rrc(cfg.beta, fmt.sps, cfg.rrc_span);
  const nusmodem::BasebandSignal bb =
      nusmodem::downconvert(wave, cfg.f_c, rrc.taps, fmt.sps);
  const nusmodem::BasebandSignal tpl = nusmodem::pilot_baseband(cfg, rrc);

  nusmodem::SyncResult sync = nusmodem::detect_pilot(bb, tpl.samples, cfg);
  if (!sync.detected) {
    std::fprintf(stderr, "no packet detected (peak metric %.3f)\n",
                 sync.peak_metric);
    return kExitNoDetect;
  }
  sync = nusmodem::refine_timing(bb, sync, tpl.samples, cfg);
  std::printf("pilot at sample %d, metric %.3f\n", sync.peak_index,
              sync.peak_metric);

  const nusmodem::Packet ref_packet = nusmodem::build_payload(ref_payload);
  const std::vector<nusmodem::cplx> ref_symbols =
      nusmodem::packet_symbols(ref_packet, cfg);
  const std::span<const nusmodem::cplx> training =
      std::span<const nusmodem::cplx>(ref_symbols).first(fmt.n_training);

  const nusmodem::EqualizedPacket eqp =
      nusmodem::equalize_packet(bb, sync, training, cfg);
  if (!eqp.converged) {
    std::fprintf(stderr, "equalizer diverged\n");
    return kExitDiverged;
  }
  std::printf("output snr: %.1f dB\n", eqp.output_snr_db);

  nusmodem::BitVector ref_bits = ref_packet.payload;
  ref_bits.insert(ref_bits.end(), ref_packet.crc.begin(),
                  ref_packet.crc.end());
  int errors = 0;
  for (size_t i = 0; i < ref_bits.size(); ++i)
    if (eqp.bits[i] != ref_bits[i]) ++errors;
  std::printf("ber vs reference: %d / %zu = %.3e\n", errors, ref_bits.size(),
              static_cast<double>(errors) / ref_bits.size());

  const nusmodem::BitVector payload_bits(
      eqp.bits.begin(), eqp.bits.begin() + cfg.payload_bits);
  const nusmodem::BitVector crc_bits(eqp.bits.begin() + cfg.payload_bits,
                                     eqp.bits.end());
  if (!nusmodem::verify_payload(nusmodem::Packet{payload_bits, crc_bits})) {
    std::fprintf(stderr, "crc failed\n");
    return kExitCrc;
  }
  std::printf("crc ok\n");
  if (!out.empty()) {
    const std::vector<uint8_t> bytes = nusmodem::bytes_from_bits(payload_bits);
    FILE* f = std::fopen(out.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open " + out);
    std::fwrite(bytes.data(), 1, bytes.size(), f);
    std::fclose(f);
    std::printf("payload written to %s\n", out.c_str());
  } else {
    std::printf("payload: %s\n",
                to_hex(nusmodem::bytes_from_bits(payload_bits)).c_str());
  }
  return 0;
}

int cmd_sweep(const nusmodem::ModemConfig& cfg, const std::string& out,
              const std::vector<double>& snrs, int trials, uint64_t seed,
              const std::string& rir_path, double cfo_hz) {
  nusmodem::SweepSpec spec;
  spec.link.cfg = cfg;
  spec.link.cfo_hz = cfo_hz;
  if (!rir_path.empty())
    spec.link.rir = nusmodem::load_rir(rir_path, cfg.f_s);
  spec.snr_db_points = snrs;
  spec.trials = trials;
  spec.master_seed = seed;

  const std::vector<nusmodem::SweepPoint> points = nusmodem::run_sweep(spec);
  nusmodem::write_csv(out, spec, points);
  std::printf("%8s %10s %12s %10s %12s\n", "snr_db", "ber", "dd_ber",
              "ber_ref", "out_snr_db");
  for (const nusmodem::SweepPoint& p : points) {
    const double ber =
        p.bits_all > 0 ? static_cast<double>(p.errors_all) / p.bits_all : 0.0;
    const double dd =
        p.bits_dd > 0 ? static_cast<double>(p.errors_dd) / p.bits_dd : 0.0;
    std::printf("%8.2f %10.3e %12.3e %10.3e %12.1f\n", p.snr_db, ber, dd,
                p.ber_ref, p.mean_output_snr_db);
  }
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_rir_gen(const std::string& out, std::vector<double> room,
                std::vector<double> src, std::vector<double> mic,
                double absorption, int max_order, double f_s) {
  const nusmodem::RoomImpulseResponse rir = nusmodem::image_source_rir(
      {room[0], room[1], room[2]}, {src[0], src[1], src[2]},
      {mic[0], mic[1], mic[2]}, absorption, max_order, f_s);

  nusmodem::PassbandWaveform wave;
  wave.sample_rate = f_s;
  wave.samples = rir.taps;
  double peak = 0.0;
  for (double t : wave.samples) peak = std::max(peak, std::abs(t));
  for (double& t : wave.samples) t /= peak;
  nusmodem::write_wav(out, wave);

  std::printf("wrote %s: %zu taps, rt60 %.3f s\n", out.c_str(),
              rir.taps.size(), nusmodem::rt60_schroeder(rir));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"near-ultrasonic acoustic modem"};
  app.require_subcommand(1);

  std::string config_path, out, in, payload_text, payload_hex, train_hex;
  std::string rir_path;
  std::vector<std::string> overrides;
  uint64_t seed = 1;
  double cfo_hz = 0.0;
  int trials = 100;
  std::vector<double> snrs;

  auto* tx = app.add_subcommand("tx", "build a packet waveform file");
  tx->add_option("--config", config_path, "config file");
  tx->add_option("--set", overrides, "key=value config override");
  tx->add_option("--out", out, "output waveform file")->required();
  tx->add_option("--payload", payload_text, "payload as ASCII text");
  tx->add_option("--payload-hex", payload_hex, "payload as hex bytes");
  tx->add_option("--seed", seed, "seed for a random payload");

  auto* rx = app.add_subcommand("rx", "decode a packet waveform file");
  rx->add_option("--config", config_path, "config file");
  rx->add_option("--set", overrides, "key=value config override");
  rx->add_option("--in", in, "input waveform file")->required();
  auto* train_seed_opt =
      rx->add_option("--train-seed", seed, "seed the transmitter used");
  rx->add_option("--train-hex", train_hex, "known payload as hex");
  rx->add_option("--out", out, "write decoded payload bytes here");

  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo BER sweep");
  sweep->add_option("--config", config_path, "config file");
  sweep->add_option("--set", overrides, "key=value config override");
  sweep->add_option("--snr", snrs, "in-band SNR points, dB")
      ->required()
      ->delimiter(',');
  sweep->add_option("--trials", trials, "packets per point");
  sweep->add_option("--seed", seed, "master seed");
  sweep->add_option("--rir", rir_path, "room impulse response file");
  sweep->add_option("--cfo", cfo_hz, "carrier frequency offset, Hz");
  sweep->add_option("--out", out, "output CSV")->required();

  auto* rir_gen = app.add_subcommand("rir-gen", "image-source room response");
  std::vector<double> room{5.0, 4.0, 3.0};
  std::vector<double> src{2.35, 1.90, 1.15};
  std::vector<double> mic{2.655, 2.10, 1.25};
  double absorption = 0.14;
  int max_order = 26;
  double f_s = 48000.0;
  rir_gen->add_option("--room", room, "room dimensions, m")
      ->delimiter(',')->expected(3);
  rir_gen->add_option("--src", src, "source position, m")
      ->delimiter(',')->expected(3);
  rir_gen->add_option("--mic", mic, "microphone position, m")
      ->delimiter(',')->expected(3);
  rir_gen->add_option("--absorption", absorption, "wall absorption (0,1]");
  rir_gen->add_option("--max-order", max_order, "max reflection order");
  rir_gen->add_option("--fs", f_s, "sample rate, Hz");
  rir_gen->add_option("--out", out, "output waveform file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tx) {
      return cmd_tx(make_config(config_path, overrides), out, payload_text,
                    payload_hex, seed);
    }
    if (*rx) {
      return cmd_rx(make_config(config_path, overrides), in, train_hex, seed,
                    train_seed_opt->count() > 0, out);
    }
    if (*sweep) {
      return cmd_sweep(make_config(config_path, overrides), out, snrs, trials,
                       seed, rir_path, cfo_hz);
    }
    if (*rir_gen) {
      return cmd_rir_gen(out, room, src, mic, absorption, max_order, f_s);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
