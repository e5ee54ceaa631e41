// src/tx.cc
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

#include "nusmodem/tx.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nusmodem/constellation.h"
#include "nusmodem/dsp.h"
#include "nusmodem/frank.h"

namespace nusmodem {

double data_rate(const ModemConfig& cfg) {
  return cfg.f_b * bits_per_symbol(cfg.M);
}

std::vector<cplx> packet_symbols(const Packet& packet,
                                 const ModemConfig& cfg) {
  BitVector bits = packet.payload;
  bits.insert(bits.end(), packet.crc.begin(), packet.crc.end());
  const std::vector<int> indices = group_bits(bits, cfg.M);
  const Constellation con(cfg.M);
  std::vector<cplx> symbols(indices.size());
  for (size_t i = 0; i < indices.size(); ++i) symbols[i] = con.map(indices[i]);
  return symbols;
}

BasebandSignal pilot_baseband(const ModemConfig& cfg, const FilterTaps& rrc) {
  const std::vector<cplx> chips = frank_sequence(cfg.frank_order);
  BasebandSignal bb = shape_symbols(chips, rrc, cfg.sps());
  bb.sample_rate = cfg.f_s;
  return bb;
}

PassbandWaveform build_packet_waveform(const Packet& packet,
                                       const ModemConfig& cfg) {
  cfg.validate();
  const PacketFormat fmt = PacketFormat::from(cfg);
  const FilterTaps rrc = design_rrc(cfg.beta, fmt.sps, cfg.rrc_span);

  const BasebandSignal pilot = pilot_baseband(cfg, rrc);
  const std::vector<cplx> symbols = packet_symbols(packet, cfg);
  const BasebandSignal data = shape_symbols(symbols, rrc, fmt.sps);

  // One continuous carrier across the whole packet.  Upconverting segments
  // separately would give the data block a placement-dependent phase origin
  // and the receiver's pilot-based phase estimate would no longer apply.
  std::vector<cplx> bb;
  bb.reserve(fmt.total_samples);
  bb.insert(bb.end(), pilot.samples.begin(), pilot.samples.end());
  bb.insert(bb.end(), fmt.guard_samples, cplx{0.0, 0.0});
  bb.insert(bb.end(), data.samples.begin(), data.samples.end());

  PassbandWaveform wave =
      upconvert(BasebandSignal{std::move(bb), cfg.f_s, fmt.sps}, cfg.f_c);

  double peak = 0.0;
  for (double v : wave.samples) peak = std::max(peak, std::abs(v));
  if (peak <= 0.0) throw std::runtime_error("tx: silent waveform");
  const double scale = cfg.tx_amplitude / peak;
  for (double& v : wave.samples) v *= scale;
  return wave;
}

}  // namespace nusmodem
