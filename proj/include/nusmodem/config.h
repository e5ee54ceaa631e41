// nusmodem/config.h
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

#ifndef NUSMODEM_CONFIG_H_
#define NUSMODEM_CONFIG_H_

#include <string>

namespace nusmodem {

enum class Adaptation { kRls, kNlms };

// Equalizer shape and adaptation parameters.  Tap counts are filter lengths;
// ff_spacing is the distance between adjacent feedforward taps in full-rate
// samples (half a symbol by default, i.e. a fractionally spaced filter).
struct EqualizerConfig {
  int ff_noncausal = 8;
  int ff_causal = 20;
  int fb_taps = 80;
  int ff_spacing = 12;
  Adaptation adaptation = Adaptation::kRls;
  double forgetting_factor = 0.9999;
  double step_size = 0.5;
  double pll_kp = 1e-2;
  double pll_ki = 1e-4;
  // Stop weight adaptation once the training prefix has been consumed.
  // Off by default: static channels gain nothing from it, but a receiver
  // tuned for a known-clean link can use it to avoid decision noise.
  bool freeze_after_training = false;

  int ff_len() const { return ff_noncausal + ff_causal + 1; }
};

// Every knob of the signal chain.  Defaults describe the 19 kHz / 2 kbaud
// QPSK link the project is built around.
struct ModemConfig {
  double f_c = 19000.0;  // carrier, Hz
  double f_b = 2000.0;   // symbol rate, symbols/s
  double f_s = 48000.0;  // sample rate, Hz
  double beta = 0.3;     // RRC roll-off
  int M = 4;             // constellation order
  int rrc_span = 12;     // RRC filter span, symbols (even)
  int frank_order = 16;  // pilot is order^2 chips
  double guard_seconds = 0.3;
  double training_fraction = 0.3;
  double tx_amplitude = 0.9;
  int payload_bits = 5120;
  EqualizerConfig eq;

  int sps() const { return static_cast<int>(f_s / f_b); }

  // Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

// Frame layout derived from a validated config.  All offsets are full-rate
// sample indices into the packet waveform.
struct PacketFormat {
  int sps = 0;
  int ntaps = 0;            // RRC filter length
  int bits_per_symbol = 0;
  int total_bits = 0;       // payload + CRC + pad
  int pad_bits = 0;
  int n_symbols = 0;
  int n_training = 0;       // floor(training_fraction * n_symbols)
  int pilot_chips = 0;
  int pilot_samples = 0;    // shaped pilot segment length
  int guard_samples = 0;
  int data_samples = 0;     // shaped data segment length
  int first_symbol_center = 0;  // center of data symbol 0 in the waveform
  int total_samples = 0;

  static PacketFormat from(const ModemConfig& cfg);
};

// Flat key=value file, '#' comments, unknown keys rejected.  Keys match the
// struct field names (see README for the schema).  Returns a validated
// config; file errors and violations throw std::invalid_argument.
ModemConfig load_config(const std::string& path);

// Applies one key=value assignment to cfg (shared by load_config and CLI
// overrides).  Throws on unknown key or unparseable value.
void apply_config_key(ModemConfig& cfg, const std::string& key,
                      const std::string& value);

}  // namespace nusmodem

#endif  // NUSMODEM_CONFIG_H_
