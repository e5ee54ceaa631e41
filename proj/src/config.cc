// src/config.cc
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

#include "nusmodem/config.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nusmodem/bits.h"

namespace nusmodem {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("config: " + what);
}

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

double parse_double(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    fail(key + ": not a number: '" + value + "'");
  }
  if (pos != value.size()) fail(key + ": trailing junk in '" + value + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v != std::floor(v)) fail(key + ": expected an integer, got " + value);
  return static_cast<int>(v);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void ModemConfig::validate() const {
  if (f_b <= 0.0) fail("f_b must be positive");
  if (f_s < 2.0 * f_b * (1.0 + beta)) {
    fail("f_s must be >= 2*f_b*(1+beta): " + std::to_string(f_s) + " < " +
         std::to_string(2.0 * f_b * (1.0 + beta)));
  }
  if (std::fmod(f_s, f_b) != 0.0)
    fail("f_s must be an integer multiple of f_b");
  if (f_c <= 0.0) fail("f_c must be positive");
  if (f_c + f_b * (1.0 + beta) / 2.0 > f_s / 2.0)
    fail("occupied band exceeds f_s/2 (carrier too high)");
  if (f_c - f_b * (1.0 + beta) / 2.0 <= 0.0)
    fail("occupied band crosses 0 Hz (carrier too low)");
  if (beta <= 0.0 || beta > 1.0) fail("beta must be in (0,1]");
  if (!is_power_of_two(M)) fail("M must be a power of 2");
  switch (M) {
    case 2: case 4: case 16: case 64: case 256: case 1024: break;
    default: fail("M must be one of 2,4,16,64,256,1024");
  }
  if (rrc_span < 4 || rrc_span % 2 != 0) fail("rrc_span must be even and >= 4");
  if (frank_order < 1) fail("frank_order must be >= 1");
  if (guard_seconds < 0.0) fail("guard_seconds must be >= 0");
  if (training_fraction <= 0.0 || training_fraction >= 1.0)
    fail("training_fraction must be in (0,1)");
  if (tx_amplitude <= 0.0 || tx_amplitude > 1.0)
    fail("tx_amplitude must be in (0,1]");
  if (payload_bits < 0 ||
      static_cast<size_t>(payload_bits) > kDefaultMaxPayloadBits)
    fail("payload_bits out of range");
  if (eq.ff_noncausal < 0 || eq.ff_causal < 0)
    fail("feedforward tap counts must be >= 0");
  if (eq.fb_taps < 1) fail("fb_taps must be >= 1");
  if (eq.ff_spacing < 1 || eq.ff_spacing > sps())
    fail("ff_spacing must be in [1, sps]");
  if (eq.forgetting_factor <= 0.9 || eq.forgetting_factor > 1.0)
    fail("forgetting_factor must be in (0.9,1]");
  if (eq.step_size <= 0.0) fail("step_size must be positive");
  if (eq.pll_kp < 0.0 || eq.pll_ki < 0.0) fail("pll gains must be >= 0");
}

PacketFormat PacketFormat::from(const ModemConfig& cfg) {
  cfg.validate();
  PacketFormat f;
  f.sps = cfg.sps();
  f.ntaps = cfg.rrc_span * f.sps + 1;
  f.bits_per_symbol = nusmodem::bits_per_symbol(cfg.M);
  const int raw_bits = cfg.payload_bits + 32;
  f.pad_bits = (f.bits_per_symbol - raw_bits % f.bits_per_symbol) %
               f.bits_per_symbol;
  f.total_bits = raw_bits + f.pad_bits;
  f.n_symbols = f.total_bits / f.bits_per_symbol;
  f.n_training = static_cast<int>(cfg.training_fraction * f.n_symbols);
  f.pilot_chips = cfg.frank_order * cfg.frank_order;
  f.pilot_samples = (f.pilot_chips - 1) * f.sps + f.ntaps;
  f.guard_samples = static_cast<int>(std::lround(cfg.guard_seconds * cfg.f_s));
  f.data_samples = (f.n_symbols - 1) * f.sps + f.ntaps;
  f.first_symbol_center =
      f.pilot_samples + f.guard_samples + (f.ntaps - 1) / 2;
  f.total_samples = f.pilot_samples + f.guard_samples + f.data_samples;
  return f;
}

void apply_config_key(ModemConfig& cfg, const std::string& key,
                      const std::string& value) {
  if (key == "f_c") cfg.f_c = parse_double(key, value);
  else if (key == "f_b") cfg.f_b = parse_double(key, value);
  else if (key == "f_s") cfg.f_s = parse_double(key, value);
  else if (key == "beta") cfg.beta = parse_double(key, value);
  else if (key == "M") cfg.M = parse_int(key, value);
  else if (key == "rrc_span") cfg.rrc_span = parse_int(key, value);
  else if (key == "frank_order") cfg.frank_order = parse_int(key, value);
  else if (key == "guard_seconds") cfg.guard_seconds = parse_double(key, value);
  else if (key == "training_fraction")
    cfg.training_fraction = parse_double(key, value);
  else if (key == "tx_amplitude") cfg.tx_amplitude = parse_double(key, value);
  else if (key == "payload_bits") cfg.payload_bits = parse_int(key, value);
  else if (key == "ff_noncausal") cfg.eq.ff_noncausal = parse_int(key, value);
  else if (key == "ff_causal") cfg.eq.ff_causal = parse_int(key, value);
  else if (key == "fb_taps") cfg.eq.fb_taps = parse_int(key, value);
  else if (key == "ff_spacing") cfg.eq.ff_spacing = parse_int(key, value);
  else if (key == "adaptation") {
    if (value == "rls") cfg.eq.adaptation = Adaptation::kRls;
    else if (value == "nlms") cfg.eq.adaptation = Adaptation::kNlms;
    else fail("adaptation must be 'rls' or 'nlms', got '" + value + "'");
  } else if (key == "forgetting_factor")
    cfg.eq.forgetting_factor = parse_double(key, value);
  else if (key == "step_size") cfg.eq.step_size = parse_double(key, value);
  else if (key == "pll_kp") cfg.eq.pll_kp = parse_double(key, value);
  else if (key == "pll_ki") cfg.eq.pll_ki = parse_double(key, value);
  else if (key == "freeze_after_training")
    cfg.eq.freeze_after_training = parse_int(key, value) != 0;
  else fail("unknown key '" + key + "'");
}

ModemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  ModemConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq_pos = line.find('=');
    if (eq_pos == std::string::npos)
      fail(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq_pos));
    const std::string value = trim(line.substr(eq_pos + 1));
    if (key.empty() || value.empty())
      fail(path + ":" + std::to_string(lineno) + ": empty key or value");
    apply_config_key(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

}  // namespace nusmodem
