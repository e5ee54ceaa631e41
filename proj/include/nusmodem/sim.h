// nusmodem/sim.h
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

#ifndef NUSMODEM_SIM_H_
#define NUSMODEM_SIM_H_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nusmodem/bits.h"
#include "nusmodem/channel.h"
#include "nusmodem/config.h"

namespace nusmodem {

// Deterministic seed derivation (splitmix64 mixing).  Every random stream in
// a sweep gets its seed through this: master -> point -> trial -> role.
uint64_t split_seed(uint64_t base, uint64_t index);

// Seeded random payload of cfg.payload_bits bits.
BitVector random_payload(const ModemConfig& cfg, uint64_t seed);

// Occupied band of the configured signal, for in-band SNR definitions.
double band_lo(const ModemConfig& cfg);
double band_hi(const ModemConfig& cfg);

// One simulated link: identity channel unless an RIR is set.
struct LinkSpec {
  ModemConfig cfg;
  RoomImpulseResponse rir;
  double snr_db = std::numeric_limits<double>::infinity();
  double cfo_hz = 0.0;
};

struct TrialResult {
  bool sync_ok = false;
  bool crc_ok = false;
  bool converged = false;
  int bits_all = 0;        // payload + CRC bits compared
  int errors_all = 0;
  int bits_dd = 0;         // bits carried by decision-directed symbols
  int errors_dd = 0;
  double output_snr_db = 0.0;
  int timing_error = 0;    // estimated minus true data start, samples
  double peak_metric = 0.0;
};

// Full end-to-end packet: seeded payload, transmit, channel, downconvert,
// detect, refine, equalize, compare.  The trial seed derives the payload
// stream (role 1) and the noise stream (role 2).
TrialResult run_trial(const LinkSpec& link, uint64_t seed);

struct SweepPoint {
  double snr_db = 0.0;
  int trials = 0;
  long long bits_all = 0;
  long long errors_all = 0;
  long long bits_dd = 0;
  long long errors_dd = 0;
  int sync_failures = 0;
  int crc_failures = 0;
  int divergences = 0;
  double mean_output_snr_db = 0.0;
  double ber_ref = 0.0;    // analytic QPSK reference at this SNR
};

struct SweepSpec {
  LinkSpec link;           // snr_db is overridden per point
  std::vector<double> snr_db_points;
  int trials = 100;
  uint64_t master_seed = 1;
};

// Monte-Carlo BER sweep.  Trials run independently (in parallel when OpenMP
// threads are available) and are reduced in trial order, so the report does
// not depend on the thread count.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec);

// Fixed, versioned CSV layout; see README for the column list.  Identical
// spec (including master_seed) produces a byte-identical file.
void write_csv(const std::string& path, const SweepSpec& spec,
               const std::vector<SweepPoint>& points);

// Analytic QPSK bit error rate on AWGN against in-band SNR:
// Eb/N0 = snr * (1+beta)/2, BER = Q(sqrt(2 Eb/N0)).
double qpsk_ber_awgn(double snr_db, double beta);

}  // namespace nusmodem

#endif  // NUSMODEM_SIM_H_
