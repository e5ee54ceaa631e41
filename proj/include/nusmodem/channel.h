// nusmodem/channel.h
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

#ifndef NUSMODEM_CHANNEL_H_
#define NUSMODEM_CHANNEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nusmodem/signal.h"

namespace nusmodem {

struct RoomImpulseResponse {
  std::vector<double> taps;
  double sample_rate = 0.0;
  std::string meta;
};

// Simulated link conditions.  An empty RIR means an identity channel;
// snr_db = +inf disables noise.  SNR is defined in-band: the noise variance
// is set so that signal and noise power compare over [band_lo, band_hi]
// only.  Signal power is measured over [measure_begin, measure_begin +
// measure_len) of the convolved stream (whole stream when measure_len = 0);
// callers that know the frame layout pass the data segment so guard silence
// does not skew the calibration.
struct ChannelSpec {
  RoomImpulseResponse rir;
  double snr_db = std::numeric_limits<double>::infinity();
  double cfo_hz = 0.0;
  uint64_t seed = 0;
  double band_lo = 17700.0;
  double band_hi = 20300.0;
  size_t measure_begin = 0;
  size_t measure_len = 0;
};

// RIR convolution, then carrier drift as a rotation of the analytic signal,
// then calibrated AWGN.  Deterministic for a fixed seed; the seed feeds the
// noise generator only.  Output length grows by rir length - 1.
PassbandWaveform apply_channel(const PassbandWaveform& tx,
                               const ChannelSpec& spec);

// Shoebox image-source model, speed of sound 343 m/s.  Each image source of
// reflection order k contributes an impulse of amplitude (1-absorption)^k / r
// at delay r/c, deposited with linear fractional-delay interpolation.
// Positions are meters from the room corner and must lie strictly inside.
RoomImpulseResponse image_source_rir(const std::array<double, 3>& room,
                                     const std::array<double, 3>& src,
                                     const std::array<double, 3>& mic,
                                     double absorption, int max_order,
                                     double f_s);

// Loads a mono waveform file as an RIR: integer-ratio resampled to f_s when
// rates differ, then peak-normalized to 1.
RoomImpulseResponse load_rir(const std::string& path, double f_s);

// RT60 from backward-integrated energy decay: fit the -5 dB to -25 dB
// segment, extrapolate to 60 dB.
double rt60_schroeder(const RoomImpulseResponse& rir);

}  // namespace nusmodem

#endif  // NUSMODEM_CHANNEL_H_
