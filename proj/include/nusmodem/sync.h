// nusmodem/sync.h
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

#ifndef NUSMODEM_SYNC_H_
#define NUSMODEM_SYNC_H_

#include <span>

#include "nusmodem/config.h"
#include "nusmodem/signal.h"

namespace nusmodem {

struct SyncResult {
  // Sample index of the first data symbol's center in the received stream.
  int data_start_index = 0;
  // Normalized correlation magnitude at the peak, in [0,1].
  double peak_metric = 0.0;
  bool detected = false;
  // Correlation peak position (start of the shaped pilot).
  int peak_index = 0;
  // Complex correlation phase at the peak; estimates the channel's carrier
  // rotation and seeds the equalizer's phase tracker.
  double peak_phase = 0.0;
};

inline constexpr double kDetectionThreshold = 0.5;

// Matched-filter search for the pilot.  The template is the RRC-shaped
// pilot baseband (see pilot_baseband).  peak_metric is |corr| normalized by
// the window and template energies, so it is invariant to received gain.
// detected is false when the best metric stays under kDetectionThreshold.
SyncResult detect_pilot(const BasebandSignal& received,
                        std::span<const cplx> pilot_template,
                        const ModemConfig& cfg);

// Re-evaluates the normalized correlation with the direct kernel on a
// +-sps/2 window around the coarse peak and moves the result to the best
// lag.  A correct coarse peak is a fixed point.
SyncResult refine_timing(const BasebandSignal& received,
                         const SyncResult& coarse,
                         std::span<const cplx> pilot_template,
                         const ModemConfig& cfg);

}  // namespace nusmodem

#endif  // NUSMODEM_SYNC_H_
