// nusmodem/rrc.h
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

#ifndef NUSMODEM_RRC_H_
#define NUSMODEM_RRC_H_

#include <vector>

namespace nusmodem {

struct FilterTaps {
  std::vector<double> taps;  // odd length, symmetric, unit energy
  int sps = 0;               // samples per symbol the filter was designed for
  int span_symbols = 0;
  double beta = 0.0;
};

// Root-raised-cosine pulse, span_symbols * sps + 1 taps, normalized to unit
// energy.  The closed form has removable singularities at t = 0 and
// t = +-1/(4 beta); both are evaluated by their limits.
// Preconditions: 0 < beta <= 1, sps >= 2, span_symbols >= 4 and even.
FilterTaps design_rrc(double beta, int sps, int span_symbols);

// Hamming-windowed sinc lowpass with unit DC gain, ntaps odd.
std::vector<double> design_lowpass(double cutoff_hz, double sample_rate,
                                   int ntaps);

}  // namespace nusmodem

#endif  // NUSMODEM_RRC_H_
