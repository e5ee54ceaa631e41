// nusmodem/signal.h
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

#ifndef NUSMODEM_SIGNAL_H_
#define NUSMODEM_SIGNAL_H_

#include <complex>
#include <vector>

namespace nusmodem {

using cplx = std::complex<double>;

// Complex baseband samples. samples_per_symbol is the oversampling factor
// relative to the symbol rate (f_s / f_b for signals at the full audio rate).
struct BasebandSignal {
  std::vector<cplx> samples;
  double sample_rate = 0.0;
  int samples_per_symbol = 0;
};

// Real passband samples at the audio rate.
struct PassbandWaveform {
  std::vector<double> samples;
  double sample_rate = 0.0;
};

}  // namespace nusmodem

#endif  // NUSMODEM_SIGNAL_H_
