// nusmodem/dsp.h
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

#ifndef NUSMODEM_DSP_H_
#define NUSMODEM_DSP_H_

#include <span>
#include <vector>

#include "nusmodem/kernels.h"
#include "nusmodem/rrc.h"
#include "nusmodem/signal.h"

namespace nusmodem {

// Pulse train y[n] = sum_k symbols[k] * taps[n - k*sps]; output length
// (count-1)*sps + taps.length, symbol k centered at (len-1)/2 + k*sps.
BasebandSignal shape_symbols(std::span<const cplx> symbols,
                             const FilterTaps& taps, int sps);

// s[n] = Re{ bb[n] * exp(j 2 pi f_c n / f_s) }.
PassbandWaveform upconvert(const BasebandSignal& bb, double f_c);

// Mix by exp(-j 2 pi f_c n / f_s), scale by 2 to undo the real-part halving,
// and lowpass with the given taps ("same" alignment, group delay removed).
// The output keeps the full sample rate.
BasebandSignal downconvert(const PassbandWaveform& wave, double f_c,
                           std::span<const double> taps,
                           int samples_per_symbol);

// Sliding cross-correlation, out[k] = sum_m sig[k+m] * conj(tpl[m]) for
// k in [0, sig.length - tpl.length].  Dispatches between the direct kernels
// and the FFT route depending on problem size; both agree with the direct
// oracle.  No normalization is applied; callers normalize as needed.
std::vector<cplx> cross_correlate(std::span<const cplx> sig,
                                  std::span<const cplx> tpl);

// Mean power (per sample) of the one-sided spectrum inside [f_lo, f_hi],
// computed from a zero-padded periodogram.
double band_power(std::span<const double> x, double sample_rate, double f_lo,
                  double f_hi);

}  // namespace nusmodem

#endif  // NUSMODEM_DSP_H_
