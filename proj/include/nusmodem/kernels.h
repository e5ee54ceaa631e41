// nusmodem/kernels.h
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

// Data-parallel inner loops shared by the transmitter, channel and receiver.
// Every kernel exists in three flavours:
//   * Exec::kSerial   - plain loop, the reference used by the tests
//   * Exec::kParallel - same loop split across OpenMP threads; each output
//                       sample is still computed by one thread in the same
//                       order, so results are bit-identical to kSerial
//   * *_fft           - transform-based equivalent for long operands, equal
//                       to the direct result within roundoff
// Callers that just want the fastest correct answer use the dispatching
// wrappers in dsp.h / channel.h.

#ifndef NUSMODEM_KERNELS_H_
#define NUSMODEM_KERNELS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "nusmodem/signal.h"

namespace nusmodem {
namespace kernels {

enum class Exec { kSerial, kParallel };

// y[n] = sum_j taps[j] * x[n + (len-1)/2 - j], zero outside the signal.
// "Same" alignment: output length equals the input length and the filter
// group delay (odd-length symmetric taps assumed) is removed.
std::vector<cplx> fir_filter_same(std::span<const cplx> x,
                                  std::span<const double> taps, Exec exec);
std::vector<cplx> fir_filter_same_fft(std::span<const cplx> x,
                                      std::span<const double> taps);

// Full real convolution, output length N + M - 1.
std::vector<double> convolve_full(std::span<const double> x,
                                  std::span<const double> h, Exec exec);
std::vector<double> convolve_full_fft(std::span<const double> x,
                                      std::span<const double> h);

// out[i] = sum_m sig[first + i*stride + m] * conj(tpl[m]) for i < count,
// signal samples beyond the end treated as zero.
std::vector<cplx> cross_correlate_at(std::span<const cplx> sig,
                                     std::span<const cplx> tpl,
                                     std::size_t first, std::size_t stride,
                                     std::size_t count, Exec exec);

// All non-negative lags [0, sig.size()) in one shot via the FFT.
std::vector<cplx> cross_correlate_fft(std::span<const cplx> sig,
                                      std::span<const cplx> tpl);

}  // namespace kernels
}  // namespace nusmodem

#endif  // NUSMODEM_KERNELS_H_
