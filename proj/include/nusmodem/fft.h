// nusmodem/fft.h
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

#ifndef NUSMODEM_FFT_H_
#define NUSMODEM_FFT_H_

#include <cstddef>
#include <vector>

#include "nusmodem/signal.h"

namespace nusmodem {
namespace fft {

std::size_t next_pow2(std::size_t n);

// In-place transforms; size must be a power of two.  inverse() includes the
// 1/N normalization.  Plans are cached per size, so repeated calls are cheap.
void forward(std::vector<cplx>& buf);
void inverse(std::vector<cplx>& buf);

}  // namespace fft
}  // namespace nusmodem

#endif  // NUSMODEM_FFT_H_
