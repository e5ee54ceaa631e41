// nusmodem/frank.h
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

#ifndef NUSMODEM_FRANK_H_
#define NUSMODEM_FRANK_H_

#include <vector>

#include "nusmodem/signal.h"

namespace nusmodem {

// Polyphase Frank sequence of order N: N*N unit-magnitude chips
//   c[n*N + m] = exp(j 2 pi n m / N),  n, m in [0, N).
// Its periodic autocorrelation is zero at every nonzero lag, which is what
// makes it a good synchronization pilot.
std::vector<cplx> frank_sequence(int order);

}  // namespace nusmodem

#endif  // NUSMODEM_FRANK_H_
