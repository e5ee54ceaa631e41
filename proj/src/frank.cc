// src/frank.cc
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

#include "nusmodem/frank.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nusmodem {

std::vector<cplx> frank_sequence(int order) {
  if (order < 1) throw std::invalid_argument("frank_sequence: order < 1");
  std::vector<cplx> chips(static_cast<size_t>(order) * order);
  for (int n = 0; n < order; ++n) {
    for (int m = 0; m < order; ++m) {
      // Reduce n*m mod order first so the phase argument stays small.
      const double phase =
          2.0 * std::numbers::pi * ((n * m) % order) / order;
      chips[static_cast<size_t>(n) * order + m] =
          cplx{std::cos(phase), std::sin(phase)};
    }
  }
  return chips;
}

}  // namespace nusmodem
