// src/constellation.cc
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

#include "nusmodem/constellation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nusmodem {

namespace {

int gray_to_binary(int g) {
  int b = 0;
  for (; g; g >>= 1) b ^= g;
  return b;
}

}  // namespace

Constellation::Constellation(int order) : order_(order) {
  switch (order) {
    case 2:
    case 4:
    case 16:
    case 64:
    case 256:
    case 1024:
      break;
    default:
      throw std::invalid_argument("Constellation: unsupported order");
  }
  bits_ = 0;
  while ((1 << bits_) < order) ++bits_;
  points_.resize(order);
  if (order == 2) {
    points_[0] = cplx{1.0, 0.0};
    points_[1] = cplx{-1.0, 0.0};
    return;
  }
  const int n = bits_ / 2;
  const int side = 1 << n;
  // Average energy of levels {+-1, +-3, ...} on both axes is
  // 2 (side^2 - 1) / 3; scale so it comes out at one.
  const double scale = 1.0 / std::sqrt(2.0 * (side * side - 1) / 3.0);
  for (int idx = 0; idx < order; ++idx) {
    const int gi = idx >> n;
    const int gq = idx & (side - 1);
    const double li = (side - 1) - 2 * gray_to_binary(gi);
    const double lq = (side - 1) - 2 * gray_to_binary(gq);
    points_[idx] = cplx{li * scale, lq * scale};
  }
}

int Constellation::demap(cplx y) const {
  if (order_ == 2) return y.real() >= 0.0 ? 0 : 1;
  const int n = bits_ / 2;
  const int side = 1 << n;
  const double scale = 1.0 / std::sqrt(2.0 * (side * side - 1) / 3.0);
  auto slice = [&](double u) {
    int b = static_cast<int>(std::lround(((side - 1) - u / scale) / 2.0));
    b = std::clamp(b, 0, side - 1);
    return b ^ (b >> 1);  // binary level back to its Gray index
  };
  return (slice(y.real()) << n) | slice(y.imag());
}

}  // namespace nusmodem
