// nusmodem/constellation.h
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

#ifndef NUSMODEM_CONSTELLATION_H_
#define NUSMODEM_CONSTELLATION_H_

#include <vector>

#include "nusmodem/signal.h"

namespace nusmodem {

// Gray-coded square constellations, unit average energy.  Order 2 is BPSK on
// the real axis; order 4 and up are square grids with independent Gray maps
// on each axis (first half of the index bits selects the in-phase level).
class Constellation {
 public:
  explicit Constellation(int order);

  int order() const { return order_; }
  int bits_per_symbol() const { return bits_; }

  // Index must be in [0, order).
  cplx map(int index) const { return points_[index]; }

  // Nearest constellation point in Euclidean distance.
  int demap(cplx y) const;
  cplx nearest(cplx y) const { return points_[demap(y)]; }

  const std::vector<cplx>& points() const { return points_; }

 private:
  int order_;
  int bits_;
  std::vector<cplx> points_;
};

}  // namespace nusmodem

#endif  // NUSMODEM_CONSTELLATION_H_
