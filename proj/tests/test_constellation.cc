// tests/test_constellation.cc
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

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

#include "doctest.h"

using nusmodem::Constellation;
using nusmodem::cplx;

TEST_CASE("unit average energy for every supported order") {
  for (int m : {2, 4, 16, 64, 256, 1024}) {
    CAPTURE(m);
    const Constellation c(m);
    REQUIRE(static_cast<int>(c.points().size()) == m);
    double e = 0.0;
    for (const auto& p : c.points()) e += std::norm(p);
    e /= m;
    CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("map and demap round-trip for every index") {
  for (int m : {2, 4, 16, 64, 256, 1024}) {
    CAPTURE(m);
    const Constellation c(m);
    for (int i = 0; i < m; ++i) CHECK(c.demap(c.map(i)) == i);
  }
}

TEST_CASE("points are distinct") {
  for (int m : {2, 4, 16, 64}) {
    const Constellation c(m);
    std::set<std::pair<double, double>> seen;
    for (const auto& p : c.points()) seen.insert({p.real(), p.imag()});
    CHECK(static_cast<int>(seen.size()) == m);
  }
}

TEST_CASE("gray property: nearest neighbours differ in exactly one bit") {
  for (int m : {4, 16, 64}) {
    CAPTURE(m);
    const Constellation c(m);
    // Find the minimum distance, then check every pair at that distance.
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        dmin = std::min(dmin, std::abs(c.map(i) - c.map(j)));
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (std::abs(c.map(i) - c.map(j)) < dmin * 1.001) {
          const int diff = i ^ j;
          CHECK((diff & (diff - 1)) == 0);  // power of two: one bit flipped
        }
      }
    }
  }
}

TEST_CASE("16-QAM minimum distance is 2/sqrt(10)") {
  const Constellation c(16);
  double dmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 16; ++i)
    for (int j = i + 1; j < 16; ++j)
      dmin = std::min(dmin, std::abs(c.map(i) - c.map(j)));
  CHECK(dmin == doctest::Approx(2.0 / std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("QPSK index zero sits in the first quadrant") {
  const Constellation c(4);
  const cplx p = c.map(0);
  CHECK(p.real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(p.imag() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("BPSK is the real pair {1, -1}") {
  const Constellation c(2);
  CHECK(c.map(0) == cplx(1.0, 0.0));
  CHECK(c.map(1) == cplx(-1.0, 0.0));
  CHECK(c.demap(cplx(0.3, 2.0)) == 0);
  CHECK(c.demap(cplx(-0.001, -5.0)) == 1);
}

TEST_CASE("demap slices noisy points to the nearest neighbour") {
  std::mt19937_64 rng(5);
  // Half the 64-QAM decision distance is 0.154; sigma = 0.02 keeps every
  // draw decisively inside its cell.
  std::normal_distribution<double> g(0.0, 0.02);
  for (int m : {4, 16, 64}) {
    const Constellation c(m);
    for (int i = 0; i < m; ++i) {
      for (int rep = 0; rep < 8; ++rep) {
        const cplx y = c.map(i) + cplx(g(rng), g(rng));
        CHECK(c.demap(y) == i);
      }
    }
  }
}

TEST_CASE("demap of far-outside points clamps to the outer ring") {
  const Constellation c(16);
  const int corner = c.demap(cplx(100.0, 100.0));
  const cplx p = c.map(corner);
  CHECK(p.real() > 0.0);
  CHECK(p.imag() > 0.0);
  CHECK(std::abs(p) == doctest::Approx(std::abs(cplx(3.0, 3.0)) /
                                       std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("unsupported orders are rejected") {
  CHECK_THROWS_AS(Constellation(3), std::invalid_argument);
  CHECK_THROWS_AS(Constellation(8), std::invalid_argument);
  CHECK_THROWS_AS(Constellation(0), std::invalid_argument);
  CHECK_THROWS_AS(Constellation(-4), std::invalid_argument);
  CHECK_THROWS_AS(Constellation(2048), std::invalid_argument);
}
