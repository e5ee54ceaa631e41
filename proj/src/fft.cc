// nusmodem/fft.cc
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

#include "nusmodem/fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nusmodem {
namespace fft {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

// FFTW plan creation is not thread safe; execution of a cached plan is.
// FFTW_UNALIGNED lets one plan serve any buffer of the right size.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> dummy(n);
  fftw_plan plan = fftw_plan_dft_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(dummy.data()),
      reinterpret_cast<fftw_complex*>(dummy.data()), sign,
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(key, plan);
  return plan;
}

void execute(std::vector<cplx>& buf, int sign) {
  if (buf.empty() || (buf.size() & (buf.size() - 1)) != 0)
    throw std::invalid_argument("fft size must be a power of two");
  fftw_plan plan = plan_for(buf.size(), sign);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(buf.data()),
                   reinterpret_cast<fftw_complex*>(buf.data()));
}

}  // namespace

void forward(std::vector<cplx>& buf) { execute(buf, FFTW_FORWARD); }

void inverse(std::vector<cplx>& buf) {
  execute(buf, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(buf.size());
  for (auto& v : buf) v *= scale;
}

}  // namespace fft
}  // namespace nusmodem
