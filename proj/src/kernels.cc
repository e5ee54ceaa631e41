// nusmodem/kernels.cc
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

#include "nusmodem/kernels.h"

#include <algorithm>
#include <stdexcept>

#include "nusmodem/fft.h"

namespace nusmodem {
namespace kernels {

namespace {

// Each *_range helper computes outputs [begin, end).  The OpenMP wrappers
// split the output range; every sample is still produced by the same serial
// inner loop, so thread count never changes the result.

void fir_same_range(std::span<const cplx> x, std::span<const double> taps,
                    std::ptrdiff_t begin, std::ptrdiff_t end, cplx* out) {
  const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t nt = static_cast<std::ptrdiff_t>(taps.size());
  const std::ptrdiff_t half = (nt - 1) / 2;
  for (std::ptrdiff_t n = begin; n < end; ++n) {
    // valid j range keeps i = n + half - j inside [0, nx)
    const std::ptrdiff_t j_lo = std::max<std::ptrdiff_t>(0, n + half - nx + 1);
    const std::ptrdiff_t j_hi = std::min<std::ptrdiff_t>(nt, n + half + 1);
    double re = 0.0, im = 0.0;
    const cplx* base = x.data() + (n + half);
    for (std::ptrdiff_t j = j_lo; j < j_hi; ++j) {
      const cplx v = base[-j];
      re += taps[j] * v.real();
      im += taps[j] * v.imag();
    }
    out[n] = cplx(re, im);
  }
}

void convolve_range(std::span<const double> x, std::span<const double> h,
                    std::ptrdiff_t begin, std::ptrdiff_t end, double* out) {
  const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t nh = static_cast<std::ptrdiff_t>(h.size());
  for (std::ptrdiff_t n = begin; n < end; ++n) {
    const std::ptrdiff_t j_lo = std::max<std::ptrdiff_t>(0, n - nx + 1);
    const std::ptrdiff_t j_hi = std::min<std::ptrdiff_t>(nh, n + 1);
    double acc = 0.0;
    for (std::ptrdiff_t j = j_lo; j < j_hi; ++j) acc += h[j] * x[n - j];
    out[n] = acc;
  }
}

void xcorr_range(std::span<const cplx> sig, std::span<const cplx> tpl,
                 std::size_t first, std::size_t stride, std::ptrdiff_t begin,
                 std::ptrdiff_t end, cplx* out) {
  const std::ptrdiff_t ns = static_cast<std::ptrdiff_t>(sig.size());
  const std::ptrdiff_t nt = static_cast<std::ptrdiff_t>(tpl.size());
  for (std::ptrdiff_t i = begin; i < end; ++i) {
    const std::ptrdiff_t k =
        static_cast<std::ptrdiff_t>(first + static_cast<std::size_t>(i) * stride);
    const std::ptrdiff_t m_hi = std::min<std::ptrdiff_t>(nt, ns - k);
    double re = 0.0, im = 0.0;
    const cplx* s = sig.data() + k;
    for (std::ptrdiff_t m = 0; m < m_hi; ++m) {
      // s[m] * conj(tpl[m])
      const cplx a = s[m];
      const cplx b = tpl[m];
      re += a.real() * b.real() + a.imag() * b.imag();
      im += a.imag() * b.real() - a.real() * b.imag();
    }
    out[i] = cplx(re, im);
  }
}

}  // namespace

std::vector<cplx> fir_filter_same(std::span<const cplx> x,
                                  std::span<const double> taps, Exec exec) {
  if (taps.empty() || taps.size() % 2 == 0)
    throw std::invalid_argument("fir_filter_same expects odd-length taps");
  std::vector<cplx> out(x.size());
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      fir_same_range(x, taps, i, i + 1, out.data());
  } else {
    fir_same_range(x, taps, 0, n, out.data());
  }
  return out;
}

std::vector<cplx> fir_filter_same_fft(std::span<const cplx> x,
                                      std::span<const double> taps) {
  if (taps.empty() || taps.size() % 2 == 0)
    throw std::invalid_argument("fir_filter_same expects odd-length taps");
  if (x.empty()) return {};
  const std::size_t half = (taps.size() - 1) / 2;
  const std::size_t nfft = fft::next_pow2(x.size() + taps.size() - 1);
  std::vector<cplx> xa(nfft, cplx(0.0, 0.0)), ha(nfft, cplx(0.0, 0.0));
  std::copy(x.begin(), x.end(), xa.begin());
  for (std::size_t j = 0; j < taps.size(); ++j) ha[j] = cplx(taps[j], 0.0);
  fft::forward(xa);
  fft::forward(ha);
  for (std::size_t i = 0; i < nfft; ++i) xa[i] *= ha[i];
  fft::inverse(xa);
  std::vector<cplx> out(x.size());
  std::copy(xa.begin() + half, xa.begin() + half + x.size(), out.begin());
  return out;
}

std::vector<double> convolve_full(std::span<const double> x,
                                  std::span<const double> h, Exec exec) {
  if (x.empty() || h.empty()) return {};
  std::vector<double> out(x.size() + h.size() - 1);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      convolve_range(x, h, i, i + 1, out.data());
  } else {
    convolve_range(x, h, 0, n, out.data());
  }
  return out;
}

std::vector<double> convolve_full_fft(std::span<const double> x,
                                      std::span<const double> h) {
  if (x.empty() || h.empty()) return {};
  const std::size_t n_out = x.size() + h.size() - 1;
  const std::size_t nfft = fft::next_pow2(n_out);
  std::vector<cplx> xa(nfft, cplx(0.0, 0.0)), ha(nfft, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) xa[i] = cplx(x[i], 0.0);
  for (std::size_t j = 0; j < h.size(); ++j) ha[j] = cplx(h[j], 0.0);
  fft::forward(xa);
  fft::forward(ha);
  for (std::size_t i = 0; i < nfft; ++i) xa[i] *= ha[i];
  fft::inverse(xa);
  std::vector<double> out(n_out);
  for (std::size_t i = 0; i < n_out; ++i) out[i] = xa[i].real();
  return out;
}

std::vector<cplx> cross_correlate_at(std::span<const cplx> sig,
                                     std::span<const cplx> tpl,
                                     std::size_t first, std::size_t stride,
                                     std::size_t count, Exec exec) {
  if (tpl.empty()) throw std::invalid_argument("empty correlation template");
  if (stride == 0) throw std::invalid_argument("zero correlation stride");
  std::vector<cplx> out(count);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(count);
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      xcorr_range(sig, tpl, first, stride, i, i + 1, out.data());
  } else {
    xcorr_range(sig, tpl, first, stride, 0, n, out.data());
  }
  return out;
}

std::vector<cplx> cross_correlate_fft(std::span<const cplx> sig,
                                      std::span<const cplx> tpl) {
  if (tpl.empty()) throw std::invalid_argument("empty correlation template");
  if (sig.empty()) return {};
  const std::size_t nfft = fft::next_pow2(sig.size() + tpl.size());
  std::vector<cplx> sa(nfft, cplx(0.0, 0.0)), ta(nfft, cplx(0.0, 0.0));
  std::copy(sig.begin(), sig.end(), sa.begin());
  std::copy(tpl.begin(), tpl.end(), ta.begin());
  fft::forward(sa);
  fft::forward(ta);
  for (std::size_t i = 0; i < nfft; ++i) sa[i] *= std::conj(ta[i]);
  fft::inverse(sa);
  sa.resize(sig.size());
  return sa;
}

}  // namespace kernels
}  // namespace nusmodem
