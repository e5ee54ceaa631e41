// src/channel.cc
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

#include "nusmodem/channel.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nusmodem/dsp.h"
#include "nusmodem/fft.h"
#include "nusmodem/kernels.h"
#include "nusmodem/rrc.h"
#include "nusmodem/wav.h"

namespace nusmodem {

namespace {

constexpr double kSpeedOfSound = 343.0;

std::vector<double> convolve_real(std::span<const double> x,
                                  std::span<const double> h) {
  if (static_cast<double>(x.size()) * h.size() > 4.0e6)
    return kernels::convolve_full_fft(x, h);
  return kernels::convolve_full(x, h, kernels::Exec::kParallel);
}

// Rotate the analytic signal by exp(j 2 pi cfo n / f_s) and take the real
// part again.  FFT-based analytic signal; fine for packet-length buffers.
void apply_cfo(std::vector<double>& x, double cfo_hz, double f_s) {
  const size_t nfft = fft::next_pow2(x.size());
  std::vector<cplx> buf(nfft, cplx{0.0, 0.0});
  for (size_t n = 0; n < x.size(); ++n) buf[n] = cplx{x[n], 0.0};
  fft::forward(buf);
  for (size_t k = 1; k < nfft / 2; ++k) buf[k] *= 2.0;
  for (size_t k = nfft / 2 + 1; k < nfft; ++k) buf[k] = cplx{0.0, 0.0};
  fft::inverse(buf);
  const double w = 2.0 * std::numbers::pi * cfo_hz / f_s;
  for (size_t n = 0; n < x.size(); ++n) {
    const double ph = w * static_cast<double>(n);
    x[n] = buf[n].real() * std::cos(ph) - buf[n].imag() * std::sin(ph);
  }
}

}  // namespace

PassbandWaveform apply_channel(const PassbandWaveform& tx,
                               const ChannelSpec& spec) {
  if (tx.sample_rate <= 0.0)
    throw std::invalid_argument("apply_channel: sample_rate unset");
  if (!spec.rir.taps.empty() && spec.rir.sample_rate != tx.sample_rate)
    throw std::invalid_argument("apply_channel: rir sample rate mismatch");
  if (std::abs(spec.cfo_hz) > 5.0)
    throw std::invalid_argument("apply_channel: |cfo_hz| must be <= 5");
  if (spec.band_lo >= spec.band_hi || spec.band_hi > tx.sample_rate / 2.0)
    throw std::invalid_argument("apply_channel: bad band");

  PassbandWaveform out;
  out.sample_rate = tx.sample_rate;
  if (spec.rir.taps.empty()) {
    out.samples = tx.samples;
  } else {
    out.samples = convolve_real(tx.samples, spec.rir.taps);
  }

  if (spec.cfo_hz != 0.0) apply_cfo(out.samples, spec.cfo_hz, tx.sample_rate);

  if (std::isfinite(spec.snr_db)) {
    size_t begin = spec.measure_begin;
    size_t len = spec.measure_len == 0 ? out.samples.size() : spec.measure_len;
    if (begin >= out.samples.size())
      throw std::invalid_argument("apply_channel: measure window out of range");
    len = std::min(len, out.samples.size() - begin);
    const double p_band =
        band_power(std::span<const double>(out.samples).subspan(begin, len),
                   out.sample_rate, spec.band_lo, spec.band_hi);
    if (p_band <= 0.0)
      throw std::invalid_argument("apply_channel: no in-band signal power");
    // White noise of variance v puts v * bandwidth / (f_s/2) of its power
    // inside the band; solve for v against the target in-band ratio.
    const double band_fraction =
        (spec.band_hi - spec.band_lo) / (out.sample_rate / 2.0);
    const double snr_lin = std::pow(10.0, spec.snr_db / 10.0);
    const double variance = p_band / (snr_lin * band_fraction);
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(variance));
    for (double& v : out.samples) v += gauss(rng);
  }
  return out;
}

RoomImpulseResponse image_source_rir(const std::array<double, 3>& room,
                                     const std::array<double, 3>& src,
                                     const std::array<double, 3>& mic,
                                     double absorption, int max_order,
                                     double f_s) {
  for (int a = 0; a < 3; ++a) {
    if (room[a] <= 0.0)
      throw std::invalid_argument("image_source_rir: bad room dimensions");
    if (src[a] <= 0.0 || src[a] >= room[a] || mic[a] <= 0.0 ||
        mic[a] >= room[a])
      throw std::invalid_argument(
          "image_source_rir: positions must be strictly inside the room");
  }
  if (src == mic)
    throw std::invalid_argument("image_source_rir: src == mic");
  if (absorption <= 0.0 || absorption > 1.0)
    throw std::invalid_argument("image_source_rir: absorption not in (0,1]");
  if (max_order < 0 || max_order > 30)
    throw std::invalid_argument("image_source_rir: max_order not in [0,30]");
  if (f_s <= 0.0) throw std::invalid_argument("image_source_rir: bad f_s");

  struct Arrival {
    double delay_samples;
    double amplitude;
  };
  std::vector<Arrival> arrivals;
  // Mirror index m and parity q per axis give image coordinate
  // (1-2q) src + 2 m room; the axis contributes |2m - q| wall bounces.
  const int mspan = max_order / 2 + 1;
  for (int mx = -mspan; mx <= mspan; ++mx) {
    for (int qx = 0; qx <= 1; ++qx) {
      const int ox = std::abs(2 * mx - qx);
      if (ox > max_order) continue;
      const double ix = (1 - 2 * qx) * src[0] + 2.0 * mx * room[0];
      for (int my = -mspan; my <= mspan; ++my) {
        for (int qy = 0; qy <= 1; ++qy) {
          const int oy = std::abs(2 * my - qy);
          if (ox + oy > max_order) continue;
          const double iy = (1 - 2 * qy) * src[1] + 2.0 * my * room[1];
          for (int mz = -mspan; mz <= mspan; ++mz) {
            for (int qz = 0; qz <= 1; ++qz) {
              const int order = ox + oy + std::abs(2 * mz - qz);
              if (order > max_order) continue;
              const double iz = (1 - 2 * qz) * src[2] + 2.0 * mz * room[2];
              const double dx = ix - mic[0];
              const double dy = iy - mic[1];
              const double dz = iz - mic[2];
              const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
              const double amp = std::pow(1.0 - absorption, order) / r;
              if (amp != 0.0)
                arrivals.push_back({r / kSpeedOfSound * f_s, amp});
            }
          }
        }
      }
    }
  }

  double max_delay = 0.0;
  for (const Arrival& a : arrivals) max_delay = std::max(max_delay, a.delay_samples);
  RoomImpulseResponse rir;
  rir.sample_rate = f_s;
  rir.taps.assign(static_cast<size_t>(max_delay) + 2, 0.0);
  for (const Arrival& a : arrivals) {
    const size_t idx = static_cast<size_t>(a.delay_samples);
    const double frac = a.delay_samples - static_cast<double>(idx);
    rir.taps[idx] += a.amplitude * (1.0 - frac);
    rir.taps[idx + 1] += a.amplitude * frac;
  }
  rir.meta = "image-source shoebox";
  return rir;
}

RoomImpulseResponse load_rir(const std::string& path, double f_s) {
  PassbandWaveform wave = read_wav(path);
  std::vector<double> taps = std::move(wave.samples);

  if (wave.sample_rate != f_s) {
    const double src_rate = wave.sample_rate;
    if (src_rate > f_s && std::fmod(src_rate, f_s) == 0.0) {
      const int k = static_cast<int>(src_rate / f_s);
      // Anti-alias at the target Nyquist, then keep every k-th sample.
      const std::vector<double> lp = design_lowpass(0.45 * f_s, src_rate, 127);
      std::vector<double> filtered = convolve_real(taps, lp);
      const size_t delay = (lp.size() - 1) / 2;
      std::vector<double> dec;
      for (size_t i = delay; i < delay + taps.size(); i += k)
        dec.push_back(filtered[i]);
      taps = std::move(dec);
    } else if (f_s > src_rate && std::fmod(f_s, src_rate) == 0.0) {
      const int k = static_cast<int>(f_s / src_rate);
      std::vector<double> stuffed(taps.size() * k, 0.0);
      for (size_t i = 0; i < taps.size(); ++i) stuffed[i * k] = taps[i] * k;
      const std::vector<double> lp = design_lowpass(0.45 * src_rate, f_s, 127);
      std::vector<double> filtered = convolve_real(stuffed, lp);
      const size_t delay = (lp.size() - 1) / 2;
      taps.assign(filtered.begin() + delay,
                  filtered.begin() + delay + stuffed.size());
    } else {
      throw std::invalid_argument("load_rir: non-integer resampling ratio " +
                                  std::to_string(src_rate) + " -> " +
                                  std::to_string(f_s));
    }
  }

  double peak = 0.0;
  for (double t : taps) peak = std::max(peak, std::abs(t));
  if (peak <= 0.0) throw std::invalid_argument("load_rir: nonzero energy required");
  for (double& t : taps) t /= peak;

  RoomImpulseResponse rir;
  rir.taps = std::move(taps);
  rir.sample_rate = f_s;
  rir.meta = "loaded from " + path;
  return rir;
}

double rt60_schroeder(const RoomImpulseResponse& rir) {
  if (rir.taps.empty() || rir.sample_rate <= 0.0)
    throw std::invalid_argument("rt60_schroeder: empty rir");
  std::vector<double> edc(rir.taps.size());
  double acc = 0.0;
  for (size_t i = rir.taps.size(); i-- > 0;) {
    acc += rir.taps[i] * rir.taps[i];
    edc[i] = acc;
  }
  if (acc <= 0.0) throw std::invalid_argument("rt60_schroeder: zero energy");
  // First crossings of -5 dB and -25 dB on the decay curve.
  double t5 = -1.0, t25 = -1.0;
  for (size_t i = 0; i < edc.size(); ++i) {
    const double db = 10.0 * std::log10(edc[i] / acc);
    if (t5 < 0.0 && db <= -5.0) t5 = static_cast<double>(i);
    if (db <= -25.0) {
      t25 = static_cast<double>(i);
      break;
    }
  }
  if (t5 < 0.0) return 0.0;
  if (t25 < 0.0) t25 = static_cast<double>(edc.size() - 1);
  // -5 to -25 dB is a 20 dB drop; scale the fit to a 60 dB decay.
  return 3.0 * (t25 - t5) / rir.sample_rate;
}

}  // namespace nusmodem
