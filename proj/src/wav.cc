// src/wav.cc
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

#include "nusmodem/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace nusmodem {

namespace {

void put_u32(std::vector<uint8_t>& b, uint32_t v) {
  b.push_back(v & 0xff);
  b.push_back((v >> 8) & 0xff);
  b.push_back((v >> 16) & 0xff);
  b.push_back((v >> 24) & 0xff);
}

void put_u16(std::vector<uint8_t>& b, uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back((v >> 8) & 0xff);
}

void put_tag(std::vector<uint8_t>& b, const char* tag) {
  b.insert(b.end(), tag, tag + 4);
}

uint32_t get_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t get_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

void write_wav(const std::string& path, const PassbandWaveform& wave) {
  if (wave.sample_rate <= 0.0)
    throw std::invalid_argument("write_wav: sample_rate unset");
  const uint32_t rate = static_cast<uint32_t>(std::lround(wave.sample_rate));
  const uint32_t data_bytes = static_cast<uint32_t>(wave.samples.size()) * 2;

  std::vector<uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, rate);
  put_u32(out, rate * 2);  // byte rate
  put_u16(out, 2);         // block align
  put_u16(out, 16);        // bits per sample
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double v : wave.samples) {
    const double clipped = std::clamp(v, -1.0, 32767.0 / 32768.0);
    const int16_t q = static_cast<int16_t>(std::lround(clipped * 32768.0));
    put_u16(out, static_cast<uint16_t>(q));
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_wav: cannot open '" + path + "'");
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("write_wav: write failed on '" + path + "'");
}

PassbandWaveform read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_wav: cannot open '" + path + "'");
  std::vector<uint8_t> raw((std::istreambuf_iterator<char>(f)),
                           std::istreambuf_iterator<char>());
  if (raw.size() < 12 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
      std::memcmp(raw.data() + 8, "WAVE", 4) != 0)
    throw std::runtime_error("read_wav: not a RIFF/WAVE file: " + path);

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= raw.size()) {
    const uint8_t* hdr = raw.data() + pos;
    const uint32_t chunk_len = get_u32(hdr + 4);
    const uint8_t* body = hdr + 8;
    if (pos + 8 + chunk_len > raw.size())
      throw std::runtime_error("read_wav: truncated chunk in " + path);
    if (std::memcmp(hdr, "fmt ", 4) == 0 && chunk_len >= 16) {
      format = get_u16(body);
      channels = get_u16(body + 2);
      rate = get_u32(body + 4);
      bits = get_u16(body + 14);
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = body;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }
  if (rate == 0 || data == nullptr)
    throw std::runtime_error("read_wav: missing fmt or data chunk: " + path);
  if (channels != 1)
    throw std::runtime_error("read_wav: mono required: " + path);

  PassbandWaveform wave;
  wave.sample_rate = rate;
  if (format == 1 && bits == 16) {
    wave.samples.resize(data_len / 2);
    for (size_t i = 0; i < wave.samples.size(); ++i) {
      const int16_t q = static_cast<int16_t>(get_u16(data + 2 * i));
      wave.samples[i] = q / 32768.0;
    }
  } else if (format == 3 && bits == 32) {
    wave.samples.resize(data_len / 4);
    for (size_t i = 0; i < wave.samples.size(); ++i) {
      uint32_t u = get_u32(data + 4 * i);
      float v;
      std::memcpy(&v, &u, 4);
      wave.samples[i] = v;
    }
  } else {
    throw std::runtime_error("read_wav: unsupported sample format in " + path);
  }
  return wave;
}

}  // namespace nusmodem
