// nusmodem/bits.cc
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

#include "nusmodem/bits.h"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nusmodem {

BitVector bits_from_bytes(const std::uint8_t* data, std::size_t n) {
  BitVector bits;
  bits.reserve(n * 8);
  for (std::size_t i = 0; i < n; ++i)
    for (int b = 7; b >= 0; --b) bits.push_back((data[i] >> b) & 1u);
  return bits;
}

BitVector bits_from_bytes(const std::vector<std::uint8_t>& bytes) {
  return bits_from_bytes(bytes.data(), bytes.size());
}

BitVector bits_from_hex(const std::string& hex) {
  std::vector<int> digits;
  for (char c : hex) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c >= '0' && c <= '9')
      digits.push_back(c - '0');
    else if (c >= 'a' && c <= 'f')
      digits.push_back(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      digits.push_back(c - 'A' + 10);
    else
      throw std::invalid_argument(std::string("invalid hex character '") + c +
                                  "'");
  }
  if (digits.size() % 2 != 0)
    throw std::invalid_argument("hex string has an odd number of digits");
  BitVector bits;
  bits.reserve(digits.size() * 4);
  for (int d : digits)
    for (int b = 3; b >= 0; --b) bits.push_back((d >> b) & 1);
  return bits;
}

std::vector<std::uint8_t> bytes_from_bits(const BitVector& bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
  return bytes;
}

std::uint32_t crc32(const BitVector& bits) {
  std::uint32_t crc = 0xFFFFFFFFu;
  const std::size_t n = bits.size();
  for (std::size_t base = 0; base < n; base += 8) {
    const std::size_t take = std::min<std::size_t>(8, n - base);
    // Reflected input: least significant bit of the byte group first.
    for (std::size_t i = 0; i < take; ++i) {
      std::uint32_t bit = bits[base + take - 1 - i] & 1u;
      crc = (crc >> 1) ^ (0xEDB88320u & (0u - ((crc ^ bit) & 1u)));
    }
  }
  return crc ^ 0xFFFFFFFFu;
}

Packet build_payload(const BitVector& data, std::size_t max_payload_bits) {
  if (data.size() > max_payload_bits)
    throw std::invalid_argument("payload too long: " +
                                std::to_string(data.size()) + " > " +
                                std::to_string(max_payload_bits) + " bits");
  for (auto b : data)
    if (b > 1) throw std::invalid_argument("payload contains a non-bit value");
  Packet p;
  p.payload = data;
  const std::uint32_t c = crc32(data);
  p.crc.resize(32);
  for (int i = 0; i < 32; ++i) p.crc[i] = (c >> (31 - i)) & 1u;
  return p;
}

bool verify_payload(const Packet& packet) {
  if (packet.crc.size() != 32) return false;
  const std::uint32_t c = crc32(packet.payload);
  for (int i = 0; i < 32; ++i)
    if (packet.crc[i] != ((c >> (31 - i)) & 1u)) return false;
  return true;
}

int bits_per_symbol(int m) {
  switch (m) {
    case 2: return 1;
    case 4: return 2;
    case 16: return 4;
    case 64: return 6;
    case 256: return 8;
    case 1024: return 10;
    default:
      throw std::invalid_argument("unsupported constellation size " +
                                  std::to_string(m));
  }
}

std::vector<int> group_bits(const BitVector& bits, int m) {
  const int bps = bits_per_symbol(m);
  const std::size_t n_sym = (bits.size() + bps - 1) / bps;
  std::vector<int> indices(n_sym, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1)
      throw std::invalid_argument("bit vector contains a non-bit value");
    const std::size_t sym = i / bps;
    const int pos = bps - 1 - static_cast<int>(i % bps);
    indices[sym] |= static_cast<int>(bits[i]) << pos;
  }
  return indices;
}

BitVector ungroup_bits(const std::vector<int>& indices, int m) {
  const int bps = bits_per_symbol(m);
  BitVector bits;
  bits.reserve(indices.size() * bps);
  for (int idx : indices) {
    if (idx < 0 || idx >= m)
      throw std::invalid_argument("symbol index out of range");
    for (int b = bps - 1; b >= 0; --b) bits.push_back((idx >> b) & 1);
  }
  return bits;
}

}  // namespace nusmodem
