// nusmodem/bits.h
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

#ifndef NUSMODEM_BITS_H_
#define NUSMODEM_BITS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace nusmodem {

// One bit per element, each 0 or 1.
using BitVector = std::vector<std::uint8_t>;

// Byte-to-bit expansion, most significant bit of each byte first.
BitVector bits_from_bytes(const std::uint8_t* data, std::size_t n);
BitVector bits_from_bytes(const std::vector<std::uint8_t>& bytes);

// Hex string ("a3 01..." whitespace ignored, case-insensitive) to bits.
// Throws std::invalid_argument on non-hex characters or odd digit count.
BitVector bits_from_hex(const std::string& hex);

// Inverse of bits_from_bytes; a trailing partial byte is zero-padded.
std::vector<std::uint8_t> bytes_from_bits(const BitVector& bits);

// CRC-32 as used by IEEE 802.3 / zlib: polynomial 0x04C11DB7, initial value
// all-ones, reflected input and output, final xor all-ones.  The bit vector is
// interpreted as a byte stream written MSB-first; within each group of eight
// (and within a trailing partial group) bits are fed to the reflected
// algorithm least significant first, so byte-aligned payloads produce the
// familiar check values ("123456789" -> 0xCBF43926).
std::uint32_t crc32(const BitVector& bits);

struct Packet {
  BitVector payload;
  BitVector crc;  // 32 bits, checksum MSB first
  std::size_t total_bits() const { return payload.size() + crc.size(); }
};

inline constexpr std::size_t kDefaultMaxPayloadBits = 65536;

// Appends the payload CRC. Throws std::invalid_argument when the payload
// exceeds max_payload_bits or contains values other than 0/1.
Packet build_payload(const BitVector& data,
                     std::size_t max_payload_bits = kDefaultMaxPayloadBits);

// Recomputes the CRC over the payload and compares.
bool verify_payload(const Packet& packet);

// Packs bits into symbol indices, log2(m) bits per index, first bit ending up
// in the most significant position.  When the bit count is not divisible by
// log2(m), zero bits are appended first.  m must be a power of two in
// {2, 4, 16, 64, 256, 1024}.
std::vector<int> group_bits(const BitVector& bits, int m);

// Inverse of group_bits (the zero pad, if any, is returned too).
BitVector ungroup_bits(const std::vector<int>& indices, int m);

// log2(m) for the supported constellation sizes; throws on anything else.
int bits_per_symbol(int m);

}  // namespace nusmodem

#endif  // NUSMODEM_BITS_H_
