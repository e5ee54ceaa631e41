// nusmodem/tx.h
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

#ifndef NUSMODEM_TX_H_
#define NUSMODEM_TX_H_

#include <vector>

#include "nusmodem/bits.h"
#include "nusmodem/config.h"
#include "nusmodem/rrc.h"
#include "nusmodem/signal.h"

namespace nusmodem {

// Payload bit rate in bits/s: f_b * log2(M).
double data_rate(const ModemConfig& cfg);

// Packet bits (payload + CRC, zero-padded to a whole number of symbols)
// mapped onto the configured constellation.
std::vector<cplx> packet_symbols(const Packet& packet, const ModemConfig& cfg);

// RRC-shaped Frank pilot at baseband.  Also serves as the receiver's
// correlation template, so transmitter and synchronizer stay consistent.
BasebandSignal pilot_baseband(const ModemConfig& cfg, const FilterTaps& rrc);

// Full packet: shaped pilot, guard silence, shaped data, upconverted with a
// single continuous carrier and peak-normalized to cfg.tx_amplitude.
PassbandWaveform build_packet_waveform(const Packet& packet,
                                       const ModemConfig& cfg);

}  // namespace nusmodem

#endif  // NUSMODEM_TX_H_
