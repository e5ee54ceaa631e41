// nusmodem/wav.h
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

#ifndef NUSMODEM_WAV_H_
#define NUSMODEM_WAV_H_

#include <string>

#include "nusmodem/signal.h"

namespace nusmodem {

// Mono 16-bit linear PCM.  Samples are clipped to [-1, 1) on write.
void write_wav(const std::string& path, const PassbandWaveform& wave);

// Reads mono 16-bit PCM or 32-bit IEEE float.  Anything else (stereo,
// other bit depths, compressed formats) is rejected.
PassbandWaveform read_wav(const std::string& path);

}  // namespace nusmodem

#endif  // NUSMODEM_WAV_H_
