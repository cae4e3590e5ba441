// Copyright 2026 The cochlear-bank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// RIFF/WAVE input and output, mono downmix, and band-limited resampling.

#ifndef COCHLEAR_WAV_HPP_
#define COCHLEAR_WAV_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace cochlear {

struct AudioBuffer {
  std::vector<double> samples;  // mono, in [-1, 1]
  double sample_rate = 0.0;
  std::string source_path;

  double duration() const {
    return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

enum class SampleFormat { kPcm16, kPcm24, kPcm32, kFloat32 };

// PCM 16/24/32-bit integer or 32-bit float, plain or WAVE_FORMAT_EXTENSIBLE.
// Channels are averaged. Integer data is scaled by 2^-(bits-1); float data
// whose peak exceeds 1 is divided by its peak. Throws IoFailure,
// CorruptHeader or UnsupportedFormat.
AudioBuffer read_wav(const std::filesystem::path& path);

// Mono output. Integer formats clip to the representable range.
void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer,
               SampleFormat format = SampleFormat::kPcm16);

// Windowed-sinc interpolation: 64 taps at the lower of the two rates,
// Kaiser window (beta 8), cutoff at the lower Nyquist frequency. Weights
// are renormalized over the taps that fall inside the signal, so DC is
// preserved exactly. Equal rates return the input unchanged.
AudioBuffer resample(const AudioBuffer& buffer, double target_rate);

}  // namespace cochlear

#endif  // COCHLEAR_WAV_HPP_
