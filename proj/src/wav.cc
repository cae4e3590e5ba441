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

#include "cochlear/wav.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "cochlear/error.hpp"

namespace cochlear {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  ByteReader(const std::vector<unsigned char>& bytes, std::string path)
      : bytes_(bytes), path_(std::move(path)) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t pos() const { return pos_; }

  void need(std::size_t n) const {
    if (remaining() < n) {
      fail(ErrorCode::kCorruptHeader, path_ + ": unexpected end of file");
    }
  }
  std::string tag() {
    need(4);
    std::string t(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                  bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + 4));
    pos_ += 4;
    return t;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | bytes_[pos_ + static_cast<std::size_t>(i)];
    pos_ += 4;
    return v;
  }
  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }

 private:
  const std::vector<unsigned char>& bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

struct Format {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

double decode(const unsigned char* p, const Format& f) {
  switch (f.bits) {
    case 16: {
      const auto v = static_cast<std::int16_t>(p[0] | (p[1] << 8));
      return v / 32768.0;
    }
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    default: {
      std::uint32_t u = 0;
      for (int i = 3; i >= 0; --i) u = (u << 8) | p[i];
      if (f.tag == kFormatFloat) return static_cast<double>(std::bit_cast<float>(u));
      return static_cast<std::int32_t>(u) / 2147483648.0;
    }
  }
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

AudioBuffer read_wav(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + name);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIoFailure, "cannot read " + name);

  ByteReader r(bytes, name);
  if (bytes.size() < 12) fail(ErrorCode::kCorruptHeader, name + ": too short for a RIFF header");
  if (r.tag() != "RIFF") fail(ErrorCode::kUnsupportedFormat, name + ": not a RIFF file");
  r.u32();
  if (r.tag() != "WAVE") fail(ErrorCode::kUnsupportedFormat, name + ": not a WAVE file");

  std::optional<Format> fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  while (r.remaining() >= 8 && data == nullptr) {
    const std::string id = r.tag();
    const std::uint32_t size = r.u32();
    if (id == "fmt ") {
      if (size < 16) fail(ErrorCode::kCorruptHeader, name + ": fmt chunk too small");
      r.need(size);
      const std::size_t start = r.pos();
      Format f;
      f.tag = r.u16();
      f.channels = r.u16();
      f.rate = r.u32();
      r.u32();  // byte rate
      f.block_align = r.u16();
      f.bits = r.u16();
      if (f.tag == kFormatExtensible) {
        if (size < 40) fail(ErrorCode::kCorruptHeader, name + ": extensible fmt chunk too small");
        r.u16();  // cbSize
        r.u16();  // valid bits
        r.u32();  // channel mask
        f.tag = r.u16();  // leading two bytes of the subformat GUID
      }
      r.skip(size - (r.pos() - start));
      fmt = f;
    } else if (id == "data") {
      if (!fmt) fail(ErrorCode::kCorruptHeader, name + ": data chunk before fmt chunk");
      data_size = std::min<std::size_t>(size, r.remaining());
      if (data_size < size) {
        spdlog::warn("{}: data chunk declares {} bytes, {} present", name, size, data_size);
      }
      data = bytes.data() + r.pos();
    } else {
      r.skip(std::min<std::size_t>(size + (size & 1u), r.remaining()));
    }
  }
  if (!fmt) fail(ErrorCode::kCorruptHeader, name + ": missing fmt chunk");
  if (data == nullptr) fail(ErrorCode::kCorruptHeader, name + ": missing data chunk");

  const Format& f = *fmt;
  const bool pcm_ok = f.tag == kFormatPcm && (f.bits == 16 || f.bits == 24 || f.bits == 32);
  const bool float_ok = f.tag == kFormatFloat && f.bits == 32;
  if (!pcm_ok && !float_ok) {
    fail(ErrorCode::kUnsupportedFormat,
         name + ": format " + std::to_string(f.tag) + " with " +
             std::to_string(f.bits) + " bits is not supported");
  }
  if (f.channels == 0 || f.rate == 0) {
    fail(ErrorCode::kCorruptHeader, name + ": zero channels or sample rate");
  }
  const std::size_t width = f.bits / 8u;
  if (f.block_align != width * f.channels) {
    fail(ErrorCode::kCorruptHeader, name + ": inconsistent block alignment");
  }

  AudioBuffer out;
  out.sample_rate = f.rate;
  out.source_path = name;
  const std::size_t frames = data_size / f.block_align;
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double sum = 0.0;
    for (std::size_t c = 0; c < f.channels; ++c) {
      sum += decode(data + i * f.block_align + c * width, f);
    }
    const double v = sum / f.channels;
    if (!std::isfinite(v)) {
      fail(ErrorCode::kUnsupportedFormat, name + ": non-finite sample values");
    }
    out.samples[i] = v;
  }
  if (f.tag == kFormatFloat) {
    double peak = 0.0;
    for (double v : out.samples) peak = std::max(peak, std::abs(v));
    if (peak > 1.0) {
      for (double& v : out.samples) v /= peak;
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& buffer,
               SampleFormat format) {
  const auto rate = static_cast<std::uint32_t>(std::lround(buffer.sample_rate));
  if (rate == 0) fail(ErrorCode::kInvalidArgument, "sample rate must be positive");
  std::uint16_t bits = 16;
  std::uint16_t tag = kFormatPcm;
  switch (format) {
    case SampleFormat::kPcm16: bits = 16; break;
    case SampleFormat::kPcm24: bits = 24; break;
    case SampleFormat::kPcm32: bits = 32; break;
    case SampleFormat::kFloat32: bits = 32; tag = kFormatFloat; break;
  }
  const std::uint32_t width = bits / 8u;
  const auto data_bytes = static_cast<std::uint32_t>(buffer.samples.size() * width);

  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, tag);
  put_u16(out, 1);
  put_u32(out, rate);
  put_u32(out, rate * width);
  put_u16(out, static_cast<std::uint16_t>(width));
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double v : buffer.samples) {
    if (!std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "non-finite sample");
    if (format == SampleFormat::kFloat32) {
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      continue;
    }
    const double full = std::ldexp(1.0, bits - 1);
    const double q = std::clamp(std::round(v * full), -full, full - 1.0);
    const auto u = static_cast<std::uint32_t>(static_cast<std::int64_t>(q));
    for (std::uint32_t b = 0; b < width; ++b) {
      out.push_back(static_cast<unsigned char>((u >> (8 * b)) & 0xFF));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorCode::kIoFailure, "cannot create " + path.string());
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) fail(ErrorCode::kIoFailure, "cannot write " + path.string());
}

AudioBuffer resample(const AudioBuffer& buffer, double target_rate) {
  if (!(target_rate > 0.0) || !std::isfinite(target_rate)) {
    fail(ErrorCode::kInvalidArgument, "target sample rate must be positive");
  }
  if (!(buffer.sample_rate > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "source sample rate must be positive");
  }
  if (target_rate == buffer.sample_rate) return buffer;

  constexpr double kTaps = 64.0;
  constexpr double kBeta = 8.0;
  const double src = buffer.sample_rate;
  const double ratio = std::min(1.0, target_rate / src);  // cutoff, cycles per input sample * 2
  const double half_width = 0.5 * kTaps / ratio;           // in input samples
  const std::size_t n = buffer.samples.size();
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(n) * target_rate / src));

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.source_path = buffer.source_path;
  out.samples.resize(out_len);
  const auto& s = buffer.samples;
  const double window_norm = std::cyl_bessel_i(0.0, kBeta);
  auto weight = [&](double u) {
    if (std::abs(u) >= half_width) return 0.0;
    const double r = u / half_width;
    return ratio * sinc(ratio * u) *
           std::cyl_bessel_i(0.0, kBeta * std::sqrt(1.0 - r * r)) / window_norm;
  };
  // Taps that fall off either end are dropped and the rest renormalized.
  auto apply = [&](std::ptrdiff_t first, const double* w, std::size_t taps) {
    double acc = 0.0;
    double norm = 0.0;
    for (std::size_t j = 0; j < taps; ++j) {
      const std::ptrdiff_t i = first + static_cast<std::ptrdiff_t>(j);
      if (i < 0 || i >= static_cast<std::ptrdiff_t>(n)) continue;
      acc += w[j] * s[static_cast<std::size_t>(i)];
      norm += w[j];
    }
    return norm != 0.0 ? acc / norm : 0.0;
  };
  const auto taps = static_cast<std::size_t>(2.0 * std::ceil(half_width) + 1.0);
  const auto out_count = static_cast<std::ptrdiff_t>(out_len);

  // Integer rates repeat the fractional phase with period up, so the
  // weights are tabulated once per phase.
  constexpr std::int64_t kMaxPhases = 1 << 16;
  const bool integral = src == std::floor(src) && target_rate == std::floor(target_rate) &&
                        src < 1e9 && target_rate < 1e9;
  const std::int64_t g =
      integral ? std::gcd(static_cast<std::int64_t>(src), static_cast<std::int64_t>(target_rate))
               : 1;
  const std::int64_t up = static_cast<std::int64_t>(target_rate) / g;
  const std::int64_t down = static_cast<std::int64_t>(src) / g;
  if (integral && up <= kMaxPhases) {
    const auto lead = static_cast<std::ptrdiff_t>(std::ceil(half_width));
    std::vector<double> table(static_cast<std::size_t>(up) * taps);
    for (std::int64_t p = 0; p < up; ++p) {
      const double frac = static_cast<double>(p) / static_cast<double>(up);
      for (std::size_t j = 0; j < taps; ++j) {
        const double u = frac + static_cast<double>(lead) - static_cast<double>(j);
        table[static_cast<std::size_t>(p) * taps + j] = weight(u);
      }
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t m = 0; m < out_count; ++m) {
      const std::int64_t pos = static_cast<std::int64_t>(m) * down;
      const std::int64_t q = pos / up;
      const std::int64_t p = pos % up;
      out.samples[static_cast<std::size_t>(m)] =
          apply(static_cast<std::ptrdiff_t>(q) - lead,
                table.data() + static_cast<std::size_t>(p) * taps, taps);
    }
    return out;
  }

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < out_count; ++m) {
    const double x = static_cast<double>(m) * src / target_rate;
    const auto first = static_cast<std::ptrdiff_t>(std::ceil(x - half_width));
    std::vector<double> w(taps);
    for (std::size_t j = 0; j < taps; ++j) w[j] = weight(x - static_cast<double>(first) - static_cast<double>(j));
    out.samples[static_cast<std::size_t>(m)] = apply(first, w.data(), taps);
  }
  return out;
}

}  // namespace cochlear
