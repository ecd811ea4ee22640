#include "coh/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "coh/util.h"

namespace coh::audio {

namespace {

struct Reader {
  std::ifstream f;
  std::string path;

  explicit Reader(const std::string& p) : f(p, std::ios::binary), path(p) {
    if (!f) throw AudioError("cannot open WAV file: " + p);
  }

  void read(void* dst, size_t n) {
    f.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (!f) throw AudioError("truncated WAV file: " + path);
  }

  uint32_t u32() {
    unsigned char b[4];
    read(b, 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) |
           (static_cast<uint32_t>(b[3]) << 24);
  }

  uint16_t u16() {
    unsigned char b[2];
    read(b, 2);
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
  }

  void skip(uint32_t n) {
    f.seekg(n, std::ios::cur);
    if (!f) throw AudioError("truncated WAV file: " + path);
  }
};

struct Header {
  int sample_rate = 0;
  int channels = 0;
  int bits = 0;
  uint32_t data_bytes = 0;
  std::streampos data_pos;
};

Header parse_header(Reader& r) {
  char tag[4];
  r.read(tag, 4);
  if (std::memcmp(tag, "RIFF", 4) != 0)
    throw AudioError("not a RIFF file: " + r.path);
  r.u32();  // riff size
  r.read(tag, 4);
  if (std::memcmp(tag, "WAVE", 4) != 0)
    throw AudioError("not a WAVE file: " + r.path);

  Header h;
  bool have_fmt = false;
  while (true) {
    if (!r.f.read(tag, 4)) break;
    uint32_t size = r.u32();
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      uint16_t format = r.u16();
      h.channels = r.u16();
      h.sample_rate = static_cast<int>(r.u32());
      r.u32();  // byte rate
      r.u16();  // block align
      h.bits = r.u16();
      if (size > 16) r.skip(size - 16);
      if (format != 1)
        throw AudioError("unsupported WAV encoding (want PCM): " + r.path);
      if (h.bits != 16)
        throw AudioError("unsupported WAV bit depth (want 16): " + r.path);
      if (h.channels < 1 || h.channels > 2)
        throw AudioError("unsupported channel count: " + r.path);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_fmt) throw AudioError("WAV data before fmt chunk: " + r.path);
      h.data_bytes = size;
      h.data_pos = r.f.tellg();
      return h;
    } else {
      r.skip(size + (size & 1));  // chunks are word-aligned
    }
  }
  throw AudioError("WAV file has no data chunk: " + r.path);
}

// Read frames [first, first+count) as channel-averaged mono in [-1, 1].
std::vector<double> read_frames(Reader& r, const Header& h, uint64_t first,
                                uint64_t count) {
  const int ch = h.channels;
  r.f.seekg(h.data_pos + static_cast<std::streamoff>(first * ch * 2));
  std::vector<int16_t> raw(count * ch);
  r.read(raw.data(), raw.size() * 2);
  std::vector<double> out(count);
  constexpr double kScale = 1.0 / 32768.0;
  if (ch == 1) {
    for (uint64_t i = 0; i < count; ++i) out[i] = raw[i] * kScale;
  } else {
    for (uint64_t i = 0; i < count; ++i)
      out[i] = 0.5 * (raw[2 * i] + raw[2 * i + 1]) * kScale;
  }
  return out;
}

}  // namespace

WavInfo probe_wav(const std::string& path) {
  Reader r(path);
  Header h = parse_header(r);
  WavInfo info;
  info.sample_rate = h.sample_rate;
  info.channels = h.channels;
  info.frames = h.data_bytes / (static_cast<uint64_t>(h.channels) * 2);
  return info;
}

Waveform read_wav_mono(const std::string& path) {
  Reader r(path);
  Header h = parse_header(r);
  uint64_t frames = h.data_bytes / (static_cast<uint64_t>(h.channels) * 2);
  Waveform w;
  w.sample_rate = h.sample_rate;
  w.samples = read_frames(r, h, 0, frames);
  return w;
}

std::vector<double> resample_linear(const std::vector<double>& in, int in_rate,
                                    int target_rate) {
  if (in_rate == target_rate) return in;
  if (in.empty()) return {};
  const double ratio = static_cast<double>(in_rate) / target_rate;
  const auto out_len = static_cast<size_t>(
      std::llround(static_cast<double>(in.size()) * target_rate / in_rate));
  std::vector<double> out(out_len);
  for (size_t n = 0; n < out_len; ++n) {
    double p = static_cast<double>(n) * ratio;
    auto i = static_cast<size_t>(p);
    if (i >= in.size() - 1) {
      out[n] = in.back();
    } else {
      double frac = p - static_cast<double>(i);
      out[n] = in[i] + frac * (in[i + 1] - in[i]);
    }
  }
  return out;
}

Waveform read_and_resample(const std::string& path, double start_s,
                           double end_s) {
  if (!(end_s > start_s) || start_s < 0.0)
    throw AudioError("invalid audio region [" + std::to_string(start_s) +
                     ", " + std::to_string(end_s) + ") in " + path);
  Reader r(path);
  Header h = parse_header(r);
  uint64_t total = h.data_bytes / (static_cast<uint64_t>(h.channels) * 2);
  auto first = static_cast<uint64_t>(std::llround(start_s * h.sample_rate));
  auto last = static_cast<uint64_t>(std::llround(end_s * h.sample_rate));
  if (last > total || first >= last)
    throw AudioError("audio region [" + std::to_string(start_s) + ", " +
                     std::to_string(end_s) + ") out of bounds for " + path +
                     " (duration " +
                     std::to_string(static_cast<double>(total) /
                                    h.sample_rate) +
                     " s)");
  std::vector<double> mono = read_frames(r, h, first, last - first);
  Waveform w;
  w.sample_rate = kTargetRate;
  w.samples = resample_linear(mono, h.sample_rate, kTargetRate);
  return w;
}

void write_wav(const std::string& path, const std::vector<double>& samples,
               int sample_rate) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw AudioError("cannot write WAV file: " + path);

  auto put_u32 = [&f](uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8),
                          static_cast<unsigned char>(v >> 16),
                          static_cast<unsigned char>(v >> 24)};
    f.write(reinterpret_cast<char*>(b), 4);
  };
  auto put_u16 = [&f](uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v),
                          static_cast<unsigned char>(v >> 8)};
    f.write(reinterpret_cast<char*>(b), 2);
  };

  const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
  f.write("RIFF", 4);
  put_u32(36 + data_bytes);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  put_u32(16);
  put_u16(1);  // PCM
  put_u16(1);  // mono
  put_u32(static_cast<uint32_t>(sample_rate));
  put_u32(static_cast<uint32_t>(sample_rate * 2));
  put_u16(2);
  put_u16(16);
  f.write("data", 4);
  put_u32(data_bytes);
  for (double s : samples) {
    double clamped = std::clamp(s, -1.0, 1.0);
    auto v = static_cast<int16_t>(std::lround(clamped * 32767.0));
    put_u16(static_cast<uint16_t>(v));
  }
  if (!f) throw AudioError("write failed: " + path);
}

}  // namespace coh::audio
