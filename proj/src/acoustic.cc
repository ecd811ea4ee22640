#include "coh/acoustic.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>

#include "coh/util.h"

namespace coh::audio {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Iterative radix-2 FFT, in place. n must be a power of two.
void fft(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * kPi / static_cast<double>(len);
    std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

struct MelBank {
  // weights[band][bin]
  std::vector<std::vector<double>> weights;

  MelBank(const FrameParams& p, int sample_rate) {
    const int bins = p.fft_size / 2 + 1;
    const double bin_hz = static_cast<double>(sample_rate) / p.fft_size;
    const double mel_lo = hz_to_mel(p.mel_low_hz);
    const double mel_hi = hz_to_mel(p.mel_high_hz);
    std::vector<double> edges(kNumMelBands + 2);
    for (int i = 0; i < kNumMelBands + 2; ++i)
      edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (kNumMelBands + 1));
    weights.assign(kNumMelBands, std::vector<double>(bins, 0.0));
    for (int b = 0; b < kNumMelBands; ++b) {
      double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
      for (int k = 0; k < bins; ++k) {
        double f = k * bin_hz;
        if (f > lo && f < mid)
          weights[b][k] = (f - lo) / (mid - lo);
        else if (f >= mid && f < hi)
          weights[b][k] = (hi - f) / (hi - mid);
      }
    }
  }
};

// Normalized autocorrelation pitch detector. Scans local maxima of
// r(l) = sum x[n]x[n+l] / sqrt(E0(l) E1(l)) over the lag range and picks the
// smallest lag whose peak is within 1.5% of the global maximum, which avoids
// octave-down errors at period multiples. Parabolic refinement gives sub-lag
// resolution.
void detect_f0(const double* x, int len, const FrameParams& p, int sample_rate,
               double* f0_out, double* voicing_out) {
  *f0_out = 0.0;
  *voicing_out = 0.0;
  const int lag_min = static_cast<int>(sample_rate / p.f0_max_hz);
  const int lag_max =
      std::min(len - 2, static_cast<int>(sample_rate / p.f0_min_hz));
  if (lag_max <= lag_min) return;

  // Cumulative energy for O(1) denominators.
  std::vector<double> cum(len + 1, 0.0);
  for (int n = 0; n < len; ++n) cum[n + 1] = cum[n] + x[n] * x[n];
  if (cum[len] < 1e-12) return;  // silence

  std::vector<double> r(lag_max + 1, 0.0);
  for (int l = lag_min - 1; l <= lag_max + 1 && l < len; ++l) {
    if (l < 1) continue;
    const int m = len - l;
    double num = 0.0;
    for (int n = 0; n < m; ++n) num += x[n] * x[n + l];
    double e0 = cum[m];
    double e1 = cum[len] - cum[l];
    double den = std::sqrt(e0 * e1);
    if (static_cast<size_t>(l) < r.size())
      r[l] = den > 1e-12 ? num / den : 0.0;
  }

  double r_max = 0.0;
  for (int l = lag_min; l <= lag_max; ++l) r_max = std::max(r_max, r[l]);
  if (r_max <= p.voicing_threshold) return;

  int best = 0;
  for (int l = lag_min; l <= lag_max; ++l) {
    bool local_max = r[l] >= r[l - 1] && (l + 1 > lag_max || r[l] >= r[l + 1]);
    if (local_max && r[l] >= 0.985 * r_max) {
      best = l;
      break;
    }
  }
  if (best == 0) return;

  // Parabolic peak interpolation.
  double refined = best;
  if (best > lag_min && best < lag_max) {
    double denom = r[best - 1] - 2.0 * r[best] + r[best + 1];
    if (std::abs(denom) > 1e-12) {
      double delta = 0.5 * (r[best - 1] - r[best + 1]) / denom;
      if (std::abs(delta) <= 1.0) refined = best + delta;
    }
  }
  double f0 = sample_rate / refined;
  *f0_out = std::clamp(f0, p.f0_min_hz, p.f0_max_hz);
  *voicing_out = 1.0;
}

}  // namespace

std::array<double, kNumFrameFeatures> FrameFeatures::as_array() const {
  std::array<double, kNumFrameFeatures> a;
  a[0] = log_energy;
  a[1] = zero_crossing_rate;
  a[2] = f0_hz;
  a[3] = voicing;
  a[4] = spectral_centroid_hz;
  for (int b = 0; b < kNumMelBands; ++b) a[5 + b] = log_mel[b];
  return a;
}

std::vector<FrameFeatures> extract_frame_features(const Waveform& w,
                                                  const FrameParams& p) {
  const int len = static_cast<int>(w.samples.size());
  if (len < p.frame_len)
    throw AudioError("waveform too short for one frame (" +
                     std::to_string(len) + " samples, need " +
                     std::to_string(p.frame_len) + ")");

  const int n_frames = (len - p.frame_len) / p.hop + 1;
  const int bins = p.fft_size / 2 + 1;
  const double bin_hz = static_cast<double>(w.sample_rate) / p.fft_size;

  static thread_local std::vector<double> hann;
  if (static_cast<int>(hann.size()) != p.frame_len) {
    hann.resize(p.frame_len);
    for (int n = 0; n < p.frame_len; ++n)
      hann[n] = 0.5 - 0.5 * std::cos(2.0 * kPi * n / (p.frame_len - 1));
  }
  MelBank mel(p, w.sample_rate);

  std::vector<FrameFeatures> out(n_frames);
  std::vector<std::complex<double>> buf(p.fft_size);
  for (int t = 0; t < n_frames; ++t) {
    const double* x = w.samples.data() + static_cast<size_t>(t) * p.hop;
    FrameFeatures& ff = out[t];

    double energy = 0.0;
    int crossings = 0;
    for (int n = 0; n < p.frame_len; ++n) {
      energy += x[n] * x[n];
      if (n > 0 && ((x[n] >= 0.0) != (x[n - 1] >= 0.0))) ++crossings;
    }
    energy /= p.frame_len;
    ff.log_energy = std::log(std::max(energy, p.energy_floor));
    ff.zero_crossing_rate =
        static_cast<double>(crossings) / (p.frame_len - 1);

    detect_f0(x, p.frame_len, p, w.sample_rate, &ff.f0_hz, &ff.voicing);

    for (int n = 0; n < p.fft_size; ++n)
      buf[n] = n < p.frame_len ? std::complex<double>(x[n] * hann[n], 0.0)
                               : std::complex<double>(0.0, 0.0);
    fft(buf);

    double mag_sum = 0.0, weighted = 0.0;
    for (int k = 0; k < bins; ++k) {
      double mag = std::abs(buf[k]);
      mag_sum += mag;
      weighted += mag * k * bin_hz;
    }
    ff.spectral_centroid_hz = mag_sum > 1e-12 ? weighted / mag_sum : 0.0;

    for (int b = 0; b < kNumMelBands; ++b) {
      double e = 0.0;
      const auto& wts = mel.weights[b];
      for (int k = 0; k < bins; ++k) e += wts[k] * std::abs(buf[k]);
      ff.log_mel[b] = std::log(std::max(e, p.energy_floor));
    }
  }
  return out;
}

std::vector<double> pool_frames(const std::vector<FrameFeatures>& frames) {
  std::vector<double> mean(kNumFrameFeatures, 0.0);
  std::vector<double> sq(kNumFrameFeatures, 0.0);
  for (const auto& f : frames) {
    auto a = f.as_array();
    for (int i = 0; i < kNumFrameFeatures; ++i) {
      mean[i] += a[i];
      sq[i] += a[i] * a[i];
    }
  }
  const double n = static_cast<double>(frames.size());
  std::vector<double> out(kEmbeddingDim);
  for (int i = 0; i < kNumFrameFeatures; ++i) {
    double m = mean[i] / n;
    double var = std::max(0.0, sq[i] / n - m * m);
    out[i] = m;
    out[kNumFrameFeatures + i] = std::sqrt(var);
  }
  return out;
}

std::vector<double> embed_sentence_audio(const Waveform& w,
                                         const FrameParams& p) {
  return pool_frames(extract_frame_features(w, p));
}

// --- feature cache file ------------------------------------------------

namespace {

void put_bytes(std::ofstream& f, const void* p, size_t n) {
  f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

template <typename T>
void put_pod(std::ofstream& f, T v) {
  put_bytes(f, &v, sizeof(v));
}

template <typename T>
T get_pod(std::ifstream& f, const std::string& path) {
  T v;
  f.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!f) throw AudioError("truncated feature cache: " + path);
  return v;
}

}  // namespace

void write_feature_cache(const std::string& path,
                         const std::vector<FeatureCacheEntry>& entries,
                         int dim) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw AudioError("cannot write feature cache: " + path);
  put_bytes(f, "COHFEAT1", 8);
  put_pod<uint32_t>(f, 1);
  put_pod<uint32_t>(f, static_cast<uint32_t>(dim));
  put_pod<uint64_t>(f, entries.size());
  for (const auto& e : entries) {
    if (static_cast<int>(e.values.size()) != dim)
      throw AudioError("feature cache entry dim mismatch for key " + e.key);
    put_pod<uint32_t>(f, static_cast<uint32_t>(e.key.size()));
    put_bytes(f, e.key.data(), e.key.size());
    put_bytes(f, e.values.data(), e.values.size() * sizeof(double));
  }
  if (!f) throw AudioError("write failed: " + path);
}

std::vector<FeatureCacheEntry> read_feature_cache(const std::string& path,
                                                  int expect_dim) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw AudioError("cannot open feature cache: " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, "COHFEAT1", 8) != 0)
    throw AudioError("bad feature cache magic: " + path);
  auto version = get_pod<uint32_t>(f, path);
  if (version != 1)
    throw AudioError("unsupported feature cache version " +
                     std::to_string(version) + ": " + path);
  auto dim = get_pod<uint32_t>(f, path);
  if (expect_dim > 0 && static_cast<int>(dim) != expect_dim)
    throw AudioError("feature cache dim " + std::to_string(dim) +
                     " does not match expected " + std::to_string(expect_dim) +
                     ": " + path);
  auto count = get_pod<uint64_t>(f, path);
  std::vector<FeatureCacheEntry> out;
  out.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    auto key_len = get_pod<uint32_t>(f, path);
    FeatureCacheEntry e;
    e.key.resize(key_len);
    f.read(e.key.data(), key_len);
    e.values.resize(dim);
    f.read(reinterpret_cast<char*>(e.values.data()), dim * sizeof(double));
    if (!f) throw AudioError("truncated feature cache: " + path);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace coh::audio
