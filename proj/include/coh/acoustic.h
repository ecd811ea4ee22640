// coh/acoustic.h
//
// Deterministic prosodic/spectral sentence embeddings. A sentence's audio
// region becomes per-frame features (energy, zero crossings, F0, voicing,
// spectral centroid, 12 log mel energies) pooled to a fixed-size vector of
// per-feature mean and standard deviation. This sits behind a plain function
// interface so a learned encoder could be substituted without touching
// callers.

#ifndef COH_ACOUSTIC_H_
#define COH_ACOUSTIC_H_

#include <array>
#include <string>
#include <vector>

#include "coh/wav.h"

namespace coh::audio {

inline constexpr int kNumMelBands = 12;
inline constexpr int kNumFrameFeatures = 5 + kNumMelBands;  // F = 17
inline constexpr int kEmbeddingDim = 2 * kNumFrameFeatures;

struct FrameParams {
  int frame_len = 400;       // 25 ms at 16 kHz
  int hop = 160;             // 10 ms
  int fft_size = 512;
  double f0_min_hz = 50.0;
  double f0_max_hz = 400.0;
  double voicing_threshold = 0.3;   // normalized autocorrelation peak
  double energy_floor = 1e-10;      // applied before log
  double mel_low_hz = 0.0;
  double mel_high_hz = 8000.0;
};

struct FrameFeatures {
  double log_energy = 0.0;
  double zero_crossing_rate = 0.0;
  double f0_hz = 0.0;  // 0 when unvoiced, else in [f0_min, f0_max]
  double voicing = 0.0;
  double spectral_centroid_hz = 0.0;
  std::array<double, kNumMelBands> log_mel{};

  std::array<double, kNumFrameFeatures> as_array() const;
};

// Frame layout: floor((len - frame_len) / hop) + 1 frames. Throws AudioError
// when the waveform is shorter than one frame.
std::vector<FrameFeatures> extract_frame_features(
    const Waveform& w, const FrameParams& params = {});

// Mean and standard deviation of every frame feature; dim = 2F = 34.
std::vector<double> embed_sentence_audio(const Waveform& w,
                                         const FrameParams& params = {});

std::vector<double> pool_frames(const std::vector<FrameFeatures>& frames);

// --- feature cache file ------------------------------------------------
//
// Binary layout, little-endian:
//   magic "COHFEAT1" (8 bytes), u32 version (= 1), u32 dim, u64 count,
//   then per entry: u32 key length, key bytes, dim f64 values.

struct FeatureCacheEntry {
  std::string key;
  std::vector<double> values;
};

void write_feature_cache(const std::string& path,
                         const std::vector<FeatureCacheEntry>& entries,
                         int dim);
std::vector<FeatureCacheEntry> read_feature_cache(const std::string& path,
                                                  int expect_dim);

}  // namespace coh::audio

#endif  // COH_ACOUSTIC_H_
