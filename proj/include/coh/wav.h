// coh/wav.h
//
// RIFF WAV reading/writing and resampling. Readers accept PCM 16-bit files,
// mono or stereo (stereo is averaged down to mono), at any source rate;
// everything downstream works on 16 kHz mono.

#ifndef COH_WAV_H_
#define COH_WAV_H_

#include <cstdint>
#include <string>
#include <vector>

namespace coh::audio {

inline constexpr int kTargetRate = 16000;

struct Waveform {
  std::vector<double> samples;  // in [-1, 1]
  int sample_rate = kTargetRate;

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

struct WavInfo {
  int sample_rate = 0;
  int channels = 0;
  uint64_t frames = 0;  // samples per channel
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(frames) / sample_rate : 0.0;
  }
};

// Parse the header only; cheap duration probe for corpus validation.
WavInfo probe_wav(const std::string& path);

// Read the whole file as channel-averaged mono at the file's native rate.
Waveform read_wav_mono(const std::string& path);

// Read the region [start_s, end_s) channel-averaged and resampled to 16 kHz
// by linear interpolation. Throws AudioError when the region falls outside
// the file or the encoding is unsupported.
Waveform read_and_resample(const std::string& path, double start_s,
                           double end_s);

// Linear-interpolation resampling to target_rate.
std::vector<double> resample_linear(const std::vector<double>& in,
                                    int in_rate, int target_rate);

// Write 16-bit PCM mono.
void write_wav(const std::string& path, const std::vector<double>& samples,
               int sample_rate);

}  // namespace coh::audio

#endif  // COH_WAV_H_
