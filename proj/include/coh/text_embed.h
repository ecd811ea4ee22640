// coh/text_embed.h
//
// Sentence embeddings from a word-vector table in the usual text format
// (token followed by D floats per line). Out-of-vocabulary tokens map to
// deterministic pseudo-vectors derived from a seeded hash so that distinct
// unknown words keep distinct representations.

#ifndef COH_TEXT_EMBED_H_
#define COH_TEXT_EMBED_H_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace coh::text {

std::vector<std::string> tokenize(const std::string& text);

class VectorTable {
 public:
  static VectorTable load(const std::string& path);

  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }
  double mean_norm() const { return mean_norm_; }

  // nullptr when the token is out of vocabulary.
  const std::vector<double>* lookup(const std::string& token) const;

  void insert(const std::string& token, std::vector<double> v);
  void finalize();  // recompute mean_norm after inserts

 private:
  int dim_ = 0;
  double mean_norm_ = 0.0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

struct TextEmbedding {
  std::vector<double> values;
  bool empty_input = false;  // no tokens: values is the zero vector
};

inline constexpr uint64_t kDefaultOovSeed = 0x5eed0u;

// Deterministic pseudo-vector for an OOV token, scaled to the table's mean
// vector norm.
std::vector<double> oov_vector(const std::string& token, int dim,
                               double target_norm, uint64_t oov_seed);

// Mean of per-token vectors. OOV tokens use oov_vector; an empty token list
// yields the zero vector with empty_input set.
TextEmbedding embed_sentence_text(const std::vector<std::string>& tokens,
                                  const VectorTable& table,
                                  uint64_t oov_seed = kDefaultOovSeed);

}  // namespace coh::text

#endif  // COH_TEXT_EMBED_H_
