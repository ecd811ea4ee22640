#include "coh/text_embed.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>

#include "coh/rng.h"
#include "coh/util.h"

namespace coh::text {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      size_t b = i, e = j;
      while (b < e && std::ispunct(static_cast<unsigned char>(text[b]))) ++b;
      while (e > b && std::ispunct(static_cast<unsigned char>(text[e - 1])))
        --e;
      if (e > b) {
        std::string tok;
        tok.reserve(e - b);
        for (size_t k = b; k < e; ++k)
          tok.push_back(static_cast<char>(
              std::tolower(static_cast<unsigned char>(text[k]))));
        tokens.push_back(std::move(tok));
      }
    }
    i = j;
  }
  return tokens;
}

VectorTable VectorTable::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open vector table: " + path);
  VectorTable table;
  std::string line;
  size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    size_t sp = line.find(' ');
    if (sp == std::string::npos || sp == 0)
      throw ConfigError("vector table line " + std::to_string(line_no) +
                        ": expected token followed by floats");
    std::string token = line.substr(0, sp);
    std::vector<double> v;
    if (table.dim_ > 0) v.reserve(table.dim_);
    const char* p = line.data() + sp;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p >= end) break;
      double x;
      auto [next, ec] = std::from_chars(p, end, x);
      if (ec != std::errc())
        throw ConfigError("vector table line " + std::to_string(line_no) +
                          ": bad float near '" + std::string(p, end) + "'");
      v.push_back(x);
      p = next;
    }
    if (table.dim_ == 0) {
      if (v.empty())
        throw ConfigError("vector table line " + std::to_string(line_no) +
                          ": no vector components");
      table.dim_ = static_cast<int>(v.size());
    } else if (static_cast<int>(v.size()) != table.dim_) {
      throw ConfigError("vector table line " + std::to_string(line_no) +
                        ": dimension " + std::to_string(v.size()) +
                        " does not match table dimension " +
                        std::to_string(table.dim_));
    }
    if (table.vectors_.count(token))
      throw ConfigError("vector table line " + std::to_string(line_no) +
                        ": duplicate token '" + token + "'");
    table.vectors_.emplace(std::move(token), std::move(v));
  }
  if (table.vectors_.empty())
    throw ConfigError("vector table is empty: " + path);
  table.finalize();
  return table;
}

const std::vector<double>* VectorTable::lookup(const std::string& token) const {
  auto it = vectors_.find(token);
  return it == vectors_.end() ? nullptr : &it->second;
}

void VectorTable::insert(const std::string& token, std::vector<double> v) {
  if (dim_ == 0) dim_ = static_cast<int>(v.size());
  if (static_cast<int>(v.size()) != dim_)
    throw ConfigError("vector dimension mismatch for token '" + token + "'");
  vectors_[token] = std::move(v);
}

void VectorTable::finalize() {
  double sum = 0.0;
  for (const auto& [tok, v] : vectors_) {
    double sq = 0.0;
    for (double x : v) sq += x * x;
    sum += std::sqrt(sq);
  }
  mean_norm_ = vectors_.empty() ? 0.0 : sum / vectors_.size();
}

std::vector<double> oov_vector(const std::string& token, int dim,
                               double target_norm, uint64_t oov_seed) {
  Rng rng(derive_seed(oov_seed, {fnv1a64(token)}));
  std::vector<double> v(dim);
  double sq = 0.0;
  for (int i = 0; i < dim; ++i) {
    v[i] = rng.uniform(-1.0, 1.0);
    sq += v[i] * v[i];
  }
  double norm = std::sqrt(sq);
  double scale = norm > 1e-12 ? target_norm / norm : 0.0;
  for (double& x : v) x *= scale;
  return v;
}

TextEmbedding embed_sentence_text(const std::vector<std::string>& tokens,
                                  const VectorTable& table,
                                  uint64_t oov_seed) {
  TextEmbedding out;
  out.values.assign(table.dim(), 0.0);
  if (tokens.empty()) {
    out.empty_input = true;
    return out;
  }
  for (const auto& tok : tokens) {
    const std::vector<double>* v = table.lookup(tok);
    std::vector<double> fallback;
    if (v == nullptr) {
      fallback = oov_vector(tok, table.dim(), table.mean_norm(), oov_seed);
      v = &fallback;
    }
    for (int i = 0; i < table.dim(); ++i) out.values[i] += (*v)[i];
  }
  const double inv = 1.0 / static_cast<double>(tokens.size());
  for (double& x : out.values) x *= inv;
  return out;
}

}  // namespace coh::text
