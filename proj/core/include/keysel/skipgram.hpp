#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "keysel/text.hpp"

namespace keysel {

struct SkipGramParams {
  int dim = 32;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  int min_count = 2;
  std::uint64_t rng_seed = 1;
};

/// Word vectors indexed by token.
class EmbeddingModel {
 public:
  EmbeddingModel() = default;
  /// `vectors` is row-major, one row of `dim` values per token.
  EmbeddingModel(std::vector<std::string> tokens, std::vector<double> vectors, int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  bool contains(const std::string& token) const { return index_.count(token) > 0; }
  /// Throws Error(kNotFound) for unknown tokens.
  std::span<const double> vector(const std::string& token) const;
  std::span<const double> row(std::size_t i) const {
    return {vectors_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& data() const { return vectors_; }

  /// One line per token: the token followed by `dim` decimals.
  void write_text(std::ostream& out) const;
  static EmbeddingModel read_text(std::istream& in);

  bool operator==(const EmbeddingModel& other) const {
    return dim_ == other.dim_ && tokens_ == other.tokens_ && vectors_ == other.vectors_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> vectors_;
  int dim_ = 0;
};

/// Cosine similarity; 0 when either vector has zero norm.
double cosine(std::span<const double> a, std::span<const double> b);

/// Skip-gram with negative sampling, single-threaded and deterministic for a
/// fixed seed. Throws Error(kData, "corpus too small") if no token reaches
/// min_count, Error(kInvalidArgument) on bad parameters.
EmbeddingModel train_skipgram(std::span<const TokenizedDoc> corpus, const SkipGramParams& params);

/// Ranks admitted vocabulary tokens by cosine to the mean of the seed vectors.
/// Seeds missing from the vocabulary are ignored; throws
/// Error(kData, "seeds out of vocabulary") if none is present.
std::vector<RankedKeyword> embedding_rank(const EmbeddingModel& model,
                                          const std::set<std::string>& seeds,
                                          const CandidateFilter& filter, std::size_t limit);

}  // namespace keysel
