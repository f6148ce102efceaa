#include "keysel/skipgram.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "keysel/error.hpp"

namespace keysel {

EmbeddingModel::EmbeddingModel(std::vector<std::string> tokens, std::vector<double> vectors,
                               int dim)
    : tokens_(std::move(tokens)), vectors_(std::move(vectors)), dim_(dim) {
  if (dim_ < 1 || vectors_.size() != tokens_.size() * static_cast<std::size_t>(dim_)) {
    throw Error(ErrorCode::kInvalidArgument, "embedding matrix does not match vocabulary");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate embedding token '" + tokens_[i] + "'");
    }
  }
  if (!std::all_of(vectors_.begin(), vectors_.end(), [](double v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::kData, "embedding contains non-finite values");
  }
}

std::span<const double> EmbeddingModel::vector(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw Error(ErrorCode::kNotFound, "token '" + token + "' not in model");
  return row(it->second);
}

void EmbeddingModel::write_text(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    out << tokens_[i];
    for (double v : row(i)) out << ' ' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

EmbeddingModel EmbeddingModel::read_text(std::istream& in) {
  std::vector<std::string> tokens;
  std::vector<double> values;
  int dim = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    int count = 0;
    double v = 0;
    while (fields >> v) {
      values.push_back(v);
      ++count;
    }
    if (!fields.eof()) {
      throw Error(ErrorCode::kData, "model line " + std::to_string(line_no) + ": bad number");
    }
    if (dim < 0) dim = count;
    if (count != dim || count == 0) {
      throw Error(ErrorCode::kData, "model line " + std::to_string(line_no) + ": wrong width");
    }
    tokens.push_back(std::move(token));
  }
  if (dim < 0) throw Error(ErrorCode::kData, "empty embedding model");
  return EmbeddingModel(std::move(tokens), std::move(values), dim);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

namespace {

double sigmoid(double x) {
  if (x > 30) return 1.0;
  if (x < -30) return 0.0;
  return 1.0 / (1.0 + std::exp(-x));
}

}  // namespace

EmbeddingModel train_skipgram(std::span<const TokenizedDoc> corpus,
                              const SkipGramParams& params) {
  if (params.dim < 2) throw Error(ErrorCode::kInvalidArgument, "embedding dim must be >= 2");
  if (params.window < 1 || params.negatives < 0 || params.epochs < 1 ||
      !(params.learning_rate > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid skip-gram parameters");
  }

  std::map<std::string, std::size_t> counts;
  for (const auto& d : corpus) {
    for (const auto& tok : d.tokens) ++counts[tok];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [tok, c] : counts) {
    if (c >= static_cast<std::size_t>(std::max(params.min_count, 1))) kept.emplace_back(tok, c);
  }
  if (kept.empty()) throw Error(ErrorCode::kData, "corpus too small");
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<std::string> vocab;
  std::unordered_map<std::string, int> index;
  std::vector<double> noise_weights;
  for (auto& [tok, c] : kept) {
    index.emplace(tok, static_cast<int>(vocab.size()));
    vocab.push_back(tok);
    noise_weights.push_back(std::pow(static_cast<double>(c), 0.75));
  }

  std::vector<std::vector<int>> docs;
  std::size_t total_tokens = 0;
  for (const auto& d : corpus) {
    std::vector<int> ids;
    for (const auto& tok : d.tokens) {
      if (auto it = index.find(tok); it != index.end()) ids.push_back(it->second);
    }
    total_tokens += ids.size();
    docs.push_back(std::move(ids));
  }

  const std::size_t dim = static_cast<std::size_t>(params.dim);
  std::mt19937_64 rng(params.rng_seed);
  std::uniform_real_distribution<double> init(-0.5 / params.dim, 0.5 / params.dim);
  std::vector<double> input(vocab.size() * dim);
  for (double& v : input) v = init(rng);
  std::vector<double> output(vocab.size() * dim, 0.0);
  std::discrete_distribution<int> noise(noise_weights.begin(), noise_weights.end());
  std::uniform_int_distribution<int> shrink(1, params.window);

  const double total_steps = static_cast<double>(total_tokens) * params.epochs + 1.0;
  double step = 0;
  std::vector<double> grad(dim);
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (const auto& ids : docs) {
      for (std::size_t i = 0; i < ids.size(); ++i, ++step) {
        const double lr =
            params.learning_rate * std::max(1e-4, 1.0 - step / total_steps);
        const int reach = shrink(rng);
        const std::size_t lo = i >= static_cast<std::size_t>(reach) ? i - reach : 0;
        const std::size_t hi = std::min(ids.size() - 1, i + reach);
        double* center = &input[ids[i] * dim];
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          std::fill(grad.begin(), grad.end(), 0.0);
          for (int k = 0; k <= params.negatives; ++k) {
            int target = ids[j];
            double label = 1.0;
            if (k > 0) {
              target = noise(rng);
              if (target == ids[j]) continue;
              label = 0.0;
            }
            double* out = &output[target * dim];
            double dot = 0;
            for (std::size_t c = 0; c < dim; ++c) dot += center[c] * out[c];
            const double g = (label - sigmoid(dot)) * lr;
            for (std::size_t c = 0; c < dim; ++c) {
              grad[c] += g * out[c];
              out[c] += g * center[c];
            }
          }
          for (std::size_t c = 0; c < dim; ++c) center[c] += grad[c];
        }
      }
    }
  }
  return EmbeddingModel(std::move(vocab), std::move(input), params.dim);
}

std::vector<RankedKeyword> embedding_rank(const EmbeddingModel& model,
                                          const std::set<std::string>& seeds,
                                          const CandidateFilter& filter, std::size_t limit) {
  std::vector<double> centroid(static_cast<std::size_t>(model.dim()), 0.0);
  std::size_t present = 0;
  for (const auto& s : seeds) {
    if (!model.contains(s)) continue;
    const auto v = model.vector(s);
    for (std::size_t c = 0; c < centroid.size(); ++c) centroid[c] += v[c];
    ++present;
  }
  if (present == 0) throw Error(ErrorCode::kData, "seeds out of vocabulary");
  for (double& c : centroid) c /= static_cast<double>(present);

  std::vector<RankedKeyword> ranking;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto& tok = model.tokens()[i];
    if (!filter.admits(tok)) continue;
    ranking.push_back({tok, cosine(model.row(i), centroid)});
  }
  sort_ranking(ranking);
  if (ranking.size() > limit) ranking.resize(limit);
  return ranking;
}

}  // namespace keysel
