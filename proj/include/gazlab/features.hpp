#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gazlab/corpus.hpp"
#include "gazlab/gazetteer.hpp"
#include "gazlab/matcher.hpp"

namespace gazlab {

enum class FeatureMode { Baseline, GazDiscrete, GazDense };

// "baseline" | "baseline+gaz-discrete" | "baseline+gaz-dense"
FeatureMode parse_feature_mode(std::string_view name);
std::string feature_mode_name(FeatureMode mode);

// Per-token lexeme-id sets, classified by the token's position inside each
// match: Begin / Middle / End for matches of length >= 2, Single for
// length-1 matches. Ids are deduplicated per (token, class) and kept sorted.
struct BmesSets {
  struct TokenSets {
    std::vector<std::uint32_t> b, m, e, s;
  };
  std::vector<TokenSets> tokens;

  std::size_t membership_count() const;
};

BmesSets bmes_sets(std::u32string_view chars, const std::vector<MatchSpan>& matches);

// Occurrence counts of matched lexemes; missing id counts as 0.
class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(std::size_t lexeme_count) : counts_(lexeme_count, 0) {}

  std::int64_t count(std::uint32_t id) const {
    return id < counts_.size() ? counts_[id] : 0;
  }
  void add(std::uint32_t id, std::int64_t n = 1) {
    if (id >= counts_.size()) counts_.resize(id + 1, 0);
    counts_[id] += n;
  }
  std::int64_t total() const;

 private:
  std::vector<std::int64_t> counts_;
};

// Counts every matched occurrence over the training split only.
FrequencyTable lexeme_frequency(const LexemeMatcher& matcher,
                                const std::vector<Sentence>& train_split);

// Deterministic embedding lookup: the pre-trained vector when the gazetteer
// has one, otherwise a uniform vector in [-0.5/dim, +0.5/dim) seeded by
// (seed, lexeme hash) so the value does not depend on call order.
// Borrows the gazetteer; keep it alive.
class EmbeddingProvider {
 public:
  EmbeddingProvider(const Gazetteer& g, std::uint64_t seed);

  std::vector<float> embedding(std::uint32_t lexeme_id) const;
  std::size_t dim() const { return dim_; }

 private:
  const Gazetteer* gazetteer_;
  std::uint64_t seed_;
  std::size_t dim_;
};

// Frequency-weighted mean of each of the four set embeddings with add-one
// smoothing (weight = count + 1); an empty set pools to zeros. Output per
// token is concat(B, M, E, S): 4 * dim values.
std::vector<std::vector<double>> pool_embeddings(const BmesSets& bmes,
                                                 const FrequencyTable& freq,
                                                 const EmbeddingProvider& provider);

// Discrete feature ids for one sentence. Character templates are unigrams
// c-1 / c0 / c+1 and bigrams (c-1 c0) / (c0 c+1) with boundary padding;
// gazetteer templates (set presence + most frequent member per set) are
// emitted only for the gaz-discrete mode.
std::vector<std::vector<std::string>> discrete_features(
    std::u32string_view chars, const BmesSets& bmes, const FrequencyTable& freq,
    const LexemeMatcher* matcher, FeatureMode mode);

struct TokenFeatures {
  std::vector<std::string> discrete;
  std::vector<double> dense;  // empty or exactly 4 * dim values

  friend bool operator==(const TokenFeatures&, const TokenFeatures&) = default;
};

// Bundles matcher, training-split frequencies and embeddings into one
// sentence-to-features function. Borrows the matcher; keep it alive.
class Featurizer {
 public:
  // Gazetteer-blind baseline.
  Featurizer();
  Featurizer(FeatureMode mode, const LexemeMatcher* matcher, FrequencyTable freq,
             EmbeddingProvider provider);

  std::vector<TokenFeatures> featurize(std::u32string_view chars) const;
  std::vector<TokenFeatures> featurize(std::u32string_view chars,
                                       const std::vector<char>& masked_ids) const;
  std::vector<TokenFeatures> featurize(std::u32string_view chars,
                                       const MaskSet& mask) const;

  FeatureMode mode() const { return mode_; }
  std::size_t dense_dim() const;
  const std::string& gazetteer_name() const;
  const LexemeMatcher* matcher() const { return matcher_; }
  std::vector<char> compile_mask(const MaskSet& mask) const;

 private:
  FeatureMode mode_ = FeatureMode::Baseline;
  const LexemeMatcher* matcher_ = nullptr;
  FrequencyTable freq_;
  std::optional<EmbeddingProvider> provider_;
};

}  // namespace gazlab
