#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "gazlab/corpus.hpp"
#include "gazlab/features.hpp"

namespace gazlab {

// Snapshot of the experiment knobs a trained model depends on.
struct ModelConfig {
  std::string templates = "baseline";
  std::string gazetteer;
  std::uint64_t seed = 0;
};

// Linear-chain CRF. Emission score of label y at token t is the sum of the
// weights of the token's discrete features plus, when dense inputs are
// enabled, a per-label linear projection of the pooled gazetteer vector.
struct CrfModel {
  std::vector<std::string> labels;  // decode output alphabet, sorted
  std::vector<std::string> feature_names;
  std::unordered_map<std::string, std::uint32_t> feature_ids;

  std::vector<double> feat_w;   // feature_names.size() x K, row-major
  std::vector<double> trans_w;  // K x K, [from * K + to]
  std::size_t dense_dim = 0;
  std::vector<double> dense_w;  // K x dense_dim, [label * dim + d]

  ModelConfig config;

  std::size_t num_labels() const { return labels.size(); }
  std::int32_t label_index(const std::string& tag) const;
  std::int32_t feature_index(const std::string& name) const;
};

struct TrainConfig {
  double l2_lambda = 1e-4;
  std::int64_t epochs = 10;
  double eta0 = 0.1;  // step size eta_t = eta0 / (1 + t / t0)
  double t0 = 0.0;    // 0 picks the default 10 * |train|
  std::uint64_t seed = 0;
  FeatureMode mode = FeatureMode::Baseline;  // must match the featurizer
};

struct TrainLog {
  std::vector<double> epoch_ll;  // sum of per-sentence log-likelihoods
  double seconds = 0.0;
};

// Same shape as the model's weight tables.
struct CrfGradient {
  std::vector<double> feat;
  std::vector<double> trans;
  std::vector<double> dense;
};

struct ScoredGradient {
  double log_likelihood = 0.0;
  CrfGradient grad;
};

// log P(gold | tokens) and the gradient of (log-likelihood - l2/2 * |w|^2).
// Unknown gold tags are an error; unknown features score 0 and get no
// gradient entry of their own (they are not in the model).
ScoredGradient score_and_gradient(const CrfModel& model,
                                  const std::vector<TokenFeatures>& tokens,
                                  const std::vector<std::string>& gold_tags,
                                  double l2_lambda = 0.0,
                                  std::size_t sentence_index = SIZE_MAX);

// Viterbi. Ties pick the lowest label index at every step, so an all-zero
// model decodes everything as labels[0]. Output is not guaranteed to be a
// valid BIOES rendering; run it through normalize_tags before span
// extraction.
std::vector<std::string> decode(const CrfModel& model,
                                const std::vector<TokenFeatures>& tokens);

// Averaged stochastic gradient ascent on the L2-regularized log-likelihood.
// Each step adds eta_t * grad(ll_i), then applies the exact proximal shrink
// w /= (1 + eta_t * lambda); the returned weights are the average of the
// iterates after every step. Deterministic for a fixed (data, config) pair:
// the per-epoch shuffle is driven by config.seed alone. epochs = 0 returns
// the initial model (zero weights, seeded dense projection).
CrfModel train(const std::vector<Sentence>& train_split, const Featurizer& featurizer,
               const TrainConfig& config, TrainLog* log = nullptr);

void save_model(const CrfModel& model, const std::string& path);
CrfModel load_model(const std::string& path);

std::size_t count_parameters(const CrfModel& model);

double measure_train_time(const std::vector<Sentence>& train_split,
                          const Featurizer& featurizer, const TrainConfig& config);

}  // namespace gazlab
