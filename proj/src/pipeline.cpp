#include "gazlab/pipeline.hpp"

namespace gazlab {

std::uint64_t config_fingerprint(const std::string& gazetteer_name, std::uint64_t seed,
                                 const std::string& templates, const std::string& point) {
  std::string key =
      "gaz=" + gazetteer_name + ";seed=" + std::to_string(seed) + ";templates=" + templates;
  if (!point.empty()) key += ";" + point;
  return fnv1a64(key);
}

Pipeline::Pipeline(const Dataset& dataset, FeatureMode mode, std::uint64_t seed)
    : dataset_(&dataset), mode_(mode), seed_(seed) {
  if (mode != FeatureMode::Baseline) {
    throw ValidationError("feature mode " + feature_mode_name(mode) + " needs a gazetteer");
  }
}

Pipeline::Pipeline(const Dataset& dataset, Gazetteer gazetteer, FeatureMode mode,
                   std::uint64_t seed)
    : dataset_(&dataset),
      gazetteer_(std::make_unique<Gazetteer>(std::move(gazetteer))),
      matcher_(std::make_unique<LexemeMatcher>(*gazetteer_)),
      mode_(mode),
      seed_(seed) {
  if (mode != FeatureMode::Baseline) {
    featurizer_ = Featurizer(mode, matcher_.get(), lexeme_frequency(*matcher_, dataset.train),
                             EmbeddingProvider(*gazetteer_, seed));
  }
}

const Gazetteer& Pipeline::gazetteer() const {
  if (!gazetteer_) throw Error("pipeline has no gazetteer");
  return *gazetteer_;
}

const LexemeMatcher& Pipeline::matcher() const {
  if (!matcher_) throw Error("pipeline has no gazetteer");
  return *matcher_;
}

std::uint64_t Pipeline::fingerprint() const {
  return config_fingerprint(gazetteer_ ? gazetteer_->name : std::string(), seed_,
                            feature_mode_name(mode_));
}

CrfModel Pipeline::train_model(TrainConfig config, TrainLog* log) const {
  config.mode = mode_;
  config.seed = seed_;
  return train(dataset_->train, featurizer_, config, log);
}

}  // namespace gazlab
