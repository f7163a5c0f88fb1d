#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "gazlab/corpus.hpp"
#include "gazlab/evaluation.hpp"
#include "gazlab/features.hpp"
#include "gazlab/gazetteer.hpp"
#include "gazlab/matcher.hpp"
#include "gazlab/tagger.hpp"

namespace gazlab {

// Stable hash of the knobs a reported number depends on. The hashed string is
// "gaz=<name>;seed=<seed>;templates=<templates>", with ";<point>" appended
// for per-point report entries (e.g. "fraction=0.2").
std::uint64_t config_fingerprint(const std::string& gazetteer_name, std::uint64_t seed,
                                 const std::string& templates,
                                 const std::string& point = std::string());

// One experiment assembly: gazetteer, matcher, train-split frequencies and
// featurizer wired together with stable addresses. Borrows the dataset;
// owns everything else. Not movable (the featurizer holds pointers into the
// other members).
class Pipeline {
 public:
  // Gazetteer-free baseline.
  Pipeline(const Dataset& dataset, FeatureMode mode, std::uint64_t seed);
  Pipeline(const Dataset& dataset, Gazetteer gazetteer, FeatureMode mode,
           std::uint64_t seed);

  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  const Dataset& dataset() const { return *dataset_; }
  bool has_gazetteer() const { return gazetteer_ != nullptr; }
  const Gazetteer& gazetteer() const;
  const LexemeMatcher& matcher() const;
  const Featurizer& featurizer() const { return featurizer_; }
  FeatureMode mode() const { return mode_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t fingerprint() const;

  // Trains on the dataset's training split. The pipeline's mode and seed are
  // stamped into the config so they cannot drift from the featurizer.
  CrfModel train_model(TrainConfig config, TrainLog* log = nullptr) const;

 private:
  const Dataset* dataset_;
  std::unique_ptr<Gazetteer> gazetteer_;
  std::unique_ptr<LexemeMatcher> matcher_;
  Featurizer featurizer_;
  FeatureMode mode_;
  std::uint64_t seed_;
};

}  // namespace gazlab
