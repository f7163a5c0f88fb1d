#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gazlab/analysis.hpp"
#include "gazlab/corpus.hpp"
#include "gazlab/features.hpp"
#include "gazlab/gazetteer.hpp"
#include "gazlab/pipeline.hpp"
#include "gazlab/tagger.hpp"

namespace gazlab {

struct GazetteerSpec {
  std::string name = "gazetteer";
  std::string lexicon_path;
  std::optional<std::string> embedding_path;
  std::size_t unpretrained_dim = 50;
};

struct ExperimentConfig {
  std::string dataset_name = "dataset";
  std::string train_path, dev_path, test_path;
  TagScheme scheme = TagScheme::Bio;
  std::optional<GazetteerSpec> gazetteer;
  FeatureMode mode = FeatureMode::Baseline;
  TrainConfig train;
  std::uint64_t seed = 0;
  bool seed_overridden = false;  // GAZLAB_SEED took precedence
  std::string output_dir = ".";
};

// Parses and validates a JSON experiment config. Relative paths resolve
// against the config file's directory; every referenced input path must
// exist. GAZLAB_SEED (when set) overrides the config seed.
ExperimentConfig load_config(const std::string& path);

// Subcommand bodies. Each either returns 0 or throws (ValidationError for
// bad input, anything else for runtime failures); all output lands on `out`
// so runs can be captured and compared.
int cmd_stats(const ExperimentConfig& config, bool json, std::ostream& out);
int cmd_train(const ExperimentConfig& config, const std::string& out_dir,
              std::ostream& out);
int cmd_eval(const ExperimentConfig& config, const std::string& model_path,
             const std::optional<std::string>& mask_file, bool json, std::ostream& out);
int cmd_analyze_sets(const ExperimentConfig& config, const std::string& out_dir,
                     std::ostream& out);
int cmd_analyze_mask(const ExperimentConfig& config, const std::string& model_path,
                     const std::string& out_dir, std::ostream& out);
int cmd_analyze_size(const ExperimentConfig& config, const std::vector<double>& fractions,
                     const std::string& out_dir, std::ostream& out);
int cmd_analyze_embeddings(const ExperimentConfig& config, const std::string& out_dir,
                           std::ostream& out);
int cmd_match(const ExperimentConfig& config, std::istream& in, bool json,
              std::ostream& out);
int cmd_bench(const ExperimentConfig& config, bool json, std::ostream& out);

std::vector<double> parse_fractions(const std::string& list);

// argv entry point; exit codes: 0 ok, 2 validation error, 3 runtime error.
int run_cli(int argc, const char* const* argv);

}  // namespace gazlab
