#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gazlab/corpus.hpp"
#include "gazlab/evaluation.hpp"
#include "gazlab/matcher.hpp"
#include "gazlab/pipeline.hpp"
#include "gazlab/tagger.hpp"

namespace gazlab {

// The matched-lexeme sets, conventionally A/B/I/S/E/N. All vectors are
// sorted and duplicate-free.
struct LexemeSets {
  std::string dataset_name;
  std::string gazetteer_name;
  std::vector<std::u32string> train_matched;  // A: matched anywhere in train
  std::vector<std::u32string> test_matched;   // B: matched anywhere in test
  std::vector<std::u32string> shared;         // I = A ∩ B
  std::vector<std::u32string> test_only;      // S = B \ A
  std::vector<std::u32string> entity;         // E: B members whose surface is a
                                              //    gold entity surface in
                                              //    train ∪ dev ∪ test
  std::vector<std::u32string> non_entity;     // N = B \ E
};

LexemeSets compute_sets(const LexemeMatcher& matcher, const Dataset& dataset);

struct MaskedPoint {
  std::string set_name;  // "I" | "S" | "E" | "N"
  std::size_t set_size = 0;
  double masked_f1 = 0.0;
  double effect = 0.0;  // base_f1 - masked_f1
};

struct CausalEffectReport {
  std::string dataset_name;
  std::string gazetteer_name;
  std::string model_name;  // the model's template set
  std::uint64_t fingerprint = 0;
  double base_f1 = 0.0;
  std::vector<MaskedPoint> points;  // ordered I, S, E, N
};

// Evaluates the fixed model once unmasked and once per masked set; the model
// is never retrained. The sets must come from the same gazetteer the
// featurizer uses.
CausalEffectReport causal_effects(const CrfModel& model,
                                  const std::vector<Sentence>& test_split,
                                  const Featurizer& featurizer, const LexemeSets& sets);

struct AblationPoint {
  std::string label;  // fraction rendering, or "pretrained" / "random-init"
  double f1 = 0.0;
  std::uint64_t fingerprint = 0;
  bool skipped = false;
  std::string note;
};

struct AblationReport {
  std::string axis;  // "size-fraction" | "embeddings"
  std::string dataset_name;
  std::string gazetteer_name;
  std::string model_name;
  std::uint64_t seed = 0;
  std::vector<AblationPoint> points;
  double delta = 0.0;  // embeddings axis: stripped f1 - pretrained f1
};

// One full train + test evaluation per fraction on subsample(g, fraction).
// The subsample seed is derived from (seed, fraction); fractions whose
// subsample would be empty are reported as skipped points.
AblationReport size_ablation(const Dataset& dataset, const Gazetteer& gazetteer,
                             const std::vector<double>& fractions, std::uint64_t seed,
                             FeatureMode mode, const TrainConfig& train_config);

// Two runs, identical except for strip_embeddings on the second.
AblationReport embedding_ablation(const Dataset& dataset, const Gazetteer& gazetteer,
                                  std::uint64_t seed, FeatureMode mode,
                                  const TrainConfig& train_config);

enum class ReportFormat { Json, Csv };
ReportFormat parse_report_format(std::string_view name);  // "json" | "csv"

void emit_report(const LexemeSets& sets, const std::string& path, ReportFormat format);
void emit_report(const CausalEffectReport& report, const std::string& path,
                 ReportFormat format);
void emit_report(const AblationReport& report, const std::string& path,
                 ReportFormat format);

}  // namespace gazlab
