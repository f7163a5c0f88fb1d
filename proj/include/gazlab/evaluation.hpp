#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gazlab/corpus.hpp"
#include "gazlab/features.hpp"
#include "gazlab/matcher.hpp"
#include "gazlab/tagger.hpp"

namespace gazlab {

struct TypeScore {
  std::int64_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
};

// Span-level micro scores; a prediction is correct iff (start, end, type)
// all match a gold span. Zero denominators score 0.
struct EvalReport {
  std::int64_t tp = 0, fp = 0, fn = 0;
  double precision = 0.0, recall = 0.0, f1 = 0.0;
  std::map<std::string, TypeScore> per_type;
  std::vector<std::string> warnings;
};

// Decodes every sentence (tags repaired before span extraction) and scores
// the spans against gold. The mask is applied only inside this evaluation's
// featurization; an empty mask gives exactly the unmasked report.
EvalReport evaluate(const CrfModel& model, const std::vector<Sentence>& split,
                    const Featurizer& featurizer);
EvalReport evaluate(const CrfModel& model, const std::vector<Sentence>& split,
                    const Featurizer& featurizer, const MaskSet& mask);

}  // namespace gazlab
