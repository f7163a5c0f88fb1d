#include "gazlab/evaluation.hpp"

#include <algorithm>

namespace gazlab {

namespace {

void finish(std::int64_t tp, std::int64_t fp, std::int64_t fn, double& p, double& r,
            double& f1) {
  p = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  r = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  f1 = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

EvalReport evaluate(const CrfModel& model, const std::vector<Sentence>& split,
                    const Featurizer& featurizer, const MaskSet& mask) {
  EvalReport report;
  if (model.config.gazetteer != featurizer.gazetteer_name()) {
    report.warnings.push_back("gazetteer mismatch: model was trained with '" +
                              model.config.gazetteer + "', evaluating with '" +
                              featurizer.gazetteer_name() + "'");
  }
  if (model.config.templates != feature_mode_name(featurizer.mode())) {
    report.warnings.push_back("template mismatch: model was trained with '" +
                              model.config.templates + "', evaluating with '" +
                              feature_mode_name(featurizer.mode()) + "'");
  }

  auto masked_ids = featurizer.compile_mask(mask);
  for (const auto& sentence : split) {
    auto gold = extract_spans(sentence);

    auto tokens = featurizer.featurize(sentence.chars, masked_ids);
    auto raw = decode(model, tokens);
    Sentence predicted{sentence.chars, normalize_tags(raw, TagScheme::Bioes).first,
                       TagScheme::Bioes};
    auto pred = extract_spans(predicted);

    for (const auto& span : pred) {
      bool hit = std::binary_search(gold.begin(), gold.end(), span);
      auto& t = report.per_type[span.etype];
      if (hit) {
        ++t.tp;
      } else {
        ++t.fp;
      }
    }
    for (const auto& span : gold) {
      if (!std::binary_search(pred.begin(), pred.end(), span)) {
        ++report.per_type[span.etype].fn;
      }
    }
  }

  for (auto& [etype, t] : report.per_type) {
    finish(t.tp, t.fp, t.fn, t.precision, t.recall, t.f1);
    report.tp += t.tp;
    report.fp += t.fp;
    report.fn += t.fn;
  }
  finish(report.tp, report.fp, report.fn, report.precision, report.recall, report.f1);
  return report;
}

EvalReport evaluate(const CrfModel& model, const std::vector<Sentence>& split,
                    const Featurizer& featurizer) {
  return evaluate(model, split, featurizer, MaskSet());
}

}  // namespace gazlab
