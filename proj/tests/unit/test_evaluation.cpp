#include <doctest.h>

#include <string>
#include <vector>

#include "gazlab/evaluation.hpp"
#include "support/oracles.hpp"

using namespace gazlab;
using namespace gazlab::testsupport;

namespace {

Sentence sent(std::u32string chars, std::vector<std::string> tags) {
  Sentence s;
  s.chars = std::move(chars);
  s.tags = std::move(tags);
  s.scheme = TagScheme::Bioes;
  return s;
}

// Deterministic rule tagger dressed as a CRF: c0=p fires S-PER, c0=q fires
// S-LOC, ties fall back to O (the lowest label).
CrfModel rule_model() {
  CrfModel m;
  m.labels = {"O", "S-LOC", "S-PER"};
  m.feature_names = {"c0=p", "c0=q"};
  m.feature_ids = {{"c0=p", 0}, {"c0=q", 1}};
  m.feat_w.assign(2 * 3, 0.0);
  m.feat_w[0 * 3 + 2] = 10.0;  // c0=p -> S-PER
  m.feat_w[1 * 3 + 1] = 10.0;  // c0=q -> S-LOC
  m.trans_w.assign(9, 0.0);
  return m;
}

}  // namespace

TEST_CASE("span scoring counts exact (start, end, type) matches") {
  CrfModel m = rule_model();
  Featurizer fz;
  std::vector<Sentence> split = {
      sent(U"pa", {"S-PER", "O"}),  // TP (PER)
      sent(U"pb", {"O", "O"}),      // FP (PER)
      sent(U"cd", {"S-PER", "O"}),  // FN (PER)
      sent(U"q", {"S-LOC"}),        // TP (LOC)
  };

  EvalReport r = evaluate(m, split, fz);
  CHECK(r.warnings.empty());
  CHECK(r.tp == 2);
  CHECK(r.fp == 1);
  CHECK(r.fn == 1);
  CHECK(r.precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.recall == doctest::Approx(2.0 / 3.0));
  CHECK(r.f1 == doctest::Approx(2.0 / 3.0));

  REQUIRE(r.per_type.count("PER") == 1);
  REQUIRE(r.per_type.count("LOC") == 1);
  const TypeScore& per = r.per_type.at("PER");
  CHECK(per.tp == 1);
  CHECK(per.fp == 1);
  CHECK(per.fn == 1);
  CHECK(per.precision == doctest::Approx(0.5));
  CHECK(per.recall == doctest::Approx(0.5));
  CHECK(per.f1 == doctest::Approx(0.5));
  const TypeScore& loc = r.per_type.at("LOC");
  CHECK(loc.tp == 1);
  CHECK(loc.fp == 0);
  CHECK(loc.fn == 0);
  CHECK(loc.f1 == doctest::Approx(1.0));
}

TEST_CASE("boundary errors are both fp and fn") {
  // The rule model tags single tokens, so a two-token gold span is predicted
  // as two singles: one gold span missed, two spurious predictions.
  CrfModel m = rule_model();
  Featurizer fz;
  std::vector<Sentence> split = {sent(U"pp", {"B-PER", "E-PER"})};
  EvalReport r = evaluate(m, split, fz);
  CHECK(r.tp == 0);
  CHECK(r.fp == 2);
  CHECK(r.fn == 1);
}

TEST_CASE("zero denominators score zero") {
  CrfModel m = rule_model();
  Featurizer fz;

  EvalReport none = evaluate(m, {sent(U"xy", {"B-ORG", "E-ORG"})}, fz);
  CHECK(none.tp == 0);
  CHECK(none.fp == 0);
  CHECK(none.fn == 1);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);

  EvalReport empty = evaluate(m, {sent(U"xy", {"O", "O"})}, fz);
  CHECK(empty.tp == 0);
  CHECK(empty.fp == 0);
  CHECK(empty.fn == 0);
  CHECK(empty.f1 == 0.0);
  CHECK(empty.per_type.empty());
}

TEST_CASE("invalid decoder output is repaired before span extraction") {
  CrfModel m;
  m.labels = {"I-PER", "O"};
  m.feature_names = {"c0=p"};
  m.feature_ids = {{"c0=p", 0}};
  m.feat_w = {10.0, 0.0};  // c0=p -> I-PER, never a B
  m.trans_w.assign(4, 0.0);

  Featurizer fz;
  // Decoder emits I-PER I-PER; repaired to B-PER E-PER = the gold span.
  EvalReport r = evaluate(m, {sent(U"pp", {"B-PER", "E-PER"})}, fz);
  CHECK(r.tp == 1);
  CHECK(r.fp == 0);
  CHECK(r.fn == 0);
  CHECK(r.f1 == 1.0);
}

TEST_CASE("an empty mask reproduces the unmasked report bitwise") {
  Gazetteer g = make_gazetteer({U"pq", U"qq"}, "maskgaz");
  LexemeMatcher matcher(g);
  std::vector<Sentence> data = {sent(U"pqx", {"B-PER", "E-PER", "O"}),
                                sent(U"qqy", {"B-LOC", "E-LOC", "O"})};
  Featurizer fz(FeatureMode::GazDiscrete, &matcher, lexeme_frequency(matcher, data),
                EmbeddingProvider(g, 3));
  TrainConfig cfg;
  cfg.epochs = 4;
  cfg.mode = FeatureMode::GazDiscrete;
  CrfModel model = train(data, fz, cfg);

  EvalReport plain = evaluate(model, data, fz);
  EvalReport masked = evaluate(model, data, fz, MaskSet{});
  CHECK(plain.f1 == masked.f1);
  CHECK(plain.precision == masked.precision);
  CHECK(plain.tp == masked.tp);

  // Masking every lexeme degrades the features but must not throw.
  EvalReport all = evaluate(model, data, fz, MaskSet{U"pq", U"qq"});
  CHECK(all.tp + all.fp + all.fn >= 0);
}

TEST_CASE("evaluate warns on featurizer drift") {
  Gazetteer g = make_gazetteer({U"pq"}, "maskgaz");
  LexemeMatcher matcher(g);
  Featurizer gaz_fz(FeatureMode::GazDiscrete, &matcher, FrequencyTable{},
                    EmbeddingProvider(g, 3));

  CrfModel m = rule_model();  // config: baseline templates, empty gazetteer
  EvalReport r = evaluate(m, {sent(U"p", {"S-PER"})}, gaz_fz);
  REQUIRE(r.warnings.size() == 2);
  CHECK(r.warnings[0].find("gazetteer mismatch") != std::string::npos);
  CHECK(r.warnings[1].find("template mismatch") != std::string::npos);

  Featurizer base;
  CHECK(evaluate(m, {sent(U"p", {"S-PER"})}, base).warnings.empty());
}
