#include "gazlab/analysis.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

namespace gazlab {

namespace {

std::set<std::u32string> matched_lexemes(const LexemeMatcher& matcher,
                                         const std::vector<Sentence>& split) {
  std::set<std::u32string> out;
  for (const auto& sentence : split) {
    for (const auto& span : matcher.match_all(sentence.chars)) out.insert(span.surface);
  }
  return out;
}

std::vector<std::u32string> to_sorted_vector(const std::set<std::u32string>& s) {
  return std::vector<std::u32string>(s.begin(), s.end());
}

}  // namespace

LexemeSets compute_sets(const LexemeMatcher& matcher, const Dataset& dataset) {
  auto a = matched_lexemes(matcher, dataset.train);
  auto b = matched_lexemes(matcher, dataset.test);

  std::set<std::u32string> gold_surfaces;
  for (const auto* split : {&dataset.train, &dataset.dev, &dataset.test}) {
    for (const auto& sentence : *split) {
      for (const auto& span : extract_spans(sentence)) gold_surfaces.insert(span.surface);
    }
  }

  LexemeSets sets;
  sets.dataset_name = dataset.name;
  sets.gazetteer_name = matcher.gazetteer_name();
  sets.train_matched = to_sorted_vector(a);
  sets.test_matched = to_sorted_vector(b);
  for (const auto& lex : b) {
    (a.count(lex) ? sets.shared : sets.test_only).push_back(lex);
    (gold_surfaces.count(lex) ? sets.entity : sets.non_entity).push_back(lex);
  }
  return sets;
}

CausalEffectReport causal_effects(const CrfModel& model,
                                  const std::vector<Sentence>& test_split,
                                  const Featurizer& featurizer, const LexemeSets& sets) {
  if (sets.gazetteer_name != featurizer.gazetteer_name()) {
    throw ValidationError("lexeme sets were computed on gazetteer '" + sets.gazetteer_name +
                          "' but the featurizer uses '" + featurizer.gazetteer_name() + "'");
  }
  if (model.config.gazetteer != featurizer.gazetteer_name()) {
    throw ValidationError("model was trained with gazetteer '" + model.config.gazetteer +
                          "' but the featurizer uses '" + featurizer.gazetteer_name() + "'");
  }

  CausalEffectReport report;
  report.dataset_name = sets.dataset_name;
  report.gazetteer_name = sets.gazetteer_name;
  report.model_name = model.config.templates;
  report.fingerprint =
      config_fingerprint(sets.gazetteer_name, model.config.seed, model.config.templates);
  report.base_f1 = evaluate(model, test_split, featurizer).f1;

  const std::pair<const char*, const std::vector<std::u32string>*> masked[] = {
      {"I", &sets.shared}, {"S", &sets.test_only}, {"E", &sets.entity},
      {"N", &sets.non_entity}};
  for (const auto& [name, members] : masked) {
    MaskSet mask(members->begin(), members->end());
    double f1 = evaluate(model, test_split, featurizer, mask).f1;
    report.points.push_back(
        {name, members->size(), f1, report.base_f1 - f1});
  }
  return report;
}

AblationReport size_ablation(const Dataset& dataset, const Gazetteer& gazetteer,
                             const std::vector<double>& fractions, std::uint64_t seed,
                             FeatureMode mode, const TrainConfig& train_config) {
  if (fractions.empty()) throw ValidationError("no fractions given");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] <= 1.0)) {
      throw ValidationError("fractions must lie in (0, 1]");
    }
    if (i > 0 && fractions[i - 1] > fractions[i]) {
      throw ValidationError("fractions must be sorted ascending");
    }
  }

  AblationReport report;
  report.axis = "size-fraction";
  report.dataset_name = dataset.name;
  report.gazetteer_name = gazetteer.name;
  report.model_name = feature_mode_name(mode);
  report.seed = seed;

  for (double fraction : fractions) {
    AblationPoint point;
    point.label = format_double(fraction);
    point.fingerprint = config_fingerprint(gazetteer.name, seed, feature_mode_name(mode),
                                           "fraction=" + point.label);
    std::optional<Gazetteer> sub;
    try {
      sub = subsample(gazetteer, fraction, mix_seed(seed, point.label));
    } catch (const ValidationError& e) {
      point.skipped = true;
      point.note = e.what();
    }
    if (sub) {
      Pipeline pipeline(dataset, std::move(*sub), mode, seed);
      CrfModel model = pipeline.train_model(train_config);
      point.f1 = evaluate(model, dataset.test, pipeline.featurizer()).f1;
    }
    report.points.push_back(std::move(point));
  }
  return report;
}

AblationReport embedding_ablation(const Dataset& dataset, const Gazetteer& gazetteer,
                                  std::uint64_t seed, FeatureMode mode,
                                  const TrainConfig& train_config) {
  if (!gazetteer.pretrained) {
    throw ValidationError("gazetteer '" + gazetteer.name +
                          "' has no pre-trained embeddings to ablate");
  }

  AblationReport report;
  report.axis = "embeddings";
  report.dataset_name = dataset.name;
  report.gazetteer_name = gazetteer.name;
  report.model_name = feature_mode_name(mode);
  report.seed = seed;

  auto run = [&](const Gazetteer& g, const char* label) {
    Pipeline pipeline(dataset, g, mode, seed);
    CrfModel model = pipeline.train_model(train_config);
    AblationPoint point;
    point.label = label;
    point.fingerprint = config_fingerprint(gazetteer.name, seed, feature_mode_name(mode),
                                           std::string("embeddings=") + label);
    point.f1 = evaluate(model, dataset.test, pipeline.featurizer()).f1;
    report.points.push_back(point);
    return point.f1;
  };
  double pretrained_f1 = run(gazetteer, "pretrained");
  double stripped_f1 = run(strip_embeddings(gazetteer), "random-init");
  report.delta = stripped_f1 - pretrained_f1;
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw ValidationError("unknown report format: " + std::string(name));
}

namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

std::vector<std::string> encode_members(const std::vector<std::u32string>& members) {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(utf8_encode(m));
  return out;
}

}  // namespace

void emit_report(const LexemeSets& sets, const std::string& path, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["type"] = "lexeme-sets";
    j["dataset"] = sets.dataset_name;
    j["gazetteer"] = sets.gazetteer_name;
    j["counts"] = {{"A", sets.train_matched.size()}, {"B", sets.test_matched.size()},
                   {"I", sets.shared.size()},        {"S", sets.test_only.size()},
                   {"E", sets.entity.size()},        {"N", sets.non_entity.size()}};
    j["members"] = {{"I", encode_members(sets.shared)},
                    {"S", encode_members(sets.test_only)},
                    {"E", encode_members(sets.entity)},
                    {"N", encode_members(sets.non_entity)}};
    write_text(path, j.dump(2) + "\n");
    return;
  }
  std::string csv = "dataset,gazetteer,set,size\n";
  const std::pair<const char*, std::size_t> rows[] = {{"I", sets.shared.size()},
                                                      {"S", sets.test_only.size()},
                                                      {"E", sets.entity.size()},
                                                      {"N", sets.non_entity.size()}};
  for (const auto& [name, size] : rows) {
    csv += csv_field(sets.dataset_name) + "," + csv_field(sets.gazetteer_name) + "," + name +
           "," + std::to_string(size) + "\n";
  }
  write_text(path, csv);
}

void emit_report(const CausalEffectReport& report, const std::string& path,
                 ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["type"] = "causal-effects";
    j["dataset"] = report.dataset_name;
    j["gazetteer"] = report.gazetteer_name;
    j["model"] = report.model_name;
    j["fingerprint"] = report.fingerprint;
    j["base_f1"] = report.base_f1;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : report.points) {
      j["points"].push_back({{"set", p.set_name},
                             {"size", p.set_size},
                             {"masked_f1", p.masked_f1},
                             {"effect", p.effect}});
    }
    write_text(path, j.dump(2) + "\n");
    return;
  }
  std::string csv = "dataset,gazetteer,model,masked_set,base_f1,masked_f1,effect\n";
  for (const auto& p : report.points) {
    csv += csv_field(report.dataset_name) + "," + csv_field(report.gazetteer_name) + "," +
           csv_field(report.model_name) + "," + p.set_name + "," +
           format_double(report.base_f1) + "," + format_double(p.masked_f1) + "," +
           format_double(p.effect) + "\n";
  }
  write_text(path, csv);
}

void emit_report(const AblationReport& report, const std::string& path, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["type"] = "ablation";
    j["axis"] = report.axis;
    j["dataset"] = report.dataset_name;
    j["gazetteer"] = report.gazetteer_name;
    j["model"] = report.model_name;
    j["seed"] = report.seed;
    if (report.axis == "embeddings") j["delta"] = report.delta;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : report.points) {
      nlohmann::ordered_json pj{{"point", p.label}, {"fingerprint", p.fingerprint}};
      if (p.skipped) {
        pj["skipped"] = true;
        pj["note"] = p.note;
      } else {
        pj["f1"] = p.f1;
      }
      j["points"].push_back(std::move(pj));
    }
    write_text(path, j.dump(2) + "\n");
    return;
  }
  std::string csv = "dataset,gazetteer,model,axis,point,f1,note\n";
  for (const auto& p : report.points) {
    csv += csv_field(report.dataset_name) + "," + csv_field(report.gazetteer_name) + "," +
           csv_field(report.model_name) + "," + report.axis + "," + csv_field(p.label) + "," +
           (p.skipped ? std::string() : format_double(p.f1)) + "," + csv_field(p.note) + "\n";
  }
  write_text(path, csv);
}

}  // namespace gazlab
