#include "gazlab/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gazlab/evaluation.hpp"

namespace fs = std::filesystem;

namespace gazlab {

namespace {

std::string resolve_path(const fs::path& base, const std::string& p) {
  fs::path fp(p);
  if (!fp.is_absolute()) fp = base / fp;
  return fp.lexically_normal().string();
}

void require_exists(const std::string& path, const char* what) {
  if (!fs::exists(path)) {
    throw ValidationError(std::string(what) + " path does not exist: " + path);
  }
}

std::uint64_t env_seed_override(std::uint64_t fallback, bool& overridden) {
  const char* raw = std::getenv("GAZLAB_SEED");
  if (!raw || !*raw) {
    overridden = false;
    return fallback;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(raw, raw + std::char_traits<char>::length(raw), value);
  if (ec != std::errc() || *ptr != '\0') {
    throw ValidationError("GAZLAB_SEED must be a non-negative integer, got: " +
                          std::string(raw));
  }
  overridden = true;
  return value;
}

std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (row.size() > width.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size()) out.append(width[i] - row[i].size() + 2, ' ');
    }
    out += '\n';
  }
  return out;
}

Dataset load_config_dataset(const ExperimentConfig& c) {
  return load_dataset(c.train_path, c.dev_path, c.test_path, c.scheme, c.dataset_name);
}

Gazetteer load_config_gazetteer(const ExperimentConfig& c) {
  if (!c.gazetteer) throw ValidationError("this command needs a gazetteer in the config");
  const auto& g = *c.gazetteer;
  return load_gazetteer(g.lexicon_path, g.embedding_path, g.name, g.unpretrained_dim);
}

std::unique_ptr<Pipeline> make_pipeline(const Dataset& dataset, const ExperimentConfig& c) {
  if (c.gazetteer) {
    return std::make_unique<Pipeline>(dataset, load_config_gazetteer(c), c.mode, c.seed);
  }
  return std::make_unique<Pipeline>(dataset, c.mode, c.seed);
}

std::string ensure_out_dir(const std::string& out_dir) {
  if (!out_dir.empty()) fs::create_directories(out_dir);
  return out_dir.empty() ? std::string(".") : out_dir;
}

MaskSet read_mask_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read mask file " + path);
  MaskSet mask;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    first = false;
    if (!line.empty()) mask.insert(utf8_decode(line));
  }
  return mask;
}

nlohmann::ordered_json eval_to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["f1"] = r.f1;
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["fn"] = r.fn;
  j["per_type"] = nlohmann::ordered_json::object();
  for (const auto& [etype, t] : r.per_type) {
    j["per_type"][etype] = {{"precision", t.precision}, {"recall", t.recall},
                            {"f1", t.f1},               {"tp", t.tp},
                            {"fp", t.fp},               {"fn", t.fn}};
  }
  j["warnings"] = r.warnings;
  return j;
}

void print_eval_table(const EvalReport& r, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"type", "precision", "recall", "f1", "tp", "fp", "fn"});
  for (const auto& [etype, t] : r.per_type) {
    rows.push_back({etype, fmt4(t.precision), fmt4(t.recall), fmt4(t.f1),
                    std::to_string(t.tp), std::to_string(t.fp), std::to_string(t.fn)});
  }
  rows.push_back({"ALL", fmt4(r.precision), fmt4(r.recall), fmt4(r.f1),
                  std::to_string(r.tp), std::to_string(r.fp), std::to_string(r.fn)});
  out << render_table(rows);
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ValidationError("config " + path + " must be a JSON object");

  const fs::path base = fs::absolute(fs::path(path)).parent_path();
  ExperimentConfig c;
  try {
    if (!j.contains("seed")) throw ValidationError("config is missing mandatory 'seed'");
    if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned()) {
      throw ValidationError("'seed' must be an integer");
    }
    if (j["seed"].is_number_integer() && j["seed"].get<std::int64_t>() < 0) {
      throw ValidationError("'seed' must be non-negative");
    }
    c.seed = j["seed"].get<std::uint64_t>();

    const auto& d = j.at("dataset");
    c.dataset_name = d.value("name", std::string("dataset"));
    c.train_path = resolve_path(base, d.at("train").get<std::string>());
    c.dev_path = resolve_path(base, d.at("dev").get<std::string>());
    c.test_path = resolve_path(base, d.at("test").get<std::string>());
    c.scheme = parse_scheme(d.value("scheme", std::string("BIO")));

    if (j.contains("gazetteer")) {
      const auto& g = j.at("gazetteer");
      GazetteerSpec spec;
      spec.name = g.value("name", std::string("gazetteer"));
      spec.lexicon_path = resolve_path(base, g.at("lexicon").get<std::string>());
      if (g.contains("embeddings")) {
        spec.embedding_path = resolve_path(base, g.at("embeddings").get<std::string>());
      }
      spec.unpretrained_dim = g.value("unpretrained_dim", std::size_t{50});
      c.gazetteer = std::move(spec);
    }

    c.mode = parse_feature_mode(j.value("features", std::string("baseline")));

    if (j.contains("train")) {
      const auto& t = j.at("train");
      c.train.epochs = t.value("epochs", c.train.epochs);
      c.train.l2_lambda = t.value("l2_lambda", c.train.l2_lambda);
      c.train.eta0 = t.value("eta0", c.train.eta0);
      c.train.t0 = t.value("t0", c.train.t0);
    }
    if (j.contains("output_dir")) {
      c.output_dir = resolve_path(base, j.at("output_dir").get<std::string>());
    } else {
      c.output_dir = base.lexically_normal().string();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config " + path + ": " + e.what());
  }

  c.train.mode = c.mode;
  if (c.mode != FeatureMode::Baseline && !c.gazetteer) {
    throw ValidationError("feature mode '" + feature_mode_name(c.mode) +
                          "' needs a gazetteer section in the config");
  }

  require_exists(c.train_path, "train");
  require_exists(c.dev_path, "dev");
  require_exists(c.test_path, "test");
  if (c.gazetteer) {
    require_exists(c.gazetteer->lexicon_path, "gazetteer lexicon");
    if (c.gazetteer->embedding_path) {
      require_exists(*c.gazetteer->embedding_path, "gazetteer embeddings");
    }
  }

  c.seed = env_seed_override(c.seed, c.seed_overridden);
  c.train.seed = c.seed;
  return c;
}

int cmd_stats(const ExperimentConfig& config, bool json, std::ostream& out) {
  Dataset dataset = load_config_dataset(config);
  SplitCounts counts = dataset_stats(dataset);
  std::optional<Gazetteer> g;
  if (config.gazetteer) g = load_config_gazetteer(config);

  if (json) {
    nlohmann::ordered_json j;
    if (g) {
      GazetteerStats gs = gazetteer_stats(*g);
      j["gazetteer"] = {{"name", g->name},
                        {"num", gs.num},
                        {"dim", gs.dim},
                        {"pretrained", gs.pretrained},
                        {"coverage_ratio", gs.coverage_ratio}};
    }
    j["dataset"] = {{"name", dataset.name},   {"total", counts.total},
                    {"train", counts.train},  {"dev", counts.dev},
                    {"test", counts.test},    {"repaired_tags", dataset.repaired_tags}};
    out << j.dump(2) << "\n";
    return 0;
  }

  if (g) {
    GazetteerStats gs = gazetteer_stats(*g);
    out << render_table({{"gazetteer", "num", "dim", "pretrained", "coverage"},
                         {g->name, std::to_string(gs.num), std::to_string(gs.dim),
                          gs.pretrained ? "yes" : "no", format_double(gs.coverage_ratio)}});
    out << "\n";
  }
  out << render_table({{"dataset", "total", "train", "dev", "test"},
                       {dataset.name, std::to_string(counts.total),
                        std::to_string(counts.train), std::to_string(counts.dev),
                        std::to_string(counts.test)}});
  out << "repaired tags: " << dataset.repaired_tags << "\n";
  return 0;
}

int cmd_train(const ExperimentConfig& config, const std::string& out_dir, std::ostream& out) {
  Dataset dataset = load_config_dataset(config);
  auto pipeline = make_pipeline(dataset, config);
  TrainLog log;
  CrfModel model = pipeline->train_model(config.train, &log);

  std::string dir = ensure_out_dir(out_dir);
  std::string model_path = dir + "/model.json";
  save_model(model, model_path);

  nlohmann::ordered_json j;
  j["epochs"] = config.train.epochs;
  j["epoch_ll"] = log.epoch_ll;
  j["parameters"] = count_parameters(model);
  j["seconds"] = log.seconds;  // timing, not covered by the determinism contract
  std::ofstream lf(dir + "/train_log.json", std::ios::binary);
  if (!lf) throw IoError("cannot write " + dir + "/train_log.json");
  lf << j.dump(2) << "\n";

  std::vector<std::vector<std::string>> rows{{"epoch", "log-likelihood"}};
  for (std::size_t e = 0; e < log.epoch_ll.size(); ++e) {
    rows.push_back({std::to_string(e + 1), fmt4(log.epoch_ll[e])});
  }
  out << render_table(rows);
  out << "parameters: " << count_parameters(model) << "\n";
  out << "wrote " << model_path << "\n";
  return 0;
}

int cmd_eval(const ExperimentConfig& config, const std::string& model_path,
             const std::optional<std::string>& mask_file, bool json, std::ostream& out) {
  if (!fs::exists(model_path)) {
    throw ValidationError("model path does not exist: " + model_path);
  }
  CrfModel model = load_model(model_path);
  Dataset dataset = load_config_dataset(config);
  auto pipeline = make_pipeline(dataset, config);
  MaskSet mask;
  if (mask_file) mask = read_mask_file(*mask_file);

  EvalReport report = evaluate(model, dataset.test, pipeline->featurizer(), mask);
  if (json) {
    out << eval_to_json(report).dump(2) << "\n";
  } else {
    print_eval_table(report, out);
  }
  return 0;
}

int cmd_analyze_sets(const ExperimentConfig& config, const std::string& out_dir,
                     std::ostream& out) {
  Dataset dataset = load_config_dataset(config);
  auto pipeline = make_pipeline(dataset, config);
  LexemeSets sets = compute_sets(pipeline->matcher(), dataset);

  std::string dir = ensure_out_dir(out_dir);
  emit_report(sets, dir + "/sets.json", ReportFormat::Json);
  emit_report(sets, dir + "/sets.csv", ReportFormat::Csv);

  out << render_table({{"dataset", "gazetteer", "I", "S", "E", "N"},
                       {sets.dataset_name, sets.gazetteer_name,
                        std::to_string(sets.shared.size()),
                        std::to_string(sets.test_only.size()),
                        std::to_string(sets.entity.size()),
                        std::to_string(sets.non_entity.size())}});
  out << "wrote " << dir << "/sets.json, " << dir << "/sets.csv\n";
  return 0;
}

int cmd_analyze_mask(const ExperimentConfig& config, const std::string& model_path,
                     const std::string& out_dir, std::ostream& out) {
  if (!fs::exists(model_path)) {
    throw ValidationError("model path does not exist: " + model_path);
  }
  CrfModel model = load_model(model_path);
  Dataset dataset = load_config_dataset(config);
  auto pipeline = make_pipeline(dataset, config);
  LexemeSets sets = compute_sets(pipeline->matcher(), dataset);
  CausalEffectReport report =
      causal_effects(model, dataset.test, pipeline->featurizer(), sets);

  std::string dir = ensure_out_dir(out_dir);
  emit_report(report, dir + "/mask.json", ReportFormat::Json);
  emit_report(report, dir + "/mask.csv", ReportFormat::Csv);

  std::vector<std::vector<std::string>> rows{
      {"masked_set", "size", "base_f1", "masked_f1", "effect"}};
  for (const auto& p : report.points) {
    rows.push_back({p.set_name, std::to_string(p.set_size), fmt4(report.base_f1),
                    fmt4(p.masked_f1), fmt4(p.effect)});
  }
  out << render_table(rows);
  out << "wrote " << dir << "/mask.json, " << dir << "/mask.csv\n";
  return 0;
}

int cmd_analyze_size(const ExperimentConfig& config, const std::vector<double>& fractions,
                     const std::string& out_dir, std::ostream& out) {
  Dataset dataset = load_config_dataset(config);
  Gazetteer gazetteer = load_config_gazetteer(config);
  AblationReport report =
      size_ablation(dataset, gazetteer, fractions, config.seed, config.mode, config.train);

  std::string dir = ensure_out_dir(out_dir);
  emit_report(report, dir + "/size.json", ReportFormat::Json);
  emit_report(report, dir + "/size.csv", ReportFormat::Csv);

  std::vector<std::vector<std::string>> rows{{"fraction", "f1", "note"}};
  for (const auto& p : report.points) {
    rows.push_back({p.label, p.skipped ? "-" : fmt4(p.f1), p.note});
  }
  out << render_table(rows);
  out << "wrote " << dir << "/size.json, " << dir << "/size.csv\n";
  return 0;
}

int cmd_analyze_embeddings(const ExperimentConfig& config, const std::string& out_dir,
                           std::ostream& out) {
  Dataset dataset = load_config_dataset(config);
  Gazetteer gazetteer = load_config_gazetteer(config);
  AblationReport report =
      embedding_ablation(dataset, gazetteer, config.seed, config.mode, config.train);

  std::string dir = ensure_out_dir(out_dir);
  emit_report(report, dir + "/embeddings.json", ReportFormat::Json);
  emit_report(report, dir + "/embeddings.csv", ReportFormat::Csv);

  std::vector<std::vector<std::string>> rows{{"embeddings", "f1"}};
  for (const auto& p : report.points) rows.push_back({p.label, fmt4(p.f1)});
  out << render_table(rows);
  out << "delta: " << fmt4(report.delta) << "\n";
  out << "wrote " << dir << "/embeddings.json, " << dir << "/embeddings.csv\n";
  return 0;
}

int cmd_match(const ExperimentConfig& config, std::istream& in, bool json,
              std::ostream& out) {
  Dataset dataset = load_config_dataset(config);
  auto pipeline = make_pipeline(dataset, config);
  const LexemeMatcher& matcher = pipeline->matcher();

  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (nl == std::string::npos && line.empty()) break;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (const auto& span : matcher.match_all(utf8_decode(line))) {
      if (json) {
        arr.push_back({{"line", line_no},
                       {"start", span.start},
                       {"end", span.end},
                       {"lexeme", utf8_encode(span.surface)}});
      } else {
        out << line_no << '\t' << span.start << '\t' << span.end << '\t'
            << utf8_encode(span.surface) << '\n';
      }
    }
  }
  if (json) out << arr.dump(2) << "\n";
  return 0;
}

int cmd_bench(const ExperimentConfig& config, bool json, std::ostream& out) {
  Dataset dataset = load_config_dataset(config);

  struct Row {
    std::string model;
    std::size_t params = 0;
    double param_ratio = 1.0;
    double seconds = 0.0;
    double time_ratio = 1.0;
  };
  std::vector<Row> rows;

  auto run = [&](const Pipeline& pipeline, const std::string& name) {
    TrainLog log;
    CrfModel model = pipeline.train_model(config.train, &log);
    rows.push_back({name, count_parameters(model), 1.0, log.seconds, 1.0});
  };

  Pipeline baseline(dataset, FeatureMode::Baseline, config.seed);
  run(baseline, "baseline");
  if (config.mode != FeatureMode::Baseline) {
    auto pipeline = make_pipeline(dataset, config);
    run(*pipeline, feature_mode_name(config.mode));
  }
  for (auto& row : rows) {
    row.param_ratio =
        static_cast<double>(row.params) / static_cast<double>(rows.front().params);
    row.time_ratio = rows.front().seconds > 0.0 ? row.seconds / rows.front().seconds : 1.0;
  }

  if (json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"model", r.model},
                     {"parameters", r.params},
                     {"param_ratio", r.param_ratio},
                     {"seconds", r.seconds},
                     {"time_ratio", r.time_ratio}});
    }
    out << arr.dump(2) << "\n";
    return 0;
  }
  std::vector<std::vector<std::string>> table{
      {"model", "parameters", "param_ratio", "seconds", "time_ratio"}};
  for (const auto& r : rows) {
    table.push_back({r.model, std::to_string(r.params), fmt4(r.param_ratio),
                     fmt4(r.seconds), fmt4(r.time_ratio)});
  }
  out << render_table(table);
  return 0;
}

std::vector<double> parse_fractions(const std::string& list) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    std::string token = list.substr(pos, comma == std::string::npos ? comma : comma - pos);
    pos = comma == std::string::npos ? list.size() + 1 : comma + 1;
    if (token.empty()) throw ValidationError("empty fraction in list: " + list);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ValidationError("bad fraction: " + token);
    }
    out.push_back(value);
  }
  return out;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"gazetteer-enhanced NER evaluation toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir, model_path, mask_file;
  std::string fractions = "0.2,0.4,0.6,0.8,1.0";
  bool json = false;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
  };

  auto* stats = app.add_subcommand("stats", "gazetteer and dataset statistics");
  add_config(stats);
  stats->add_flag("--json", json, "machine-readable output");

  auto* train_cmd = app.add_subcommand("train", "train a model from the config");
  add_config(train_cmd);
  train_cmd->add_option("--out", out_dir, "output directory");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on the test split");
  add_config(eval_cmd);
  eval_cmd->add_option("--model", model_path, "model file")->required();
  eval_cmd->add_option("--mask-file", mask_file, "lexemes to mask, one per line");
  eval_cmd->add_flag("--json", json, "machine-readable output");

  auto* analyze = app.add_subcommand("analyze", "gazetteer analysis suites");
  analyze->require_subcommand(1);
  auto* sets_cmd = analyze->add_subcommand("sets", "matched-lexeme set statistics");
  add_config(sets_cmd);
  sets_cmd->add_option("--out", out_dir, "output directory");
  auto* mask_cmd = analyze->add_subcommand("mask", "masking causal effects");
  add_config(mask_cmd);
  mask_cmd->add_option("--model", model_path, "model file")->required();
  mask_cmd->add_option("--out", out_dir, "output directory");
  auto* size_cmd = analyze->add_subcommand("size", "gazetteer size ablation");
  add_config(size_cmd);
  size_cmd->add_option("--fractions", fractions, "comma-separated fractions in (0,1]");
  size_cmd->add_option("--out", out_dir, "output directory");
  auto* emb_cmd = analyze->add_subcommand("embeddings", "pre-trained embedding ablation");
  add_config(emb_cmd);
  emb_cmd->add_option("--out", out_dir, "output directory");

  auto* match_cmd = app.add_subcommand("match", "match stdin lines against the gazetteer");
  add_config(match_cmd);
  match_cmd->add_flag("--json", json, "machine-readable output");

  auto* bench = app.add_subcommand("bench", "parameter counts and training time");
  add_config(bench);
  bench->add_flag("--json", json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig config = load_config(config_path);
    if (config.seed_overridden) {
      std::cerr << "seed overridden by GAZLAB_SEED: " << config.seed << "\n";
    }
    const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
    if (*stats) return cmd_stats(config, json, std::cout);
    if (*train_cmd) return cmd_train(config, dir, std::cout);
    if (*eval_cmd) {
      std::optional<std::string> mask;
      if (!mask_file.empty()) mask = mask_file;
      return cmd_eval(config, model_path, mask, json, std::cout);
    }
    if (*sets_cmd) return cmd_analyze_sets(config, dir, std::cout);
    if (*mask_cmd) return cmd_analyze_mask(config, model_path, dir, std::cout);
    if (*size_cmd) return cmd_analyze_size(config, parse_fractions(fractions), dir, std::cout);
    if (*emb_cmd) return cmd_analyze_embeddings(config, dir, std::cout);
    if (*match_cmd) return cmd_match(config, std::cin, json, std::cout);
    if (*bench) return cmd_bench(config, json, std::cout);
    throw Error("no subcommand dispatched");
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gazlab
