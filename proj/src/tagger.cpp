#include "gazlab/tagger.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>

#include <json.hpp>

namespace gazlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const double* x, std::size_t n) {
  double m = kNegInf;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - m);
  return m + std::log(s);
}

struct Chart {
  std::vector<double> alpha, beta;  // log-space, T x K
  double log_z = 0.0;
};

void forward_backward(const std::vector<double>& emit, const double* trans,
                      std::size_t len, std::size_t K, Chart& chart) {
  chart.alpha.assign(len * K, 0.0);
  chart.beta.assign(len * K, 0.0);
  std::vector<double> tmp(K);
  for (std::size_t y = 0; y < K; ++y) chart.alpha[y] = emit[y];
  for (std::size_t t = 1; t < len; ++t) {
    for (std::size_t y = 0; y < K; ++y) {
      for (std::size_t p = 0; p < K; ++p) {
        tmp[p] = chart.alpha[(t - 1) * K + p] + trans[p * K + y];
      }
      chart.alpha[t * K + y] = logsumexp(tmp.data(), K) + emit[t * K + y];
    }
  }
  for (std::size_t t = len - 1; t-- > 0;) {
    for (std::size_t y = 0; y < K; ++y) {
      for (std::size_t n = 0; n < K; ++n) {
        tmp[n] = trans[y * K + n] + emit[(t + 1) * K + n] + chart.beta[(t + 1) * K + n];
      }
      chart.beta[t * K + y] = logsumexp(tmp.data(), K);
    }
  }
  chart.log_z = logsumexp(chart.alpha.data() + (len - 1) * K, K);
}

std::vector<double> model_emissions(const CrfModel& model,
                                    const std::vector<TokenFeatures>& tokens) {
  const std::size_t K = model.num_labels();
  const std::size_t D = model.dense_dim;
  std::vector<double> emit(tokens.size() * K, 0.0);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    double* row = emit.data() + t * K;
    for (const auto& name : tokens[t].discrete) {
      std::int32_t f = model.feature_index(name);
      if (f < 0) continue;  // unknown features score 0
      const double* w = model.feat_w.data() + static_cast<std::size_t>(f) * K;
      for (std::size_t y = 0; y < K; ++y) row[y] += w[y];
    }
    if (D > 0 && !tokens[t].dense.empty()) {
      if (tokens[t].dense.size() != D) throw Error("dense input size mismatch");
      for (std::size_t y = 0; y < K; ++y) {
        const double* w = model.dense_w.data() + y * D;
        double dot = 0.0;
        for (std::size_t d = 0; d < D; ++d) dot += w[d] * tokens[t].dense[d];
        row[y] += dot;
      }
    }
  }
  return emit;
}

std::string at_sentence(std::size_t index) {
  return index == SIZE_MAX ? std::string() : " at sentence " + std::to_string(index);
}

}  // namespace

std::int32_t CrfModel::label_index(const std::string& tag) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == tag) return static_cast<std::int32_t>(i);
  }
  return -1;
}

std::int32_t CrfModel::feature_index(const std::string& name) const {
  auto it = feature_ids.find(name);
  return it == feature_ids.end() ? -1 : static_cast<std::int32_t>(it->second);
}

ScoredGradient score_and_gradient(const CrfModel& model,
                                  const std::vector<TokenFeatures>& tokens,
                                  const std::vector<std::string>& gold_tags,
                                  double l2_lambda, std::size_t sentence_index) {
  const std::size_t K = model.num_labels();
  const std::size_t D = model.dense_dim;
  const std::size_t len = tokens.size();
  if (K == 0) throw Error("model has no labels");
  if (gold_tags.size() != len) throw Error("gold tags not aligned with features");

  ScoredGradient out;
  out.grad.feat.assign(model.feat_w.size(), 0.0);
  out.grad.trans.assign(model.trans_w.size(), 0.0);
  out.grad.dense.assign(model.dense_w.size(), 0.0);

  if (len > 0) {
    std::vector<std::int32_t> gold(len);
    for (std::size_t t = 0; t < len; ++t) {
      gold[t] = model.label_index(gold_tags[t]);
      if (gold[t] < 0) {
        throw Error("gold tag not in label set: " + gold_tags[t] + at_sentence(sentence_index));
      }
    }

    auto emit = model_emissions(model, tokens);
    Chart chart;
    forward_backward(emit, model.trans_w.data(), len, K, chart);

    double gold_score = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      gold_score += emit[t * K + static_cast<std::size_t>(gold[t])];
      if (t > 0) {
        gold_score += model.trans_w[static_cast<std::size_t>(gold[t - 1]) * K +
                                    static_cast<std::size_t>(gold[t])];
      }
    }
    out.log_likelihood = gold_score - chart.log_z;
    if (!std::isfinite(out.log_likelihood)) {
      throw Error("non-finite log-likelihood" + at_sentence(sentence_index));
    }

    std::vector<double> delta(K);
    for (std::size_t t = 0; t < len; ++t) {
      for (std::size_t y = 0; y < K; ++y) {
        double p = std::exp(chart.alpha[t * K + y] + chart.beta[t * K + y] - chart.log_z);
        delta[y] = (static_cast<std::size_t>(gold[t]) == y ? 1.0 : 0.0) - p;
      }
      for (const auto& name : tokens[t].discrete) {
        std::int32_t f = model.feature_index(name);
        if (f < 0) continue;
        double* row = out.grad.feat.data() + static_cast<std::size_t>(f) * K;
        for (std::size_t y = 0; y < K; ++y) row[y] += delta[y];
      }
      if (D > 0 && !tokens[t].dense.empty()) {
        for (std::size_t y = 0; y < K; ++y) {
          double* row = out.grad.dense.data() + y * D;
          for (std::size_t d = 0; d < D; ++d) row[d] += delta[y] * tokens[t].dense[d];
        }
      }
    }
    for (std::size_t t = 1; t < len; ++t) {
      for (std::size_t p = 0; p < K; ++p) {
        for (std::size_t y = 0; y < K; ++y) {
          double pe = std::exp(chart.alpha[(t - 1) * K + p] + model.trans_w[p * K + y] +
                               emit[t * K + y] + chart.beta[t * K + y] - chart.log_z);
          bool on_gold = static_cast<std::size_t>(gold[t - 1]) == p &&
                         static_cast<std::size_t>(gold[t]) == y;
          out.grad.trans[p * K + y] += (on_gold ? 1.0 : 0.0) - pe;
        }
      }
    }
  }

  if (l2_lambda != 0.0) {
    for (std::size_t i = 0; i < model.feat_w.size(); ++i) {
      out.grad.feat[i] -= l2_lambda * model.feat_w[i];
    }
    for (std::size_t i = 0; i < model.trans_w.size(); ++i) {
      out.grad.trans[i] -= l2_lambda * model.trans_w[i];
    }
    for (std::size_t i = 0; i < model.dense_w.size(); ++i) {
      out.grad.dense[i] -= l2_lambda * model.dense_w[i];
    }
  }
  return out;
}

std::vector<std::string> decode(const CrfModel& model,
                                const std::vector<TokenFeatures>& tokens) {
  const std::size_t K = model.num_labels();
  if (K == 0) throw Error("model has no labels");
  const std::size_t len = tokens.size();
  std::vector<std::string> out(len);
  if (len == 0) return out;

  auto emit = model_emissions(model, tokens);
  std::vector<double> score(len * K);
  std::vector<std::int32_t> back(len * K, 0);
  for (std::size_t y = 0; y < K; ++y) score[y] = emit[y];
  for (std::size_t t = 1; t < len; ++t) {
    for (std::size_t y = 0; y < K; ++y) {
      double best = kNegInf;
      std::int32_t bp = 0;
      for (std::size_t p = 0; p < K; ++p) {
        double v = score[(t - 1) * K + p] + model.trans_w[p * K + y];
        if (v > best) {  // strict: ties keep the lowest predecessor index
          best = v;
          bp = static_cast<std::int32_t>(p);
        }
      }
      score[t * K + y] = best + emit[t * K + y];
      back[t * K + y] = bp;
    }
  }

  std::size_t y = 0;
  double best = score[(len - 1) * K];
  for (std::size_t c = 1; c < K; ++c) {
    if (score[(len - 1) * K + c] > best) {
      best = score[(len - 1) * K + c];
      y = c;
    }
  }
  for (std::size_t t = len; t-- > 0;) {
    out[t] = model.labels[y];
    if (t > 0) y = static_cast<std::size_t>(back[t * K + y]);
  }
  return out;
}

namespace {

struct EncSentence {
  std::vector<std::uint32_t> offsets;  // len + 1, CSR into feat_ids
  std::vector<std::uint32_t> feat_ids;
  std::vector<std::uint32_t> uniq;   // distinct feature ids in the sentence
  std::vector<double> dense;         // len * D, empty when D == 0
  std::vector<std::int32_t> gold;
  std::size_t len = 0;
};

// Training-time weight store: actual weights are scale * v. The L2 shrink
// multiplies every weight each step, so it is folded into the scale; the
// running average of the iterates is recovered lazily from segment sums
// (sum[j] accumulates v[j] * (sum of scales over the steps since j last
// changed)).
struct ScaledWeights {
  std::vector<double> v, sum, cmark;
  double scale = 1.0;
  double csum = 0.0;  // sum of post-step scales so far

  explicit ScaledWeights(std::vector<double> init)
      : v(std::move(init)), sum(v.size(), 0.0), cmark(v.size(), 0.0) {}

  void flush(std::size_t j) {
    sum[j] += v[j] * (csum - cmark[j]);
    cmark[j] = csum;
  }
  void add(std::size_t j, double delta) {  // w[j] += delta
    flush(j);
    v[j] += delta / scale;
  }
  void end_step(double shrink_factor) {  // w /= factor, then record the iterate
    scale /= shrink_factor;
    if (scale < 1e-120) {
      for (std::size_t j = 0; j < v.size(); ++j) {
        flush(j);
        v[j] *= scale;
      }
      scale = 1.0;
    }
    csum += scale;
  }
  std::vector<double> average(std::size_t steps) {
    std::vector<double> avg(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      flush(j);
      avg[j] = sum[j] / static_cast<double>(steps);
    }
    return avg;
  }
};

CrfModel init_model(std::vector<std::string> labels, std::vector<std::string> feature_names,
                    std::size_t dense_dim, const ModelConfig& config) {
  CrfModel m;
  m.labels = std::move(labels);
  m.feature_names = std::move(feature_names);
  m.feature_ids.reserve(m.feature_names.size());
  for (std::size_t i = 0; i < m.feature_names.size(); ++i) {
    m.feature_ids.emplace(m.feature_names[i], static_cast<std::uint32_t>(i));
  }
  const std::size_t K = m.labels.size();
  m.feat_w.assign(m.feature_names.size() * K, 0.0);
  m.trans_w.assign(K * K, 0.0);
  m.dense_dim = dense_dim;
  m.dense_w.assign(K * dense_dim, 0.0);
  m.config = config;
  if (dense_dim > 0) {
    std::mt19937_64 rng(mix_seed(config.seed, "dense-init"));
    double half = 0.5 / static_cast<double>(dense_dim);
    for (auto& w : m.dense_w) w = uniform_in(rng, -half, half);
  }
  return m;
}

void validate_train_config(const TrainConfig& cfg, const Featurizer& fz) {
  if (!(cfg.l2_lambda >= 0.0) || !std::isfinite(cfg.l2_lambda)) {
    throw ValidationError("l2_lambda must be a finite value >= 0");
  }
  if (cfg.epochs < 0) throw ValidationError("epochs must be >= 0");
  if (!(cfg.eta0 > 0.0) || !std::isfinite(cfg.eta0)) {
    throw ValidationError("eta0 must be a finite value > 0");
  }
  if (!(cfg.t0 >= 0.0) || !std::isfinite(cfg.t0)) {
    throw ValidationError("t0 must be a finite value >= 0");
  }
  if (cfg.mode != fz.mode()) {
    throw ValidationError("train config mode " + feature_mode_name(cfg.mode) +
                          " does not match featurizer mode " + feature_mode_name(fz.mode()));
  }
}

}  // namespace

CrfModel train(const std::vector<Sentence>& train_split, const Featurizer& featurizer,
               const TrainConfig& config, TrainLog* log) {
  auto started = std::chrono::steady_clock::now();
  validate_train_config(config, featurizer);
  if (train_split.empty()) throw ValidationError("empty training split");

  std::set<std::string> label_set;
  for (const auto& s : train_split) label_set.insert(s.tags.begin(), s.tags.end());
  std::vector<std::string> labels(label_set.begin(), label_set.end());
  const std::size_t K = labels.size();
  const std::size_t D = featurizer.dense_dim();

  std::unordered_map<std::string, std::uint32_t> feature_ids;
  std::vector<std::string> feature_names;
  std::vector<EncSentence> enc(train_split.size());
  for (std::size_t i = 0; i < train_split.size(); ++i) {
    const auto& sentence = train_split[i];
    auto tokens = featurizer.featurize(sentence.chars);
    EncSentence& es = enc[i];
    es.len = tokens.size();
    es.offsets.reserve(es.len + 1);
    es.offsets.push_back(0);
    es.gold.resize(es.len);
    if (D > 0) es.dense.resize(es.len * D);
    for (std::size_t t = 0; t < es.len; ++t) {
      for (const auto& name : tokens[t].discrete) {
        auto [it, added] = feature_ids.emplace(
            name, static_cast<std::uint32_t>(feature_names.size()));
        if (added) feature_names.push_back(name);
        es.feat_ids.push_back(it->second);
      }
      es.offsets.push_back(static_cast<std::uint32_t>(es.feat_ids.size()));
      if (D > 0) {
        std::copy(tokens[t].dense.begin(), tokens[t].dense.end(),
                  es.dense.begin() + static_cast<std::ptrdiff_t>(t * D));
      }
      auto it = std::lower_bound(labels.begin(), labels.end(), sentence.tags[t]);
      es.gold[t] = static_cast<std::int32_t>(it - labels.begin());
    }
    es.uniq = es.feat_ids;
    std::sort(es.uniq.begin(), es.uniq.end());
    es.uniq.erase(std::unique(es.uniq.begin(), es.uniq.end()), es.uniq.end());
  }

  ModelConfig mc;
  mc.templates = feature_mode_name(featurizer.mode());
  mc.gazetteer = featurizer.gazetteer_name();
  mc.seed = config.seed;
  CrfModel model = init_model(std::move(labels), std::move(feature_names), D, mc);

  const std::size_t F = model.feature_names.size();
  const std::size_t trans_off = F * K;
  const std::size_t dense_off = trans_off + K * K;
  const std::size_t W = dense_off + K * D;

  if (config.epochs == 0) {
    if (log) {
      log->seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    return model;
  }

  std::vector<double> init(W, 0.0);
  std::copy(model.dense_w.begin(), model.dense_w.end(), init.begin() + dense_off);
  ScaledWeights sw(std::move(init));

  const std::size_t N = train_split.size();
  const double t0 = config.t0 > 0.0 ? config.t0 : 10.0 * static_cast<double>(N);
  std::mt19937_64 rng(mix_seed(config.seed, "shuffle"));
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;

  std::vector<double> emit, strans(K * K), delta(K), gtrans(K * K), gdense(K * D);
  std::vector<double> gfeat(F * K, 0.0);
  Chart chart;
  std::size_t step = 0;

  for (std::int64_t epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = N; i-- > 1;) {
      std::size_t k = uniform_index(rng, i + 1);
      std::swap(order[i], order[k]);
    }
    double epoch_ll = 0.0;

    for (std::size_t idx : order) {
      const EncSentence& es = enc[idx];
      const std::size_t len = es.len;
      const double eta = config.eta0 / (1.0 + static_cast<double>(step) / t0);

      emit.assign(len * K, 0.0);
      for (std::size_t t = 0; t < len; ++t) {
        double* row = emit.data() + t * K;
        for (std::uint32_t fi = es.offsets[t]; fi < es.offsets[t + 1]; ++fi) {
          const double* w = sw.v.data() + static_cast<std::size_t>(es.feat_ids[fi]) * K;
          for (std::size_t y = 0; y < K; ++y) row[y] += w[y];
        }
        if (D > 0) {
          const double* x = es.dense.data() + t * D;
          for (std::size_t y = 0; y < K; ++y) {
            const double* w = sw.v.data() + dense_off + y * D;
            double dot = 0.0;
            for (std::size_t d = 0; d < D; ++d) dot += w[d] * x[d];
            row[y] += dot;
          }
        }
        for (std::size_t y = 0; y < K; ++y) row[y] *= sw.scale;
      }
      for (std::size_t j = 0; j < K * K; ++j) strans[j] = sw.scale * sw.v[trans_off + j];

      forward_backward(emit, strans.data(), len, K, chart);

      double gold_score = 0.0;
      for (std::size_t t = 0; t < len; ++t) {
        gold_score += emit[t * K + static_cast<std::size_t>(es.gold[t])];
        if (t > 0) {
          gold_score += strans[static_cast<std::size_t>(es.gold[t - 1]) * K +
                               static_cast<std::size_t>(es.gold[t])];
        }
      }
      double ll = gold_score - chart.log_z;
      if (!std::isfinite(ll)) {
        throw Error("training diverged at epoch " + std::to_string(epoch));
      }
      epoch_ll += ll;

      for (std::uint32_t f : es.uniq) {
        std::fill_n(gfeat.begin() + static_cast<std::size_t>(f) * K, K, 0.0);
      }
      if (D > 0) std::fill(gdense.begin(), gdense.end(), 0.0);
      std::fill(gtrans.begin(), gtrans.end(), 0.0);

      for (std::size_t t = 0; t < len; ++t) {
        for (std::size_t y = 0; y < K; ++y) {
          double p = std::exp(chart.alpha[t * K + y] + chart.beta[t * K + y] - chart.log_z);
          delta[y] = (static_cast<std::size_t>(es.gold[t]) == y ? 1.0 : 0.0) - p;
        }
        for (std::uint32_t fi = es.offsets[t]; fi < es.offsets[t + 1]; ++fi) {
          double* row = gfeat.data() + static_cast<std::size_t>(es.feat_ids[fi]) * K;
          for (std::size_t y = 0; y < K; ++y) row[y] += delta[y];
        }
        if (D > 0) {
          const double* x = es.dense.data() + t * D;
          for (std::size_t y = 0; y < K; ++y) {
            double* row = gdense.data() + y * D;
            for (std::size_t d = 0; d < D; ++d) row[d] += delta[y] * x[d];
          }
        }
      }
      for (std::size_t t = 1; t < len; ++t) {
        for (std::size_t p = 0; p < K; ++p) {
          for (std::size_t y = 0; y < K; ++y) {
            double pe = std::exp(chart.alpha[(t - 1) * K + p] + strans[p * K + y] +
                                 emit[t * K + y] + chart.beta[t * K + y] - chart.log_z);
            bool on_gold = static_cast<std::size_t>(es.gold[t - 1]) == p &&
                           static_cast<std::size_t>(es.gold[t]) == y;
            gtrans[p * K + y] += (on_gold ? 1.0 : 0.0) - pe;
          }
        }
      }

      for (std::uint32_t f : es.uniq) {
        const std::size_t base = static_cast<std::size_t>(f) * K;
        for (std::size_t y = 0; y < K; ++y) sw.add(base + y, eta * gfeat[base + y]);
      }
      for (std::size_t j = 0; j < K * K; ++j) sw.add(trans_off + j, eta * gtrans[j]);
      for (std::size_t j = 0; j < K * D; ++j) sw.add(dense_off + j, eta * gdense[j]);
      sw.end_step(1.0 + eta * config.l2_lambda);
      ++step;
    }
    if (log) log->epoch_ll.push_back(epoch_ll);
  }

  auto avg = sw.average(step);
  std::copy(avg.begin(), avg.begin() + static_cast<std::ptrdiff_t>(trans_off),
            model.feat_w.begin());
  std::copy(avg.begin() + static_cast<std::ptrdiff_t>(trans_off),
            avg.begin() + static_cast<std::ptrdiff_t>(dense_off), model.trans_w.begin());
  std::copy(avg.begin() + static_cast<std::ptrdiff_t>(dense_off), avg.end(),
            model.dense_w.begin());

  if (log) {
    log->seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  return model;
}

void save_model(const CrfModel& model, const std::string& path) {
  auto all_finite = [](const std::vector<double>& w) {
    return std::all_of(w.begin(), w.end(), [](double x) { return std::isfinite(x); });
  };
  if (!all_finite(model.feat_w) || !all_finite(model.trans_w) || !all_finite(model.dense_w)) {
    throw Error("refusing to save a model with non-finite weights");
  }

  nlohmann::ordered_json j;
  j["magic"] = "gazlab.crf";
  j["version"] = 1;
  j["config"] = {{"templates", model.config.templates},
                 {"gazetteer", model.config.gazetteer},
                 {"seed", model.config.seed}};
  j["labels"] = model.labels;
  j["features"] = model.feature_names;
  j["dense_dim"] = model.dense_dim;
  j["weights"] = {{"feature", model.feat_w},
                  {"transition", model.trans_w},
                  {"dense", model.dense_w}};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump() << '\n';
  if (!out) throw IoError("failed writing " + path);
}

CrfModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("corrupt model file " + path + ": " + e.what());
  }
  if (!j.is_object() || j.value("magic", std::string()) != "gazlab.crf") {
    throw FormatError("not a gazlab.crf model file: " + path);
  }
  if (j.value("version", std::int64_t{-1}) != 1) {
    throw FormatError("unsupported model version in " + path);
  }

  CrfModel m;
  try {
    const auto& cfg = j.at("config");
    m.config.templates = cfg.at("templates").get<std::string>();
    m.config.gazetteer = cfg.at("gazetteer").get<std::string>();
    m.config.seed = cfg.at("seed").get<std::uint64_t>();
    m.labels = j.at("labels").get<std::vector<std::string>>();
    m.feature_names = j.at("features").get<std::vector<std::string>>();
    m.dense_dim = j.at("dense_dim").get<std::size_t>();
    const auto& w = j.at("weights");
    m.feat_w = w.at("feature").get<std::vector<double>>();
    m.trans_w = w.at("transition").get<std::vector<double>>();
    m.dense_w = w.at("dense").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("corrupt model file " + path + ": " + e.what());
  }

  const std::size_t K = m.labels.size();
  if (K == 0 || m.feat_w.size() != m.feature_names.size() * K ||
      m.trans_w.size() != K * K || m.dense_w.size() != K * m.dense_dim) {
    throw FormatError("model weight tables have inconsistent sizes: " + path);
  }
  auto all_finite = [](const std::vector<double>& w) {
    return std::all_of(w.begin(), w.end(), [](double x) { return std::isfinite(x); });
  };
  if (!all_finite(m.feat_w) || !all_finite(m.trans_w) || !all_finite(m.dense_w)) {
    throw FormatError("model contains non-finite weights: " + path);
  }
  m.feature_ids.reserve(m.feature_names.size());
  for (std::size_t i = 0; i < m.feature_names.size(); ++i) {
    auto [it, added] = m.feature_ids.emplace(m.feature_names[i], static_cast<std::uint32_t>(i));
    if (!added) throw FormatError("duplicate feature name in model file: " + path);
  }
  return m;
}

std::size_t count_parameters(const CrfModel& model) {
  return model.feat_w.size() + model.trans_w.size() + model.dense_w.size();
}

double measure_train_time(const std::vector<Sentence>& train_split,
                          const Featurizer& featurizer, const TrainConfig& config) {
  TrainLog log;
  train(train_split, featurizer, config, &log);
  return log.seconds;
}

}  // namespace gazlab
