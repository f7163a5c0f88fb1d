#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gazlab/tagger.hpp"
#include "support/oracles.hpp"
#include "support/tmpdir.hpp"

using namespace gazlab;
using namespace gazlab::testsupport;

namespace {

// Separable toy language: p is a PER, q is a LOC, everything else is O.
std::vector<Sentence> toy_corpus(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sentence> out;
  const std::u32string chars = U"pqxy";
  for (std::size_t i = 0; i < n; ++i) {
    Sentence s;
    s.scheme = TagScheme::Bioes;
    std::size_t len = 3 + uniform_index(rng, 5);
    for (std::size_t t = 0; t < len; ++t) {
      char32_t c = chars[uniform_index(rng, chars.size())];
      s.chars += c;
      s.tags.push_back(c == U'p' ? "S-PER" : c == U'q' ? "S-LOC" : "O");
    }
    out.push_back(std::move(s));
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Plain SGD with explicit weight vectors, mirroring train()'s update order:
// w += eta * grad, then w /= (1 + eta * lambda); report the iterate average.
CrfModel replica_train(const std::vector<Sentence>& split, const Featurizer& fz,
                       const TrainConfig& cfg) {
  TrainConfig init_cfg = cfg;
  init_cfg.epochs = 0;
  CrfModel m = train(split, fz, init_cfg);

  const std::size_t N = split.size();
  const double t0 = cfg.t0 > 0.0 ? cfg.t0 : 10.0 * static_cast<double>(N);
  std::mt19937_64 rng(mix_seed(cfg.seed, "shuffle"));
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;

  std::vector<std::vector<TokenFeatures>> feats(N);
  for (std::size_t i = 0; i < N; ++i) feats[i] = fz.featurize(split[i].chars);

  CrfGradient sum{std::vector<double>(m.feat_w.size(), 0.0),
                  std::vector<double>(m.trans_w.size(), 0.0),
                  std::vector<double>(m.dense_w.size(), 0.0)};
  std::size_t step = 0;
  for (std::int64_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = N; i-- > 1;) {
      std::size_t k = uniform_index(rng, i + 1);
      std::swap(order[i], order[k]);
    }
    for (std::size_t idx : order) {
      double eta = cfg.eta0 / (1.0 + static_cast<double>(step) / t0);
      ScoredGradient sg = score_and_gradient(m, feats[idx], split[idx].tags);
      double shrink = 1.0 + eta * cfg.l2_lambda;
      for (std::size_t j = 0; j < m.feat_w.size(); ++j) {
        m.feat_w[j] = (m.feat_w[j] + eta * sg.grad.feat[j]) / shrink;
        sum.feat[j] += m.feat_w[j];
      }
      for (std::size_t j = 0; j < m.trans_w.size(); ++j) {
        m.trans_w[j] = (m.trans_w[j] + eta * sg.grad.trans[j]) / shrink;
        sum.trans[j] += m.trans_w[j];
      }
      for (std::size_t j = 0; j < m.dense_w.size(); ++j) {
        m.dense_w[j] = (m.dense_w[j] + eta * sg.grad.dense[j]) / shrink;
        sum.dense[j] += m.dense_w[j];
      }
      ++step;
    }
  }
  auto avg = [&](std::vector<double>& w, const std::vector<double>& s) {
    for (std::size_t j = 0; j < w.size(); ++j) {
      w[j] = s[j] / static_cast<double>(step);
    }
  };
  avg(m.feat_w, sum.feat);
  avg(m.trans_w, sum.trans);
  avg(m.dense_w, sum.dense);
  return m;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b,
                 double tol) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  CHECK(worst < tol);
}

}  // namespace

TEST_CASE("path probabilities sum to one") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 25; ++i) {
    RandomInstance inst = random_instance(rng, 5, 4, i % 2 == 1);
    double sum = path_probability_sum(inst.model, inst.tokens);
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
}

TEST_CASE("zero weights give the uniform distribution") {
  CrfModel m;
  m.labels = {"A", "B", "C"};
  m.trans_w.assign(9, 0.0);
  std::vector<TokenFeatures> tokens(4);
  std::vector<std::string> gold = {"A", "C", "B", "A"};
  double ll = score_and_gradient(m, tokens, gold).log_likelihood;
  CHECK(ll == doctest::Approx(-4.0 * std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches finite differences") {
  std::mt19937_64 rng(202);
  for (int i = 0; i < 8; ++i) {
    RandomInstance inst = random_instance(rng, 4, 3, i % 2 == 1);
    double lambda = (i % 3 == 0) ? 0.0 : 0.37;
    double err = max_gradient_fd_error(inst.model, inst.tokens, inst.gold, lambda);
    CHECK(err < 1e-4);
  }
}

TEST_CASE("gradient edge cases") {
  std::mt19937_64 rng(303);
  RandomInstance inst = random_instance(rng, 4, 3, false);

  SUBCASE("unknown gold tag") {
    std::vector<std::string> gold(inst.tokens.size(), "NOPE");
    CHECK_THROWS_AS(score_and_gradient(inst.model, inst.tokens, gold), Error);
  }
  SUBCASE("misaligned gold") {
    std::vector<std::string> gold(inst.tokens.size() + 1, inst.model.labels[0]);
    CHECK_THROWS_AS(score_and_gradient(inst.model, inst.tokens, gold), Error);
  }
  SUBCASE("empty input scores zero") {
    ScoredGradient sg = score_and_gradient(inst.model, {}, {});
    CHECK(sg.log_likelihood == 0.0);
    CHECK(max_abs(sg.grad.feat) == 0.0);
    CHECK(max_abs(sg.grad.trans) == 0.0);
  }
  SUBCASE("dense size mismatch") {
    RandomInstance d = random_instance(rng, 3, 3, true);
    d.tokens[0].dense.push_back(1.0);
    CHECK_THROWS_AS(score_and_gradient(d.model, d.tokens, d.gold), Error);
  }
  SUBCASE("l2 term shifts the gradient by -lambda w") {
    ScoredGradient plain = score_and_gradient(inst.model, inst.tokens, inst.gold);
    ScoredGradient reg = score_and_gradient(inst.model, inst.tokens, inst.gold, 0.5);
    CHECK(plain.log_likelihood == reg.log_likelihood);
    for (std::size_t j = 0; j < plain.grad.feat.size(); ++j) {
      CHECK(reg.grad.feat[j] ==
            doctest::Approx(plain.grad.feat[j] - 0.5 * inst.model.feat_w[j]));
    }
  }
}

TEST_CASE("viterbi finds the exhaustive maximum") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 25; ++i) {
    RandomInstance inst = random_instance(rng, 5, 4, i % 2 == 1);
    auto decoded = decode(inst.model, inst.tokens);
    double decoded_ll =
        score_and_gradient(inst.model, inst.tokens, decoded).log_likelihood;
    double best = best_path_ll(inst.model, inst.tokens);
    CHECK(decoded_ll >= best - 1e-9);
  }
}

TEST_CASE("viterbi ties pick the lowest label index") {
  CrfModel m;
  m.labels = {"A", "B"};
  m.trans_w.assign(4, 0.0);
  std::vector<TokenFeatures> tokens(5);
  auto out = decode(m, tokens);
  CHECK(out == std::vector<std::string>(5, "A"));
  CHECK(decode(m, {}).empty());
}

TEST_CASE("training fits a separable corpus") {
  auto corpus = toy_corpus(40, 9001);
  Featurizer fz;
  TrainConfig cfg;
  cfg.epochs = 10;
  cfg.seed = 5;

  TrainLog log;
  CrfModel model = train(corpus, fz, cfg, &log);
  CHECK(model.labels == std::vector<std::string>{"O", "S-LOC", "S-PER"});
  CHECK(model.config.templates == "baseline");
  CHECK(model.config.gazetteer.empty());
  CHECK(model.config.seed == 5);
  REQUIRE(log.epoch_ll.size() == 10);
  CHECK(log.epoch_ll.back() > log.epoch_ll.front());
  CHECK(log.seconds > 0.0);

  for (const auto& s : corpus) {
    CHECK(decode(model, fz.featurize(s.chars)) == s.tags);
  }
}

TEST_CASE("training is deterministic in its seed") {
  auto corpus = toy_corpus(12, 77);
  Featurizer fz;
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 21;

  CrfModel a = train(corpus, fz, cfg);
  CrfModel b = train(corpus, fz, cfg);
  CHECK(a.feat_w == b.feat_w);
  CHECK(a.trans_w == b.trans_w);
  CHECK(a.feature_names == b.feature_names);

  cfg.seed = 22;
  CrfModel c = train(corpus, fz, cfg);
  CHECK(a.feat_w != c.feat_w);

  // t0 = 0 stands for the 10 * |train| default.
  cfg.seed = 21;
  cfg.t0 = 10.0 * static_cast<double>(corpus.size());
  CrfModel d = train(corpus, fz, cfg);
  CHECK(a.feat_w == d.feat_w);
}

TEST_CASE("train matches a plain SGD replica") {
  auto corpus = toy_corpus(6, 1234);
  Featurizer fz;
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 8;
  cfg.l2_lambda = 0.05;

  CrfModel fast = train(corpus, fz, cfg);
  CrfModel slow = replica_train(corpus, fz, cfg);
  check_close(fast.feat_w, slow.feat_w, 1e-9);
  check_close(fast.trans_w, slow.trans_w, 1e-9);
}

TEST_CASE("strong regularization crushes the weights") {
  auto corpus = toy_corpus(10, 55);
  Featurizer fz;
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.l2_lambda = 1e6;
  CrfModel m = train(corpus, fz, cfg);
  CHECK(max_abs(m.feat_w) < 1e-3);
  CHECK(max_abs(m.trans_w) < 1e-3);
}

TEST_CASE("epochs zero returns the initial model") {
  auto corpus = toy_corpus(5, 66);
  Featurizer fz;
  TrainConfig cfg;
  cfg.epochs = 0;
  CrfModel m = train(corpus, fz, cfg);
  CHECK(max_abs(m.feat_w) == 0.0);
  CHECK(max_abs(m.trans_w) == 0.0);
  CHECK(m.feature_names.size() > 0);
  CHECK(count_parameters(m) == m.feat_w.size() + m.trans_w.size());
}

TEST_CASE("train validates its inputs") {
  auto corpus = toy_corpus(5, 66);
  Featurizer fz;
  TrainConfig cfg;

  SUBCASE("empty split") {
    CHECK_THROWS_AS(train({}, fz, cfg), ValidationError);
  }
  SUBCASE("negative epochs") {
    cfg.epochs = -1;
    CHECK_THROWS_AS(train(corpus, fz, cfg), ValidationError);
  }
  SUBCASE("bad eta0") {
    cfg.eta0 = 0.0;
    CHECK_THROWS_AS(train(corpus, fz, cfg), ValidationError);
  }
  SUBCASE("bad lambda") {
    cfg.l2_lambda = -1.0;
    CHECK_THROWS_AS(train(corpus, fz, cfg), ValidationError);
  }
  SUBCASE("mode mismatch") {
    cfg.mode = FeatureMode::GazDiscrete;
    CHECK_THROWS_AS(train(corpus, fz, cfg), ValidationError);
  }
  SUBCASE("divergence is reported") {
    cfg.eta0 = 1e308;
    cfg.l2_lambda = 0.0;
    try {
      train(corpus, fz, cfg);
      FAIL("expected divergence");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("diverged") != std::string::npos);
    }
  }
}

TEST_CASE("model save/load round trip") {
  std::mt19937_64 rng(110);
  RandomInstance inst = random_instance(rng, 4, 4, true);
  inst.model.config.templates = "baseline+gaz-dense";
  inst.model.config.gazetteer = "somegaz";
  inst.model.config.seed = 99;

  TempDir dir;
  std::string path = dir.file("model.json");
  save_model(inst.model, path);
  CrfModel loaded = load_model(path);

  CHECK(loaded.labels == inst.model.labels);
  CHECK(loaded.feature_names == inst.model.feature_names);
  CHECK(loaded.feat_w == inst.model.feat_w);
  CHECK(loaded.trans_w == inst.model.trans_w);
  CHECK(loaded.dense_w == inst.model.dense_w);
  CHECK(loaded.dense_dim == inst.model.dense_dim);
  CHECK(loaded.config.templates == "baseline+gaz-dense");
  CHECK(loaded.config.gazetteer == "somegaz");
  CHECK(loaded.config.seed == 99);
  CHECK(loaded.feature_ids.at(loaded.feature_names[1]) == 1);

  // Bitwise identical decode behavior on a random input.
  auto before = decode(inst.model, inst.tokens);
  auto after = decode(loaded, inst.tokens);
  CHECK(before == after);
  CHECK(score_and_gradient(loaded, inst.tokens, before).log_likelihood ==
        score_and_gradient(inst.model, inst.tokens, before).log_likelihood);
}

TEST_CASE("save_model rejects non-finite weights") {
  std::mt19937_64 rng(111);
  RandomInstance inst = random_instance(rng, 3, 3, false);
  inst.model.feat_w[0] = std::numeric_limits<double>::infinity();
  TempDir dir;
  CHECK_THROWS_AS(save_model(inst.model, dir.file("bad.json")), Error);
}

TEST_CASE("load_model rejects broken files") {
  TempDir dir;
  CHECK_THROWS_AS(load_model(dir.file("absent.json")), IoError);

  auto write_and_load = [&](const std::string& name, const std::string& content) {
    return load_model(write_file(dir, name, content));
  };
  CHECK_THROWS_AS(write_and_load("a.json", "{"), FormatError);
  CHECK_THROWS_AS(write_and_load("b.json", "[1,2]"), FormatError);
  CHECK_THROWS_AS(write_and_load("c.json", R"({"magic":"other"})"), FormatError);

  std::string base = R"({"magic":"gazlab.crf","version":1,)"
                     R"("config":{"templates":"baseline","gazetteer":"","seed":0},)"
                     R"("labels":["A","B"],"features":["f"],"dense_dim":0,)";
  CHECK_THROWS_AS(
      write_and_load("v.json", R"({"magic":"gazlab.crf","version":2})"), FormatError);
  CHECK_THROWS_AS(  // feature table too small
      write_and_load("w.json",
                     base + R"("weights":{"feature":[0],"transition":[0,0,0,0],"dense":[]}})"),
      FormatError);
  CHECK_THROWS_AS(  // non-finite weight
      write_and_load(
          "x.json",
          base + R"("weights":{"feature":[1e999,0],"transition":[0,0,0,0],"dense":[]}})"),
      FormatError);
  CHECK_THROWS_AS(  // missing weights object
      write_and_load("y.json", base.substr(0, base.size() - 1) + "}"), FormatError);

  std::string dup = R"({"magic":"gazlab.crf","version":1,)"
                    R"("config":{"templates":"baseline","gazetteer":"","seed":0},)"
                    R"("labels":["A"],"features":["f","f"],"dense_dim":0,)"
                    R"("weights":{"feature":[0,0],"transition":[0],"dense":[]}})";
  CHECK_THROWS_AS(write_and_load("z.json", dup), FormatError);
}

TEST_CASE("measure_train_time reports wall time") {
  auto corpus = toy_corpus(5, 12);
  Featurizer fz;
  TrainConfig cfg;
  cfg.epochs = 1;
  CHECK(measure_train_time(corpus, fz, cfg) > 0.0);
}
