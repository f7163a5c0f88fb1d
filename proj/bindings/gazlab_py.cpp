#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gazlab/analysis.hpp"
#include "gazlab/common.hpp"
#include "gazlab/corpus.hpp"
#include "gazlab/evaluation.hpp"
#include "gazlab/features.hpp"
#include "gazlab/gazetteer.hpp"
#include "gazlab/matcher.hpp"
#include "gazlab/pipeline.hpp"
#include "gazlab/tagger.hpp"

namespace py = pybind11;
using namespace gazlab;

namespace {

py::dict report_dict(const EvalReport& r) {
  py::dict per_type;
  for (const auto& [etype, s] : r.per_type) {
    per_type[py::str(etype)] =
        py::dict(py::arg("tp") = s.tp, py::arg("fp") = s.fp, py::arg("fn") = s.fn,
                 py::arg("precision") = s.precision, py::arg("recall") = s.recall,
                 py::arg("f1") = s.f1);
  }
  return py::dict(py::arg("tp") = r.tp, py::arg("fp") = r.fp, py::arg("fn") = r.fn,
                  py::arg("precision") = r.precision, py::arg("recall") = r.recall,
                  py::arg("f1") = r.f1, py::arg("per_type") = per_type,
                  py::arg("warnings") = r.warnings);
}

py::dict sets_dict(const LexemeSets& s) {
  return py::dict(py::arg("dataset") = s.dataset_name,
                  py::arg("gazetteer") = s.gazetteer_name, py::arg("A") = s.train_matched,
                  py::arg("B") = s.test_matched, py::arg("I") = s.shared,
                  py::arg("S") = s.test_only, py::arg("E") = s.entity,
                  py::arg("N") = s.non_entity);
}

py::dict ablation_dict(const AblationReport& r) {
  py::list points;
  for (const auto& p : r.points) {
    py::dict d(py::arg("point") = p.label, py::arg("fingerprint") = p.fingerprint,
               py::arg("skipped") = p.skipped);
    if (p.skipped)
      d["note"] = p.note;
    else
      d["f1"] = p.f1;
    points.append(std::move(d));
  }
  py::dict out(py::arg("axis") = r.axis, py::arg("dataset") = r.dataset_name,
               py::arg("gazetteer") = r.gazetteer_name, py::arg("model") = r.model_name,
               py::arg("seed") = r.seed, py::arg("points") = points);
  if (r.axis == "embeddings") out["delta"] = r.delta;
  return out;
}

TrainConfig make_train_config(std::int64_t epochs, double l2_lambda, double eta0,
                              double t0) {
  TrainConfig tc;
  tc.epochs = epochs;
  tc.l2_lambda = l2_lambda;
  tc.eta0 = eta0;
  tc.t0 = t0;
  return tc;
}

// Owns the corpus, the gazetteer copy and the wired pipeline, so python code
// cannot outlive-by-accident any of the borrowed pieces.
class Experiment {
 public:
  Experiment(Dataset dataset, std::optional<Gazetteer> gazetteer, const std::string& mode,
             std::uint64_t seed)
      : dataset_(std::move(dataset)) {
    FeatureMode m = parse_feature_mode(mode);
    if (gazetteer)
      pipeline_ = std::make_unique<Pipeline>(dataset_, std::move(*gazetteer), m, seed);
    else
      pipeline_ = std::make_unique<Pipeline>(dataset_, m, seed);
  }

  CrfModel train(std::int64_t epochs, double l2_lambda, double eta0, double t0) const {
    return pipeline_->train_model(make_train_config(epochs, l2_lambda, eta0, t0));
  }

  const std::vector<Sentence>& split(const std::string& name) const {
    if (name == "train") return dataset_.train;
    if (name == "dev") return dataset_.dev;
    if (name == "test") return dataset_.test;
    throw ValidationError("unknown split: " + name);
  }

  py::dict evaluate_split(const CrfModel& model, const std::string& split_name,
                          const std::optional<MaskSet>& mask) const {
    const auto& sentences = split(split_name);
    EvalReport r = mask ? evaluate(model, sentences, pipeline_->featurizer(), *mask)
                        : evaluate(model, sentences, pipeline_->featurizer());
    return report_dict(r);
  }

  std::vector<std::string> tag(const CrfModel& model, const std::string& text) const {
    auto tokens = pipeline_->featurizer().featurize(utf8_decode(text));
    auto [tags, repaired] = normalize_tags(decode(model, tokens), TagScheme::Bioes);
    (void)repaired;
    return tags;
  }

  py::dict sets() const { return sets_dict(compute_sets(pipeline_->matcher(), dataset_)); }

  py::dict mask_effects(const CrfModel& model) const {
    LexemeSets sets = compute_sets(pipeline_->matcher(), dataset_);
    CausalEffectReport r =
        causal_effects(model, dataset_.test, pipeline_->featurizer(), sets);
    py::list points;
    for (const auto& p : r.points) {
      points.append(py::dict(py::arg("set") = p.set_name, py::arg("size") = p.set_size,
                             py::arg("masked_f1") = p.masked_f1,
                             py::arg("effect") = p.effect));
    }
    return py::dict(py::arg("dataset") = r.dataset_name,
                    py::arg("gazetteer") = r.gazetteer_name,
                    py::arg("model") = r.model_name, py::arg("fingerprint") = r.fingerprint,
                    py::arg("base_f1") = r.base_f1, py::arg("points") = points);
  }

  const Dataset& dataset() const { return dataset_; }
  std::uint64_t fingerprint() const { return pipeline_->fingerprint(); }
  std::string mode() const { return feature_mode_name(pipeline_->mode()); }

 private:
  Dataset dataset_;
  std::unique_ptr<Pipeline> pipeline_;
};

}  // namespace

PYBIND11_MODULE(_gazlab, m) {
  m.doc() = "gazetteer-aware sequence labeling toolkit";

  // Translators run newest-first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::class_<Sentence>(m, "Sentence")
      .def_property_readonly("text", &Sentence::text)
      .def_readonly("tags", &Sentence::tags)
      .def("__len__", &Sentence::size);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("name", &Dataset::name)
      .def_readonly("train", &Dataset::train)
      .def_readonly("dev", &Dataset::dev)
      .def_readonly("test", &Dataset::test)
      .def_readonly("repaired_tags", &Dataset::repaired_tags)
      .def("stats", [](const Dataset& d) {
        SplitCounts c = dataset_stats(d);
        return py::dict(py::arg("total") = c.total, py::arg("train") = c.train,
                        py::arg("dev") = c.dev, py::arg("test") = c.test,
                        py::arg("repaired_tags") = d.repaired_tags);
      });

  m.def(
      "load_dataset",
      [](const std::string& train, const std::string& dev, const std::string& test,
         const std::string& scheme, const std::string& name) {
        return load_dataset(train, dev, test, parse_scheme(scheme), name);
      },
      py::arg("train"), py::arg("dev"), py::arg("test"), py::arg("scheme") = "BIO",
      py::arg("name") = "dataset");

  py::class_<Gazetteer>(m, "Gazetteer")
      .def_readonly("name", &Gazetteer::name)
      .def_readonly("lexemes", &Gazetteer::lexemes)
      .def_readonly("dim", &Gazetteer::dim)
      .def_readonly("pretrained", &Gazetteer::pretrained)
      .def("__len__", &Gazetteer::size)
      .def("stats",
           [](const Gazetteer& g) {
             GazetteerStats s = gazetteer_stats(g);
             return py::dict(py::arg("num") = s.num, py::arg("dim") = s.dim,
                             py::arg("pretrained") = s.pretrained,
                             py::arg("coverage_ratio") = s.coverage_ratio);
           })
      .def("subsample", &subsample, py::arg("fraction"), py::arg("seed"))
      .def("strip_embeddings", &strip_embeddings);

  m.def("load_gazetteer", &load_gazetteer, py::arg("lexicon"),
        py::arg("embeddings") = std::nullopt, py::arg("name") = "gazetteer",
        py::arg("unpretrained_dim") = 50);

  py::class_<LexemeMatcher>(m, "Matcher")
      .def(py::init<const Gazetteer&>(), py::arg("gazetteer"))
      .def_property_readonly("lexeme_count", &LexemeMatcher::lexeme_count)
      .def(
          "match",
          [](const LexemeMatcher& mm, const std::string& text,
             const std::optional<MaskSet>& mask) {
            auto spans = mask ? mm.match_all(utf8_decode(text), *mask)
                              : mm.match_all(utf8_decode(text));
            py::list out;
            for (const auto& s : spans) {
              out.append(py::dict(py::arg("start") = s.start, py::arg("end") = s.end,
                                  py::arg("lexeme") = s.surface,
                                  py::arg("lexeme_id") = s.lexeme_id));
            }
            return out;
          },
          py::arg("text"), py::arg("mask") = std::nullopt);

  py::class_<CrfModel>(m, "Model")
      .def_readonly("labels", &CrfModel::labels)
      .def_property_readonly("parameters",
                             [](const CrfModel& mm) { return count_parameters(mm); })
      .def_property_readonly("config",
                             [](const CrfModel& mm) {
                               return py::dict(py::arg("templates") = mm.config.templates,
                                               py::arg("gazetteer") = mm.config.gazetteer,
                                               py::arg("seed") = mm.config.seed);
                             })
      .def("save", &save_model, py::arg("path"))
      .def_static("load", &load_model, py::arg("path"));

  py::class_<Experiment>(m, "Experiment")
      .def(py::init<Dataset, std::optional<Gazetteer>, const std::string&, std::uint64_t>(),
           py::arg("dataset"), py::arg("gazetteer") = std::nullopt,
           py::arg("mode") = "baseline", py::arg("seed") = 0)
      .def("train", &Experiment::train, py::arg("epochs") = 10,
           py::arg("l2_lambda") = 1e-4, py::arg("eta0") = 0.1, py::arg("t0") = 0.0)
      .def("evaluate", &Experiment::evaluate_split, py::arg("model"),
           py::arg("split") = "test", py::arg("mask") = std::nullopt)
      .def("tag", &Experiment::tag, py::arg("model"), py::arg("text"))
      .def("sets", &Experiment::sets)
      .def("mask_effects", &Experiment::mask_effects, py::arg("model"))
      .def_property_readonly("dataset", &Experiment::dataset)
      .def_property_readonly("fingerprint", &Experiment::fingerprint)
      .def_property_readonly("mode", &Experiment::mode);

  m.def(
      "size_ablation",
      [](const Dataset& dataset, const Gazetteer& gazetteer,
         const std::vector<double>& fractions, std::uint64_t seed, const std::string& mode,
         std::int64_t epochs, double l2_lambda, double eta0, double t0) {
        return ablation_dict(size_ablation(dataset, gazetteer, fractions, seed,
                                           parse_feature_mode(mode),
                                           make_train_config(epochs, l2_lambda, eta0, t0)));
      },
      py::arg("dataset"), py::arg("gazetteer"), py::arg("fractions"), py::arg("seed") = 0,
      py::arg("mode") = "baseline+gaz-discrete", py::arg("epochs") = 10,
      py::arg("l2_lambda") = 1e-4, py::arg("eta0") = 0.1, py::arg("t0") = 0.0);

  m.def(
      "embedding_ablation",
      [](const Dataset& dataset, const Gazetteer& gazetteer, std::uint64_t seed,
         const std::string& mode, std::int64_t epochs, double l2_lambda, double eta0,
         double t0) {
        return ablation_dict(embedding_ablation(dataset, gazetteer, seed,
                                                parse_feature_mode(mode),
                                                make_train_config(epochs, l2_lambda, eta0, t0)));
      },
      py::arg("dataset"), py::arg("gazetteer"), py::arg("seed") = 0,
      py::arg("mode") = "baseline+gaz-dense", py::arg("epochs") = 10,
      py::arg("l2_lambda") = 1e-4, py::arg("eta0") = 0.1, py::arg("t0") = 0.0);

  m.def("config_fingerprint", &config_fingerprint, py::arg("gazetteer_name"),
        py::arg("seed"), py::arg("templates"), py::arg("point") = std::string());

  m.def(
      "normalize_tags",
      [](const std::vector<std::string>& raw, const std::string& scheme) {
        auto [tags, repaired] = normalize_tags(raw, parse_scheme(scheme));
        return py::make_tuple(tags, repaired);
      },
      py::arg("tags"), py::arg("scheme") = "BIOES");
}
