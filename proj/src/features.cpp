#include "gazlab/features.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace gazlab {

namespace {

constexpr char32_t kBoundary = U'⊥';

void insert_sorted_unique(std::vector<std::uint32_t>& set, std::uint32_t id) {
  auto it = std::lower_bound(set.begin(), set.end(), id);
  if (it == set.end() || *it != id) set.insert(it, id);
}

}  // namespace

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "baseline") return FeatureMode::Baseline;
  if (name == "baseline+gaz-discrete") return FeatureMode::GazDiscrete;
  if (name == "baseline+gaz-dense") return FeatureMode::GazDense;
  throw ValidationError("unknown feature mode: " + std::string(name));
}

std::string feature_mode_name(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::Baseline:
      return "baseline";
    case FeatureMode::GazDiscrete:
      return "baseline+gaz-discrete";
    case FeatureMode::GazDense:
      return "baseline+gaz-dense";
  }
  throw Error("bad FeatureMode");
}

std::size_t BmesSets::membership_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens) {
    n += t.b.size() + t.m.size() + t.e.size() + t.s.size();
  }
  return n;
}

BmesSets bmes_sets(std::u32string_view chars, const std::vector<MatchSpan>& matches) {
  BmesSets out;
  out.tokens.resize(chars.size());
  for (const auto& span : matches) {
    if (span.start >= span.end || span.end > chars.size()) {
      throw Error("match span out of range");
    }
    if (span.end - span.start == 1) {
      insert_sorted_unique(out.tokens[span.start].s, span.lexeme_id);
      continue;
    }
    insert_sorted_unique(out.tokens[span.start].b, span.lexeme_id);
    for (std::size_t i = span.start + 1; i + 1 < span.end; ++i) {
      insert_sorted_unique(out.tokens[i].m, span.lexeme_id);
    }
    insert_sorted_unique(out.tokens[span.end - 1].e, span.lexeme_id);
  }
  return out;
}

std::int64_t FrequencyTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

FrequencyTable lexeme_frequency(const LexemeMatcher& matcher,
                                const std::vector<Sentence>& train_split) {
  FrequencyTable freq(matcher.lexeme_count());
  for (const auto& sentence : train_split) {
    for (const auto& span : matcher.match_all(sentence.chars)) {
      freq.add(span.lexeme_id);
    }
  }
  return freq;
}

EmbeddingProvider::EmbeddingProvider(const Gazetteer& g, std::uint64_t seed)
    : gazetteer_(&g), seed_(seed), dim_(g.dim) {
  if (dim_ == 0) throw Error("gazetteer has embedding dimension 0");
}

std::vector<float> EmbeddingProvider::embedding(std::uint32_t lexeme_id) const {
  if (lexeme_id >= gazetteer_->size()) {
    throw Error("no embedding for lexeme id " + std::to_string(lexeme_id));
  }
  if (lexeme_id < gazetteer_->embeddings.size() &&
      !gazetteer_->embeddings[lexeme_id].empty()) {
    return gazetteer_->embeddings[lexeme_id];
  }
  std::mt19937_64 rng(mix_seed(seed_, fnv1a64(gazetteer_->lexemes[lexeme_id])));
  std::vector<float> vec(dim_);
  double half = 0.5 / static_cast<double>(dim_);
  for (auto& v : vec) v = static_cast<float>(uniform_in(rng, -half, half));
  return vec;
}

std::vector<std::vector<double>> pool_embeddings(const BmesSets& bmes,
                                                 const FrequencyTable& freq,
                                                 const EmbeddingProvider& provider) {
  const std::size_t dim = provider.dim();
  std::vector<std::vector<double>> out(bmes.tokens.size());

  auto pool_into = [&](const std::vector<std::uint32_t>& set, double* dst) {
    if (set.empty()) return;  // zeros
    double weight_sum = 0.0;
    for (std::uint32_t id : set) {
      double w = static_cast<double>(freq.count(id) + 1);
      weight_sum += w;
      auto emb = provider.embedding(id);
      for (std::size_t d = 0; d < dim; ++d) dst[d] += w * emb[d];
    }
    for (std::size_t d = 0; d < dim; ++d) dst[d] /= weight_sum;
  };

  for (std::size_t i = 0; i < bmes.tokens.size(); ++i) {
    auto& vec = out[i];
    vec.assign(4 * dim, 0.0);
    pool_into(bmes.tokens[i].b, vec.data());
    pool_into(bmes.tokens[i].m, vec.data() + dim);
    pool_into(bmes.tokens[i].e, vec.data() + 2 * dim);
    pool_into(bmes.tokens[i].s, vec.data() + 3 * dim);
  }
  return out;
}

namespace {

// Most frequent member; ties go to the lowest lexeme id (sets are sorted).
std::uint32_t top_member(const std::vector<std::uint32_t>& set,
                         const FrequencyTable& freq) {
  std::uint32_t best = set.front();
  std::int64_t best_count = freq.count(best);
  for (std::uint32_t id : set) {
    if (freq.count(id) > best_count) {
      best = id;
      best_count = freq.count(id);
    }
  }
  return best;
}

void gaz_features(const BmesSets::TokenSets& sets, const FrequencyTable& freq,
                  const LexemeMatcher& matcher, std::vector<std::string>& out) {
  struct Class {
    const char* label;
    const std::vector<std::uint32_t>* set;
  };
  const Class classes[] = {{"B", &sets.b}, {"M", &sets.m}, {"E", &sets.e}, {"S", &sets.s}};
  for (const auto& c : classes) {
    if (c.set->empty()) continue;
    out.push_back(std::string("gaz.") + c.label + "=1");
    out.push_back(std::string("gaz.") + c.label +
                  ".top=" + utf8_encode(matcher.lexeme(top_member(*c.set, freq))));
  }
}

}  // namespace

std::vector<std::vector<std::string>> discrete_features(
    std::u32string_view chars, const BmesSets& bmes, const FrequencyTable& freq,
    const LexemeMatcher* matcher, FeatureMode mode) {
  if (mode != FeatureMode::Baseline && bmes.tokens.size() != chars.size()) {
    throw Error("BMES sets not aligned with sentence");
  }
  auto at = [&](std::size_t i, std::ptrdiff_t off) -> char32_t {
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + off;
    if (j < 0 || j >= static_cast<std::ptrdiff_t>(chars.size())) return kBoundary;
    return chars[static_cast<std::size_t>(j)];
  };

  std::vector<std::vector<std::string>> out(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) {
    auto& feats = out[i];
    std::string prev = utf8_encode(at(i, -1));
    std::string cur = utf8_encode(at(i, 0));
    std::string next = utf8_encode(at(i, +1));
    feats.push_back("c-1=" + prev);
    feats.push_back("c0=" + cur);
    feats.push_back("c+1=" + next);
    feats.push_back("c-1c0=" + prev + cur);
    feats.push_back("c0c+1=" + cur + next);
    if (mode == FeatureMode::GazDiscrete) {
      if (!matcher) throw Error("gaz-discrete features need a matcher");
      gaz_features(bmes.tokens[i], freq, *matcher, feats);
    }
  }
  return out;
}

Featurizer::Featurizer() = default;

Featurizer::Featurizer(FeatureMode mode, const LexemeMatcher* matcher,
                       FrequencyTable freq, EmbeddingProvider provider)
    : mode_(mode), matcher_(matcher), freq_(std::move(freq)), provider_(std::move(provider)) {
  if (mode_ != FeatureMode::Baseline && !matcher_) {
    throw Error("feature mode " + feature_mode_name(mode_) + " needs a matcher");
  }
}

std::size_t Featurizer::dense_dim() const {
  return mode_ == FeatureMode::GazDense ? 4 * provider_->dim() : 0;
}

const std::string& Featurizer::gazetteer_name() const {
  static const std::string kNone;
  return matcher_ ? matcher_->gazetteer_name() : kNone;
}

std::vector<char> Featurizer::compile_mask(const MaskSet& mask) const {
  return matcher_ ? matcher_->compile_mask(mask) : std::vector<char>();
}

std::vector<TokenFeatures> Featurizer::featurize(std::u32string_view chars,
                                                 const std::vector<char>& masked_ids) const {
  BmesSets bmes;
  if (mode_ != FeatureMode::Baseline) {
    bmes = bmes_sets(chars, matcher_->match_all(chars, masked_ids));
  }
  auto discrete = discrete_features(chars, bmes, freq_, matcher_, mode_);

  std::vector<TokenFeatures> out(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i) out[i].discrete = std::move(discrete[i]);
  if (mode_ == FeatureMode::GazDense) {
    auto dense = pool_embeddings(bmes, freq_, *provider_);
    for (std::size_t i = 0; i < chars.size(); ++i) out[i].dense = std::move(dense[i]);
  }
  return out;
}

std::vector<TokenFeatures> Featurizer::featurize(std::u32string_view chars) const {
  return featurize(chars, std::vector<char>());
}

std::vector<TokenFeatures> Featurizer::featurize(std::u32string_view chars,
                                                 const MaskSet& mask) const {
  return featurize(chars, compile_mask(mask));
}

}  // namespace gazlab
