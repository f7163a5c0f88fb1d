#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gazlab/common.hpp"

namespace gazlab {

// A lexeme list with optional pre-trained embedding vectors. Lexemes are
// unique, non-empty, whitespace-free, and keep their file order; the index in
// `lexemes` is the lexeme id used everywhere downstream.
struct Gazetteer {
  std::string name;
  std::vector<std::u32string> lexemes;
  std::unordered_map<std::u32string, std::uint32_t> index;
  // Per-id vector; empty vector = no pre-trained embedding for that lexeme.
  std::vector<std::vector<float>> embeddings;
  std::size_t dim = 0;  // embedding dimension (random-init dim if !pretrained)
  bool pretrained = false;
  std::size_t duplicate_lines = 0;  // dropped at load, first occurrence wins

  std::size_t size() const { return lexemes.size(); }
  std::optional<std::uint32_t> id_of(const std::u32string& lexeme) const {
    auto it = index.find(lexeme);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

struct GazetteerStats {
  std::size_t num = 0;
  std::size_t dim = 0;
  bool pretrained = false;
  double coverage_ratio = 0.0;  // lexemes with a pre-trained vector / num
};

// Lexicon: UTF-8, one lexeme per line, blank lines skipped, duplicates dropped.
// Embeddings (optional): word2vec text format with a mandatory "count dim"
// header; tokens not present in the lexicon are ignored. `unpretrained_dim`
// sets `dim` when no embedding file is given.
Gazetteer load_gazetteer(const std::string& lexicon_path,
                         const std::optional<std::string>& embedding_path,
                         const std::string& name,
                         std::size_t unpretrained_dim = 50);

GazetteerStats gazetteer_stats(const Gazetteer& g);

// Uniform sample of round(fraction * size) lexemes without replacement, in
// original order, reproducible from the seed. fraction must be in (0, 1].
Gazetteer subsample(const Gazetteer& g, double fraction, std::uint64_t seed);

// Same lexemes, no embeddings, pretrained=false; dim is kept so downstream
// random-init shapes match. Idempotent.
Gazetteer strip_embeddings(const Gazetteer& g);

}  // namespace gazlab
