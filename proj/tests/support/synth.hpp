#pragma once

#include <cstddef>
#include <cstdint>

#include "gazlab/corpus.hpp"
#include "gazlab/gazetteer.hpp"

namespace gazlab::testsupport {

// Knobs for the generated benchmark corpus. Entity lexemes are typed PER /
// LOC / ORG by their initial character; a train pool covers
// `train_pool_fraction` of them and only test sentences may draw from the
// remainder. Noise lexemes are single characters, matched everywhere but
// never annotated (at most the alphabet size, 48). Background text reuses
// entity-lexeme fragments so characters alone do not give boundaries away.
struct SynthSpec {
  std::size_t train_sentences = 2000;
  std::size_t dev_sentences = 100;
  std::size_t test_sentences = 400;
  std::size_t entity_lexemes = 160;
  std::size_t noise_lexemes = 40;
  double train_pool_fraction = 0.6;
  double test_unseen_fraction = 0.3;
  std::size_t embedding_dim = 8;
  // Pre-trained vectors clustered by entity type; noise lexemes get
  // unclustered vectors. false leaves the gazetteer without vectors.
  bool clustered_embeddings = true;
  std::uint64_t seed = 1;
};

struct SynthData {
  Dataset dataset;
  Gazetteer gazetteer;
};

SynthData make_synth(const SynthSpec& spec);

}  // namespace gazlab::testsupport
