#include "support/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gazlab/common.hpp"

namespace gazlab::testsupport {

namespace {

constexpr std::size_t kAlphabet = 48;
const char* kTypes[3] = {"PER", "LOC", "ORG"};

char32_t alpha(std::size_t i) { return static_cast<char32_t>(0x4E00 + i); }

// Entity type is carried by the surface: the initial character's alphabet
// slot picks PER / LOC / ORG, so typing generalizes to unseen lexemes while
// boundaries do not.
std::size_t type_axis(const std::u32string& lex) {
  return (static_cast<std::size_t>(lex[0]) - 0x4E00) % 3;
}

std::vector<std::u32string> make_lexemes(std::size_t entities, std::size_t noise,
                                         std::mt19937_64& rng) {
  std::set<std::u32string> seen;
  std::vector<std::u32string> out;
  while (out.size() < entities) {
    std::size_t len = 2 + uniform_index(rng, 3);
    std::u32string lex;
    for (std::size_t i = 0; i < len; ++i) lex += alpha(uniform_index(rng, kAlphabet));
    if (seen.insert(lex).second) out.push_back(std::move(lex));
  }
  // Noise lexemes are single characters: they match all over the background
  // (and inside entities) yet are never entity surfaces, and a length-1 match
  // only ever lands in the Single position class.
  std::vector<std::size_t> chars(kAlphabet);
  for (std::size_t i = 0; i < kAlphabet; ++i) chars[i] = i;
  for (std::size_t i = kAlphabet; i-- > 1;) {
    std::size_t k = uniform_index(rng, i + 1);
    std::swap(chars[i], chars[k]);
  }
  for (std::size_t i = 0; i < std::min(noise, kAlphabet); ++i)
    out.push_back(std::u32string(1, alpha(chars[i])));
  return out;
}

struct Piece {
  std::u32string text;
  std::string etype;  // empty for untagged text
};

// 2..5 characters; often seeded with a proper fragment of a random entity
// lexeme so entity-internal character n-grams also occur untagged.
std::u32string background(std::mt19937_64& rng,
                          const std::vector<std::u32string>& lexemes,
                          std::size_t entity_count) {
  std::size_t len = 2 + uniform_index(rng, 4);
  std::u32string out;
  if (uniform_unit(rng) < 0.6) {
    const std::u32string& lex = lexemes[uniform_index(rng, entity_count)];
    std::size_t window = std::min<std::size_t>(2, lex.size() - 1);
    std::size_t at = uniform_index(rng, lex.size() - window + 1);
    out = lex.substr(at, window);
  }
  while (out.size() < len) out += alpha(uniform_index(rng, kAlphabet));
  return out;
}

Sentence assemble(const std::vector<Piece>& pieces) {
  Sentence s;
  s.scheme = TagScheme::Bioes;
  for (const Piece& p : pieces) {
    s.chars += p.text;
    if (p.etype.empty()) {
      s.tags.insert(s.tags.end(), p.text.size(), "O");
    } else if (p.text.size() == 1) {
      s.tags.push_back("S-" + p.etype);
    } else {
      s.tags.push_back("B-" + p.etype);
      for (std::size_t i = 1; i + 1 < p.text.size(); ++i)
        s.tags.push_back("I-" + p.etype);
      s.tags.push_back("E-" + p.etype);
    }
  }
  return s;
}

}  // namespace

SynthData make_synth(const SynthSpec& spec) {
  SynthData data;

  std::mt19937_64 lex_rng(mix_seed(spec.seed, "synth-lexemes"));
  std::vector<std::u32string> lexemes =
      make_lexemes(spec.entity_lexemes, spec.noise_lexemes, lex_rng);

  Gazetteer& g = data.gazetteer;
  g.name = "synth-gaz";
  g.dim = spec.embedding_dim;
  g.lexemes = lexemes;
  for (std::uint32_t id = 0; id < lexemes.size(); ++id) g.index[lexemes[id]] = id;
  g.embeddings.assign(lexemes.size(), {});
  if (spec.clustered_embeddings) {
    g.pretrained = true;
    std::mt19937_64 emb_rng(mix_seed(spec.seed, "synth-emb"));
    for (std::size_t id = 0; id < lexemes.size(); ++id) {
      std::vector<float> vec(spec.embedding_dim);
      if (id < spec.entity_lexemes) {
        std::size_t axis = type_axis(lexemes[id]);
        for (std::size_t d = 0; d < vec.size(); ++d) {
          vec[d] = static_cast<float>((d == axis ? 0.25 : 0.0) +
                                      uniform_in(emb_rng, -0.05, 0.05));
        }
      } else {
        for (float& v : vec) v = static_cast<float>(uniform_in(emb_rng, -0.15, 0.15));
      }
      g.embeddings[id] = std::move(vec);
    }
  }

  std::size_t pool =
      static_cast<std::size_t>(std::llround(spec.train_pool_fraction *
                                            static_cast<double>(spec.entity_lexemes)));
  pool = std::max<std::size_t>(1, std::min(pool, spec.entity_lexemes));

  auto make_split = [&](std::size_t count, bool test_split, const char* salt) {
    std::mt19937_64 rng(mix_seed(spec.seed, salt));
    std::vector<Sentence> split;
    split.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<Piece> pieces;
      pieces.push_back({background(rng, lexemes, spec.entity_lexemes), ""});
      std::size_t entities = 1 + uniform_index(rng, 2);
      for (std::size_t e = 0; e < entities; ++e) {
        std::size_t id;
        if (test_split && pool < spec.entity_lexemes &&
            uniform_unit(rng) < spec.test_unseen_fraction) {
          id = pool + uniform_index(rng, spec.entity_lexemes - pool);
        } else {
          id = uniform_index(rng, pool);
        }
        pieces.push_back({lexemes[id], kTypes[type_axis(lexemes[id])]});
        pieces.push_back({background(rng, lexemes, spec.entity_lexemes), ""});
      }
      split.push_back(assemble(pieces));
    }
    return split;
  };

  Dataset& d = data.dataset;
  d.name = "synth";
  d.scheme = TagScheme::Bioes;
  d.train = make_split(spec.train_sentences, false, "synth-train");
  d.dev = make_split(spec.dev_sentences, false, "synth-dev");
  d.test = make_split(spec.test_sentences, true, "synth-test");
  return data;
}

}  // namespace gazlab::testsupport
