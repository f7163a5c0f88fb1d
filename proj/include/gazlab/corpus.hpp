#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gazlab/common.hpp"

namespace gazlab {

enum class TagScheme { Bio, Bioes };

TagScheme parse_scheme(std::string_view name);  // "BIO" | "BIOES"
std::string scheme_name(TagScheme scheme);

// One token per Unicode scalar value; tags parallel to chars.
struct Sentence {
  std::u32string chars;
  std::vector<std::string> tags;
  TagScheme scheme = TagScheme::Bioes;

  std::size_t size() const { return chars.size(); }
  std::string text() const { return utf8_encode(chars); }
};

// Half-open token span [start, end) of one entity.
struct EntitySpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string etype;
  std::u32string surface;

  friend auto operator<=>(const EntitySpan&, const EntitySpan&) = default;
};

struct SplitCounts {
  std::size_t total = 0;
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

struct Dataset {
  std::string name;
  TagScheme scheme = TagScheme::Bioes;  // storage scheme; always BIOES after load
  std::vector<Sentence> train;
  std::vector<Sentence> dev;
  std::vector<Sentence> test;
  std::size_t repaired_tags = 0;  // malformed transitions fixed at load
};

// Reads UTF-8 two-column CoNLL files (char, whitespace, tag; blank line ends a
// sentence). Input tags are validated against `input_scheme`, repaired where
// malformed (dangling continuations promoted to openers) and stored as BIOES.
Dataset load_dataset(const std::string& train_path, const std::string& dev_path,
                     const std::string& test_path, TagScheme input_scheme,
                     const std::string& name = "dataset");

// Sentence must be well-formed under its scheme. Spans come back
// non-overlapping and sorted by start.
std::vector<EntitySpan> extract_spans(const Sentence& sentence);

SplitCounts dataset_stats(const Dataset& dataset);

// Rewrites the tag sequence into `target`, preserving the span set exactly.
Sentence convert_tag_scheme(const Sentence& sentence, TagScheme target);

// Renders a span set as tags. Spans must be in-range, sorted, non-overlapping.
std::vector<std::string> tags_from_spans(std::size_t length,
                                         const std::vector<EntitySpan>& spans,
                                         TagScheme scheme);

// Repairs a raw tag sequence read under `scheme` into canonical BIOES.
// Returns the canonical tags and the number of positions that had to change
// relative to a well-formed rendering of the same spans. Throws FormatError
// for tags outside the scheme alphabet.
std::pair<std::vector<std::string>, std::size_t> normalize_tags(
    const std::vector<std::string>& raw, TagScheme scheme);

bool tags_valid(const std::vector<std::string>& tags, TagScheme scheme);

}  // namespace gazlab
