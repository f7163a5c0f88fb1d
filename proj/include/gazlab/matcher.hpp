#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "gazlab/common.hpp"
#include "gazlab/gazetteer.hpp"

namespace gazlab {

// Set of lexeme strings excluded from matching at query time.
using MaskSet = std::unordered_set<std::u32string>;

// One matched lexeme occurrence; half-open token range [start, end).
struct MatchSpan {
  std::uint32_t lexeme_id = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::u32string surface;

  friend bool operator==(const MatchSpan&, const MatchSpan&) = default;
};

// Aho-Corasick automaton over a gazetteer's lexemes. Immutable after
// construction and independent of the source gazetteer; safe for concurrent
// match_all calls.
class LexemeMatcher {
 public:
  explicit LexemeMatcher(const Gazetteer& g);

  // Every occurrence of every (unmasked) lexeme, overlapping and nested ones
  // included, sorted by (start, end, lexeme_id).
  std::vector<MatchSpan> match_all(std::u32string_view chars) const;
  std::vector<MatchSpan> match_all(std::u32string_view chars, const MaskSet& mask) const;

  // Pre-resolved mask for repeated queries; true at masked lexeme ids.
  std::vector<char> compile_mask(const MaskSet& mask) const;
  std::vector<MatchSpan> match_all(std::u32string_view chars,
                                   const std::vector<char>& masked_ids) const;

  const std::u32string& lexeme(std::uint32_t id) const { return lexemes_[id]; }
  std::optional<std::uint32_t> id_of(const std::u32string& lexeme) const;
  std::size_t lexeme_count() const { return lexemes_.size(); }
  const std::string& gazetteer_name() const { return gazetteer_name_; }

 private:
  struct Node {
    std::map<char32_t, std::int32_t> next;
    std::int32_t fail = 0;
    std::int32_t output = -1;   // nearest terminal on the fail chain
    std::int32_t lexeme = -1;   // terminal lexeme id, -1 otherwise
  };

  std::vector<Node> nodes_;
  std::vector<std::u32string> lexemes_;
  std::unordered_map<std::u32string, std::uint32_t> index_;
  std::string gazetteer_name_;
};

// Throws on an empty gazetteer.
LexemeMatcher build_matcher(const Gazetteer& g);

}  // namespace gazlab
