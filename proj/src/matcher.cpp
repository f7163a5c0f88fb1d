#include "gazlab/matcher.hpp"

#include <algorithm>
#include <deque>

namespace gazlab {

LexemeMatcher::LexemeMatcher(const Gazetteer& g) : gazetteer_name_(g.name) {
  if (g.lexemes.empty()) throw Error("cannot build matcher from empty gazetteer");
  lexemes_ = g.lexemes;
  index_ = g.index;

  nodes_.emplace_back();  // root
  for (std::uint32_t id = 0; id < lexemes_.size(); ++id) {
    std::int32_t node = 0;
    for (char32_t c : lexemes_[id]) {
      auto it = nodes_[node].next.find(c);
      if (it == nodes_[node].next.end()) {
        nodes_.emplace_back();
        it = nodes_[node].next.emplace(c, static_cast<std::int32_t>(nodes_.size() - 1)).first;
      }
      node = it->second;
    }
    nodes_[node].lexeme = static_cast<std::int32_t>(id);
  }

  // Failure links by BFS; output links chain to the nearest terminal suffix.
  std::deque<std::int32_t> queue;
  for (auto& [c, child] : nodes_[0].next) {
    nodes_[child].fail = 0;
    queue.push_back(child);
  }
  while (!queue.empty()) {
    std::int32_t node = queue.front();
    queue.pop_front();
    for (auto& [c, child] : nodes_[node].next) {
      std::int32_t f = nodes_[node].fail;
      while (f != 0 && !nodes_[f].next.contains(c)) f = nodes_[f].fail;
      auto it = nodes_[f].next.find(c);
      nodes_[child].fail = (it != nodes_[f].next.end() && it->second != child) ? it->second : 0;
      std::int32_t fail = nodes_[child].fail;
      nodes_[child].output = nodes_[fail].lexeme >= 0 ? fail : nodes_[fail].output;
      queue.push_back(child);
    }
  }
}

std::optional<std::uint32_t> LexemeMatcher::id_of(const std::u32string& lexeme) const {
  auto it = index_.find(lexeme);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<char> LexemeMatcher::compile_mask(const MaskSet& mask) const {
  std::vector<char> masked(lexemes_.size(), 0);
  for (const auto& lexeme : mask) {
    if (auto id = id_of(lexeme)) masked[*id] = 1;
  }
  return masked;
}

std::vector<MatchSpan> LexemeMatcher::match_all(std::u32string_view chars,
                                                const std::vector<char>& masked_ids) const {
  std::vector<MatchSpan> out;
  std::int32_t node = 0;
  for (std::size_t pos = 0; pos < chars.size(); ++pos) {
    char32_t c = chars[pos];
    while (node != 0 && !nodes_[node].next.contains(c)) node = nodes_[node].fail;
    auto it = nodes_[node].next.find(c);
    node = it != nodes_[node].next.end() ? it->second : 0;
    for (std::int32_t t = node; t >= 0; t = nodes_[t].output) {
      std::int32_t id = nodes_[t].lexeme;
      if (id < 0) continue;
      if (!masked_ids.empty() && masked_ids[static_cast<std::size_t>(id)]) continue;
      std::size_t len = lexemes_[static_cast<std::size_t>(id)].size();
      std::size_t start = pos + 1 - len;
      out.push_back(MatchSpan{static_cast<std::uint32_t>(id), start, pos + 1,
                              std::u32string(chars.substr(start, len))});
    }
  }
  std::sort(out.begin(), out.end(), [](const MatchSpan& a, const MatchSpan& b) {
    return std::tie(a.start, a.end, a.lexeme_id) < std::tie(b.start, b.end, b.lexeme_id);
  });
  return out;
}

std::vector<MatchSpan> LexemeMatcher::match_all(std::u32string_view chars) const {
  return match_all(chars, std::vector<char>());
}

std::vector<MatchSpan> LexemeMatcher::match_all(std::u32string_view chars,
                                                const MaskSet& mask) const {
  return match_all(chars, compile_mask(mask));
}

LexemeMatcher build_matcher(const Gazetteer& g) { return LexemeMatcher(g); }

}  // namespace gazlab
