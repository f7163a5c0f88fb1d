#include "gazlab/gazetteer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

namespace gazlab {

namespace {

bool has_whitespace(const std::u32string& s) {
  for (char32_t c : s) {
    if (c == U' ' || c == U'\t' || c == U'\r' || c == U'\n' || c == 0x3000) return true;
  }
  return false;
}

void load_lexicon(const std::string& path, Gazetteer& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
        line[2] == '\xBF') {
      line.erase(0, 3);
    }
    if (line.empty()) continue;
    std::u32string lexeme;
    try {
      lexeme = utf8_decode(line);
    } catch (const FormatError& e) {
      throw FormatError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (has_whitespace(lexeme)) {
      throw FormatError(path + ":" + std::to_string(line_no) +
                        ": lexeme contains whitespace");
    }
    if (g.index.contains(lexeme)) {
      ++g.duplicate_lines;
      continue;
    }
    g.index.emplace(lexeme, static_cast<std::uint32_t>(g.lexemes.size()));
    g.lexemes.push_back(std::move(lexeme));
  }
  if (g.lexemes.empty()) throw Error("empty lexicon: " + path);
}

float parse_float_field(std::string_view field, const std::string& where) {
  float value = 0.0f;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError(where + "bad number '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw FormatError(where + "non-finite value '" + std::string(field) + "'");
  }
  return value;
}

void load_embeddings(const std::string& path, Gazetteer& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw FormatError(path + ": missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::size_t count = 0, dim = 0;
  {
    std::size_t space = line.find(' ');
    auto fail = [&] { throw FormatError(path + ":1: header must be 'count dim'"); };
    if (space == std::string::npos) fail();
    auto r1 = std::from_chars(line.data(), line.data() + space, count);
    auto r2 = std::from_chars(line.data() + space + 1, line.data() + line.size(), dim);
    if (r1.ec != std::errc() || r2.ec != std::errc() ||
        r2.ptr != line.data() + line.size() || dim == 0) {
      fail();
    }
  }
  g.dim = dim;
  g.embeddings.assign(g.lexemes.size(), {});

  std::size_t line_no = 1;
  std::size_t vectors = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string where = path + ":" + std::to_string(line_no) + ": ";
    std::size_t token_end = line.find(' ');
    if (token_end == std::string::npos) {
      throw FormatError(where + "expected 'token v1 ... v" + std::to_string(dim) + "'");
    }
    ++vectors;

    std::vector<float> vec;
    vec.reserve(dim);
    std::size_t pos = token_end + 1;
    while (pos < line.size()) {
      std::size_t next = line.find(' ', pos);
      if (next == std::string::npos) next = line.size();
      if (next > pos) vec.push_back(parse_float_field({line.data() + pos, next - pos}, where));
      pos = next + 1;
    }
    if (vec.size() != dim) {
      throw FormatError(where + "expected " + std::to_string(dim) + " values, got " +
                        std::to_string(vec.size()));
    }

    std::u32string token;
    try {
      token = utf8_decode(line.substr(0, token_end));
    } catch (const FormatError& e) {
      throw FormatError(where + e.what());
    }
    auto id = g.id_of(token);
    if (!id) continue;  // embedding file may be a superset of the lexicon
    if (g.embeddings[*id].empty()) g.embeddings[*id] = std::move(vec);
  }
  if (vectors != count) {
    throw FormatError(path + ": header announces " + std::to_string(count) +
                      " vectors, file has " + std::to_string(vectors));
  }
}

}  // namespace

Gazetteer load_gazetteer(const std::string& lexicon_path,
                         const std::optional<std::string>& embedding_path,
                         const std::string& name, std::size_t unpretrained_dim) {
  Gazetteer g;
  g.name = name;
  load_lexicon(lexicon_path, g);
  if (embedding_path) {
    g.pretrained = true;
    load_embeddings(*embedding_path, g);
  } else {
    g.pretrained = false;
    g.dim = unpretrained_dim;
  }
  return g;
}

GazetteerStats gazetteer_stats(const Gazetteer& g) {
  GazetteerStats s;
  s.num = g.lexemes.size();
  s.dim = g.dim;
  s.pretrained = g.pretrained;
  if (s.num > 0 && g.pretrained) {
    std::size_t covered = 0;
    for (const auto& v : g.embeddings) {
      if (!v.empty()) ++covered;
    }
    s.coverage_ratio = static_cast<double>(covered) / static_cast<double>(s.num);
  }
  return s;
}

Gazetteer subsample(const Gazetteer& g, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ValidationError("subsample fraction must be in (0, 1], got " +
                          format_double(fraction));
  }
  auto keep = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(g.size())));
  if (keep == 0) {
    throw ValidationError("empty subsample: round(" + format_double(fraction) + " * " +
                          std::to_string(g.size()) + ") = 0");
  }

  // Partial Fisher-Yates over the index range, then restore original order.
  std::vector<std::uint32_t> ids(g.size());
  std::iota(ids.begin(), ids.end(), 0u);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < keep; ++i) {
    std::size_t j = i + uniform_index(rng, ids.size() - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(keep);
  std::sort(ids.begin(), ids.end());

  Gazetteer out;
  out.name = g.name;
  out.dim = g.dim;
  out.pretrained = g.pretrained;
  out.lexemes.reserve(keep);
  if (g.pretrained) out.embeddings.reserve(keep);
  for (std::uint32_t id : ids) {
    out.index.emplace(g.lexemes[id], static_cast<std::uint32_t>(out.lexemes.size()));
    out.lexemes.push_back(g.lexemes[id]);
    if (g.pretrained) out.embeddings.push_back(g.embeddings[id]);
  }
  return out;
}

Gazetteer strip_embeddings(const Gazetteer& g) {
  Gazetteer out;
  out.name = g.name;
  out.lexemes = g.lexemes;
  out.index = g.index;
  out.dim = g.dim;
  out.pretrained = false;
  out.duplicate_lines = g.duplicate_lines;
  return out;
}

}  // namespace gazlab
