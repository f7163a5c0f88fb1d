#include "gazlab/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace gazlab {

namespace {

constexpr std::string_view kBioPrefixes = "BI";
constexpr std::string_view kBioesPrefixes = "BIES";

std::string_view prefixes_of(TagScheme scheme) {
  return scheme == TagScheme::Bio ? kBioPrefixes : kBioesPrefixes;
}

// "O" -> ('O', ""); "B-PER" -> ('B', "PER"). Empty result = bad tag.
std::optional<std::pair<char, std::string>> parse_tag(const std::string& tag,
                                                      TagScheme scheme) {
  if (tag == "O") return std::make_pair('O', std::string());
  if (tag.size() < 3 || tag[1] != '-') return std::nullopt;
  char prefix = tag[0];
  if (prefixes_of(scheme).find(prefix) == std::string_view::npos) return std::nullopt;
  return std::make_pair(prefix, tag.substr(2));
}

struct RawSpan {
  std::size_t start, end;
  std::string etype;
};

// Lenient span reading: the scheme is flattened to opener/continuation and a
// continuation without a matching opener is promoted to an opener.
std::vector<RawSpan> parse_spans_repair(const std::vector<std::string>& tags,
                                        TagScheme scheme) {
  std::vector<RawSpan> spans;
  std::optional<RawSpan> open;
  auto close = [&] {
    if (open) {
      spans.push_back(*open);
      open.reset();
    }
  };
  for (std::size_t i = 0; i < tags.size(); ++i) {
    auto parsed = parse_tag(tags[i], scheme);
    if (!parsed) {
      throw FormatError("tag '" + tags[i] + "' outside " + scheme_name(scheme) +
                        " alphabet");
    }
    auto [prefix, etype] = *parsed;
    bool opener = prefix == 'B' || prefix == 'S';
    bool continuation = prefix == 'I' || prefix == 'E';
    if (prefix == 'O') {
      close();
    } else if (opener) {
      close();
      open = RawSpan{i, i + 1, etype};
    } else if (continuation) {
      if (open && open->etype == etype) {
        open->end = i + 1;
      } else {
        close();
        open = RawSpan{i, i + 1, etype};  // dangling continuation -> opener
      }
    }
    if (prefix == 'S' || prefix == 'E') close();
  }
  close();
  return spans;
}

std::vector<std::string> render_tags(std::size_t length,
                                     const std::vector<RawSpan>& spans,
                                     TagScheme scheme) {
  std::vector<std::string> tags(length, "O");
  for (const auto& sp : spans) {
    if (sp.end - sp.start == 1) {
      tags[sp.start] = (scheme == TagScheme::Bioes ? "S-" : "B-") + sp.etype;
      continue;
    }
    tags[sp.start] = "B-" + sp.etype;
    for (std::size_t i = sp.start + 1; i + 1 < sp.end; ++i) tags[i] = "I-" + sp.etype;
    tags[sp.end - 1] =
        (scheme == TagScheme::Bioes ? "E-" : "I-") + sp.etype;
  }
  return tags;
}

}  // namespace

TagScheme parse_scheme(std::string_view name) {
  if (name == "BIO" || name == "bio") return TagScheme::Bio;
  if (name == "BIOES" || name == "bioes") return TagScheme::Bioes;
  throw ValidationError("unknown tag scheme: " + std::string(name));
}

std::string scheme_name(TagScheme scheme) {
  return scheme == TagScheme::Bio ? "BIO" : "BIOES";
}

std::pair<std::vector<std::string>, std::size_t> normalize_tags(
    const std::vector<std::string>& raw, TagScheme scheme) {
  auto spans = parse_spans_repair(raw, scheme);
  auto same_scheme = render_tags(raw.size(), spans, scheme);
  std::size_t repairs = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (same_scheme[i] != raw[i]) ++repairs;
  }
  return {render_tags(raw.size(), spans, TagScheme::Bioes), repairs};
}

bool tags_valid(const std::vector<std::string>& tags, TagScheme scheme) {
  try {
    auto [canon, repairs] = normalize_tags(tags, scheme);
    if (repairs != 0) return false;
    // Repair-free means the input re-renders to itself under its own scheme.
    return true;
  } catch (const FormatError&) {
    return false;
  }
}

std::vector<EntitySpan> extract_spans(const Sentence& sentence) {
  if (sentence.chars.size() != sentence.tags.size()) {
    throw Error("sentence chars/tags length mismatch");
  }
  auto spans = parse_spans_repair(sentence.tags, sentence.scheme);
  std::vector<EntitySpan> out;
  out.reserve(spans.size());
  for (const auto& sp : spans) {
    out.push_back(EntitySpan{sp.start, sp.end, sp.etype,
                             sentence.chars.substr(sp.start, sp.end - sp.start)});
  }
  return out;
}

std::vector<std::string> tags_from_spans(std::size_t length,
                                         const std::vector<EntitySpan>& spans,
                                         TagScheme scheme) {
  std::size_t prev_end = 0;
  std::vector<RawSpan> raw;
  raw.reserve(spans.size());
  for (const auto& sp : spans) {
    if (sp.start >= sp.end || sp.end > length || sp.start < prev_end) {
      throw Error("invalid span set: spans must be in-range, sorted and disjoint");
    }
    prev_end = sp.end;
    raw.push_back(RawSpan{sp.start, sp.end, sp.etype});
  }
  return render_tags(length, raw, scheme);
}

Sentence convert_tag_scheme(const Sentence& sentence, TagScheme target) {
  auto spans = extract_spans(sentence);
  Sentence out;
  out.chars = sentence.chars;
  out.tags = tags_from_spans(sentence.chars.size(), spans, target);
  out.scheme = target;
  return out;
}

SplitCounts dataset_stats(const Dataset& dataset) {
  SplitCounts c;
  c.train = dataset.train.size();
  c.dev = dataset.dev.size();
  c.test = dataset.test.size();
  c.total = c.train + c.dev + c.test;
  return c;
}

namespace {

std::vector<Sentence> load_split(const std::string& path, TagScheme input_scheme,
                                 const std::string& split_name,
                                 std::size_t& repaired_tags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + split_name + " file: " + path);

  std::vector<Sentence> sentences;
  std::u32string chars;
  std::vector<std::string> raw_tags;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (chars.empty()) return;
    auto [canon, repairs] = normalize_tags(raw_tags, input_scheme);
    repaired_tags += repairs;
    sentences.push_back(Sentence{std::move(chars), std::move(canon), TagScheme::Bioes});
    chars.clear();
    raw_tags.clear();
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' &&
        line[2] == '\xBF') {
      line.erase(0, 3);  // UTF-8 BOM
    }
    auto where = [&] { return path + ":" + std::to_string(line_no) + ": "; };
    if (line.find_first_not_of(" \t") == std::string::npos) {
      flush();
      continue;
    }
    std::istringstream fields(line);
    std::string token, tag, extra;
    fields >> token >> tag;
    if (tag.empty()) throw FormatError(where() + "expected two columns (char tag)");
    if (fields >> extra) throw FormatError(where() + "more than two columns");
    std::u32string decoded;
    try {
      decoded = utf8_decode(token);
    } catch (const FormatError& e) {
      throw FormatError(where() + e.what());
    }
    if (decoded.size() != 1) {
      throw FormatError(where() + "token column must hold a single character, got '" +
                        token + "'");
    }
    if (!parse_tag(tag, input_scheme)) {
      throw FormatError(where() + "tag '" + tag + "' outside " +
                        scheme_name(input_scheme) + " alphabet");
    }
    chars.push_back(decoded[0]);
    raw_tags.push_back(tag);
  }
  flush();
  if (sentences.empty()) throw Error("empty split: " + split_name);
  return sentences;
}

}  // namespace

Dataset load_dataset(const std::string& train_path, const std::string& dev_path,
                     const std::string& test_path, TagScheme input_scheme,
                     const std::string& name) {
  Dataset d;
  d.name = name;
  d.scheme = TagScheme::Bioes;
  d.train = load_split(train_path, input_scheme, "train", d.repaired_tags);
  d.dev = load_split(dev_path, input_scheme, "dev", d.repaired_tags);
  d.test = load_split(test_path, input_scheme, "test", d.repaired_tags);
  return d;
}

}  // namespace gazlab
