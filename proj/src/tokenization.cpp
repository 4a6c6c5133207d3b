#include "phonostad/tokenization.hpp"

#include <climits>
#include <json.hpp>

#include "phonostad/error.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

namespace {

std::string merge_key(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key += left;
  key += '\0';
  key += right;
  return key;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

const std::unordered_map<std::string, unsigned char>& byte_decoder() {
  static const auto table = [] {
    std::unordered_map<std::string, unsigned char> m;
    const auto& enc = byte_encoder();
    for (int b = 0; b < 256; ++b) m.emplace(enc[static_cast<std::size_t>(b)], static_cast<unsigned char>(b));
    return m;
  }();
  return table;
}

const std::string_view kStrippedMarkers[] = {"Ġ", "▁", "##"};

}  // namespace

int TokenizerSpec::rank(std::string_view left, std::string_view right) const {
  const auto it = merge_ranks.find(merge_key(left, right));
  return it == merge_ranks.end() ? INT_MAX : it->second;
}

const std::array<std::string, 256>& byte_encoder() {
  static const auto table = [] {
    std::array<std::string, 256> t;
    std::array<bool, 256> printable{};
    for (int b = '!'; b <= '~'; ++b) printable[static_cast<std::size_t>(b)] = true;
    for (int b = 0xA1; b <= 0xAC; ++b) printable[static_cast<std::size_t>(b)] = true;
    for (int b = 0xAE; b <= 0xFF; ++b) printable[static_cast<std::size_t>(b)] = true;
    char32_t next = 256;
    for (std::size_t b = 0; b < 256; ++b) {
      t[b] = encode_utf8(printable[b] ? static_cast<char32_t>(b) : next++);
    }
    return t;
  }();
  return table;
}

TokenizerSpec make_bpe(std::unordered_map<std::string, int> vocab,
                       const std::vector<std::pair<std::string, std::string>>& merges, bool byte_level,
                       std::string name) {
  TokenizerSpec spec;
  spec.name = std::move(name);
  spec.vocab = std::move(vocab);
  spec.byte_level = byte_level;
  spec.space_marker = byte_level ? "Ġ" : "▁";
  int rank = 0;
  for (const auto& [left, right] : merges) {
    if (!spec.vocab.contains(left) || !spec.vocab.contains(right)) {
      throw LoadError("merge '" + left + " " + right + "' references a symbol missing from the vocabulary");
    }
    if (!spec.vocab.contains(left + right)) {
      throw LoadError("merge product '" + left + right + "' missing from the vocabulary");
    }
    if (!spec.merge_ranks.emplace(merge_key(left, right), rank).second) {
      throw LoadError("duplicate merge '" + left + " " + right + "'");
    }
    ++rank;
  }
  return spec;
}

TokenizerSpec load_bpe(const std::filesystem::path& vocab_path, const std::filesystem::path& merges_path,
                       bool byte_level, std::string name) {
  std::unordered_map<std::string, int> vocab;
  try {
    const auto j = nlohmann::json::parse(read_file(vocab_path));
    if (!j.is_object()) throw LoadError(vocab_path.string() + ": vocabulary must be a JSON object");
    for (const auto& [tok, id] : j.items()) vocab.emplace(tok, id.get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(vocab_path.string() + ": " + e.what());
  }
  std::vector<std::pair<std::string, std::string>> merges;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(merges_path)) {
    ++line_no;
    if (line.starts_with('#') || trim(line).empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos || sp == 0 || sp + 1 >= line.size()) {
      throw ParseError(merges_path.string(), line_no, "expected 'left right'");
    }
    merges.emplace_back(line.substr(0, sp), line.substr(sp + 1));
  }
  if (name.empty()) name = vocab_path.parent_path().filename().string();
  return make_bpe(std::move(vocab), merges, byte_level, std::move(name));
}

std::vector<std::string> token_surfaces(const TokenizerSpec& spec, const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    std::string surface;
    if (spec.byte_level) {
      const auto& dec = byte_decoder();
      for (const auto& ch : utf8_chars(tok)) {
        const auto it = dec.find(ch);
        if (it == dec.end()) throw TokenizationError("token '" + tok + "' is not byte-level text");
        if (it->second != ' ') surface += static_cast<char>(it->second);
      }
    } else {
      std::string_view rest = tok;
      while (!rest.empty()) {
        if (rest.starts_with(spec.space_marker)) {
          rest.remove_prefix(spec.space_marker.size());
        } else {
          if (rest.front() != ' ') surface += rest.front();
          rest.remove_prefix(1);
        }
      }
    }
    out.push_back(std::move(surface));
  }
  return out;
}

std::vector<std::size_t> project_boundaries(std::string_view word, const std::vector<std::string>& surfaces) {
  std::vector<std::size_t> bounds;
  const auto len = utf8_length(word);
  std::size_t pos = 0;
  std::string joined;
  for (const auto& s : surfaces) {
    if (s.empty()) continue;
    if (pos > 0) bounds.push_back(pos);
    pos += utf8_length(s);
    joined += s;
  }
  if (pos != len || to_lower(joined) != to_lower(word)) {
    throw ProjectionError("tokens '" + join(surfaces, " ") + "' do not spell '" + std::string(word) + "'");
  }
  return bounds;
}

TokenSegmentation tokenize_word(const TokenizerSpec& spec, std::string_view word, bool leading_space) {
  if (word.empty()) throw TokenizationError("cannot tokenize an empty word");
  std::vector<std::string> symbols;
  if (spec.byte_level) {
    const auto& enc = byte_encoder();
    if (leading_space) symbols.push_back(enc[' ']);
    for (unsigned char c : word) symbols.push_back(enc[c]);
  } else {
    if (leading_space) symbols.push_back(spec.space_marker);
    for (auto& ch : utf8_chars(word)) symbols.push_back(ch == " " ? spec.space_marker : std::move(ch));
  }
  for (const auto& s : symbols) {
    if (!spec.vocab.contains(s)) {
      throw TokenizationError("character '" + s + "' of '" + std::string(word) + "' is outside the tokenizer alphabet");
    }
  }

  while (symbols.size() > 1) {
    int best = INT_MAX;
    std::size_t best_at = 0;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      const int r = spec.rank(symbols[i], symbols[i + 1]);
      if (r < best) {
        best = r;
        best_at = i;
      }
    }
    if (best == INT_MAX) break;
    const std::string left = symbols[best_at];
    const std::string right = symbols[best_at + 1];
    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == left && symbols[i + 1] == right) {
        merged.push_back(left + right);
        i += 2;
      } else {
        merged.push_back(std::move(symbols[i]));
        ++i;
      }
    }
    symbols = std::move(merged);
  }

  TokenSegmentation seg;
  seg.word = std::string(word);
  seg.char_boundaries = project_boundaries(word, token_surfaces(spec, symbols));
  seg.tokens = std::move(symbols);
  return seg;
}

std::unordered_map<std::string, TokenSegmentation> load_pretokenized(const std::filesystem::path& path) {
  std::unordered_map<std::string, TokenSegmentation> out;
  std::size_t line_no = 0;
  for (const auto& raw : read_lines(path)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) throw ParseError(path.string(), line_no, "expected word<TAB>tokens");
    TokenSegmentation seg;
    seg.word = to_lower(trim(cols[0]));
    seg.tokens = split_whitespace(cols[1]);
    std::vector<std::string> surfaces;
    for (const auto& tok : seg.tokens) {
      std::string_view s = tok;
      for (bool stripped = true; stripped;) {
        stripped = false;
        for (const auto m : kStrippedMarkers) {
          if (s.starts_with(m)) {
            s.remove_prefix(m.size());
            stripped = true;
          }
        }
      }
      surfaces.emplace_back(s);
    }
    try {
      seg.char_boundaries = project_boundaries(seg.word, surfaces);
    } catch (const ProjectionError& e) {
      throw ProjectionError(path.string() + ":" + std::to_string(line_no) + ": word '" + seg.word + "': " + e.what());
    }
    out.insert_or_assign(seg.word, std::move(seg));
  }
  return out;
}

std::string insert_delimiter(std::string_view word, char delim) {
  if (word.empty()) throw DomainError("cannot insert delimiters into an empty word");
  if (word.find(delim) != std::string_view::npos) {
    throw DomainError(std::string("delimiter '") + delim + "' already occurs in '" + std::string(word) + "'");
  }
  std::string out;
  const auto chars = utf8_chars(word);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (i) out += delim;
    out += chars[i];
  }
  return out;
}

}  // namespace phonostad
