#include "phonostad/lexicon.hpp"

#include <algorithm>
#include <unordered_set>

#include "phonostad/error.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

namespace {

constexpr std::array<std::string_view, kArpabetCount> kNames = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH", "EH", "ER", "EY",
    "F",  "G",  "HH", "IH", "IY", "JH", "K",  "L",  "M",  "N",  "NG", "OW", "OY",
    "P",  "R",  "S",  "SH", "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH",
};

constexpr std::array<Arpabet, kArpabetCount> make_all() {
  std::array<Arpabet, kArpabetCount> out{};
  for (std::size_t i = 0; i < kArpabetCount; ++i) out[i] = static_cast<Arpabet>(i);
  return out;
}

constexpr auto kAll = make_all();

}  // namespace

std::string_view arpabet_name(Arpabet a) noexcept { return kNames[static_cast<std::size_t>(a)]; }

std::optional<Arpabet> parse_arpabet(std::string_view base) noexcept {
  const auto it = std::lower_bound(kNames.begin(), kNames.end(), base);
  if (it == kNames.end() || *it != base) return std::nullopt;
  return static_cast<Arpabet>(it - kNames.begin());
}

bool is_vowel(Arpabet a) noexcept {
  switch (a) {
    case Arpabet::AA: case Arpabet::AE: case Arpabet::AH: case Arpabet::AO:
    case Arpabet::AW: case Arpabet::AY: case Arpabet::EH: case Arpabet::ER:
    case Arpabet::EY: case Arpabet::IH: case Arpabet::IY: case Arpabet::OW:
    case Arpabet::OY: case Arpabet::UH: case Arpabet::UW:
      return true;
    default:
      return false;
  }
}

const std::array<Arpabet, kArpabetCount>& all_arpabet() noexcept { return kAll; }

std::string Phoneme::str() const {
  std::string out(arpabet_name(symbol));
  if (has_stress()) out += static_cast<char>('0' + stress);
  return out;
}

std::optional<Phoneme> parse_phoneme(std::string_view token, bool strict) {
  if (token.empty()) return std::nullopt;
  Phoneme ph;
  std::string_view base = token;
  const char last = token.back();
  if (last >= '0' && last <= '9') {
    if (last > '2') return std::nullopt;
    ph.stress = static_cast<std::int8_t>(last - '0');
    base.remove_suffix(1);
  }
  const auto sym = parse_arpabet(to_upper(base));
  if (!sym) return std::nullopt;
  ph.symbol = *sym;
  if (strict && (ph.has_stress() != is_vowel(ph.symbol))) return std::nullopt;
  if (!is_vowel(ph.symbol) && ph.has_stress()) return std::nullopt;
  return ph;
}

Pronunciation parse_pronunciation(std::string_view text, bool strict) {
  Pronunciation out;
  for (const auto& tok : split_whitespace(text)) {
    auto ph = parse_phoneme(tok, strict);
    if (!ph) throw MappingError("not an ARPAbet phoneme: '" + tok + "'");
    out.push_back(*ph);
  }
  if (out.empty()) throw DomainError("empty pronunciation");
  return out;
}

std::string format_pronunciation(const Pronunciation& p, bool strip_stress) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += strip_stress ? std::string(arpabet_name(p[i].symbol)) : p[i].str();
  }
  return out;
}

std::vector<Arpabet> base_symbols(const Pronunciation& p) {
  std::vector<Arpabet> out;
  out.reserve(p.size());
  for (const auto& ph : p) out.push_back(ph.symbol);
  return out;
}

void Lexicon::add(std::string_view word, Pronunciation p) {
  auto key = to_lower(word);
  auto [it, inserted] = entries_.try_emplace(key);
  if (inserted) order_.push_back(key);
  it->second.push_back(std::move(p));
}

bool Lexicon::contains(std::string_view word) const {
  return entries_.find(to_lower(word)) != entries_.end();
}

const std::vector<Pronunciation>& Lexicon::variants(std::string_view word) const {
  const auto it = entries_.find(to_lower(word));
  if (it == entries_.end()) throw MissingWordError(std::string(word));
  return it->second;
}

Lexicon parse_cmu_dict(std::string_view text, const std::string& source) {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (line.starts_with(";;;")) continue;
    if (const auto hash = line.find(" #"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty() || line.starts_with('#')) continue;

    const auto fields = split_whitespace(line);
    if (fields.size() < 2) throw ParseError(source, line_no, "entry has no phonemes");
    std::string word = fields[0];
    if (const auto paren = word.find('('); paren != std::string::npos && paren > 0 && word.back() == ')') {
      word.resize(paren);
    }
    Pronunciation pron;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const auto ph = parse_phoneme(fields[i], /*strict=*/true);
      if (!ph) throw ParseError(source, line_no, "unknown phoneme symbol '" + fields[i] + "'");
      pron.push_back(*ph);
    }
    lex.add(word, std::move(pron));
  }
  return lex;
}

Lexicon load_cmu_dict(const std::filesystem::path& path) {
  return parse_cmu_dict(read_file(path), path.string());
}

const Pronunciation& pronounce(const Lexicon& lex, std::string_view word) {
  return lex.variants(word).front();
}

int count_syllables(const Pronunciation& p) {
  const auto n = std::count_if(p.begin(), p.end(), [](const Phoneme& ph) { return ph.vowel(); });
  if (n == 0) throw DegeneratePronunciationError("pronunciation '" + format_pronunciation(p) + "' has no vowel");
  return static_cast<int>(n);
}

std::vector<std::string> load_wordlist(const std::filesystem::path& path) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& raw : read_lines(path)) {
    auto w = to_lower(trim(raw));
    if (w.empty()) continue;
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  if (out.empty()) throw DomainError("word list " + path.string() + " is empty");
  return out;
}

}  // namespace phonostad
