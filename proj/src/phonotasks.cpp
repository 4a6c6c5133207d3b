#include "phonostad/phonotasks.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <unordered_set>

#include "phonostad/error.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

Arpabet PhonemeIndexTable::symbol(int index) {
  if (index < 1 || index > static_cast<int>(kArpabetCount)) {
    throw RangeError("phoneme index " + std::to_string(index) + " outside [1, 39]");
  }
  return static_cast<Arpabet>(index - 1);
}

Pronunciation rhyme_part(const Pronunciation& p) {
  std::ptrdiff_t anchor = -1;
  for (const int wanted : {1, 2}) {
    for (auto i = static_cast<std::ptrdiff_t>(p.size()) - 1; i >= 0 && anchor < 0; --i) {
      if (p[static_cast<std::size_t>(i)].stress == wanted) anchor = i;
    }
    if (anchor >= 0) break;
  }
  if (anchor < 0) {
    for (auto i = static_cast<std::ptrdiff_t>(p.size()) - 1; i >= 0 && anchor < 0; --i) {
      if (p[static_cast<std::size_t>(i)].vowel()) anchor = i;
    }
  }
  if (anchor < 0) throw DegeneratePronunciationError("no vowel in '" + format_pronunciation(p) + "'");
  Pronunciation out(p.begin() + anchor, p.end());
  // Only the anchor keeps a stress digit.
  for (std::size_t i = 1; i < out.size(); ++i) out[i].stress = -1;
  return out;
}

bool is_perfect_rhyme(const Pronunciation& a, const Pronunciation& b) {
  return base_symbols(rhyme_part(a)) == base_symbols(rhyme_part(b));
}

bool is_perfect_rhyme(std::string_view w1, std::string_view w2, const Lexicon& lex) {
  return is_perfect_rhyme(pronounce(lex, w1), pronounce(lex, w2));
}

bool shares_final_three(std::string_view w1, std::string_view w2) {
  const auto tail = [](std::string_view w) { return to_lower(w.size() > 3 ? w.substr(w.size() - 3) : w); };
  return tail(w1) == tail(w2);
}

std::vector<std::string> eligible_words(const Lexicon& lex, const std::vector<std::string>& words) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& w : words) {
    if (!is_alpha_word(w)) continue;
    auto lw = to_lower(w);
    if (!lex.contains(lw) || !seen.insert(lw).second) continue;
    const auto& p = pronounce(lex, lw);
    if (std::none_of(p.begin(), p.end(), [](const Phoneme& ph) { return ph.vowel(); })) continue;
    out.push_back(std::move(lw));
  }
  return out;
}

std::vector<RhymePair> build_rhyme_dataset(const Lexicon& lex, const std::vector<std::string>& words,
                                           std::size_t n_pos, std::size_t n_neg, std::uint64_t seed) {
  const auto cands = eligible_words(lex, words);
  std::vector<std::vector<Arpabet>> keys;
  keys.reserve(cands.size());
  std::map<std::vector<Arpabet>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    keys.push_back(base_symbols(rhyme_part(pronounce(lex, cands[i]))));
    groups[keys.back()].push_back(i);
  }

  std::vector<std::pair<std::size_t, std::size_t>> positives;
  for (const auto& [key, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (!shares_final_three(cands[members[a]], cands[members[b]])) positives.emplace_back(members[a], members[b]);
      }
    }
  }
  if (positives.size() < n_pos) {
    throw CapacityError("only " + std::to_string(positives.size()) + " eligible rhyming pairs for " +
                        std::to_string(n_pos) + " requested positives");
  }

  std::vector<RhymePair> out;
  Rng pos_rng(derive_seed(seed, "rhyme/positive"));
  for (const auto idx : sample_indices(positives.size(), n_pos, pos_rng)) {
    auto [a, b] = positives[idx];
    if (pos_rng.below(2)) std::swap(a, b);
    out.push_back({cands[a], cands[b], true});
  }

  Rng neg_rng(derive_seed(seed, "rhyme/negative"));
  std::set<std::pair<std::size_t, std::size_t>> used;
  const std::size_t max_attempts = 1000 * (n_neg + 1);
  std::size_t attempts = 0;
  std::size_t negatives = 0;
  while (negatives < n_neg && cands.size() >= 2) {
    if (++attempts > max_attempts) break;
    const auto a = static_cast<std::size_t>(neg_rng.below(cands.size()));
    const auto b = static_cast<std::size_t>(neg_rng.below(cands.size()));
    if (a == b || keys[a] == keys[b]) continue;
    if (!used.emplace(std::min(a, b), std::max(a, b)).second) continue;
    out.push_back({cands[a], cands[b], false});
    ++negatives;
  }
  if (negatives < n_neg) {
    throw CapacityError("found only " + std::to_string(negatives) + " non-rhyming pairs for " +
                        std::to_string(n_neg) + " requested negatives");
  }

  Rng mix(derive_seed(seed, "rhyme/shuffle"));
  mix.shuffle(std::span<RhymePair>(out));
  return out;
}

G2pLabel encode_g2p(const Pronunciation& p) {
  G2pLabel label{};
  for (std::size_t i = 0; i < p.size() && i < kG2pLabelLength; ++i) label[i] = PhonemeIndexTable::index(p[i].symbol);
  return label;
}

std::vector<G2pRow> build_g2p_dataset(const Lexicon& lex, const std::vector<std::string>& words, std::size_t n,
                                      std::uint64_t seed) {
  const auto cands = eligible_words(lex, words);
  if (cands.size() < n) {
    throw CapacityError("only " + std::to_string(cands.size()) + " words are in both the lexicon and the word list; " +
                        std::to_string(n) + " requested");
  }
  Rng rng(derive_seed(seed, "g2p/sample"));
  std::vector<G2pRow> rows;
  rows.reserve(n);
  for (const auto i : sample_indices(cands.size(), n, rng)) {
    const auto& p = pronounce(lex, cands[i]);
    rows.push_back({cands[i], encode_g2p(p), count_syllables(p)});
  }
  return rows;
}

std::size_t edit_distance(const std::vector<Arpabet>& a, const std::vector<Arpabet>& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Rational per(const Pronunciation& reference, const Pronunciation& hypothesis) {
  if (reference.empty()) throw DomainError("PER needs a non-empty reference");
  return {static_cast<std::int64_t>(edit_distance(base_symbols(reference), base_symbols(hypothesis))),
          static_cast<std::int64_t>(reference.size())};
}

void write_rhyme_csv(const std::filesystem::path& path, const std::vector<RhymePair>& pairs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "word1,word2,label\n";
  for (const auto& p : pairs) out << csv_field(p.word1) << ',' << csv_field(p.word2) << ',' << (p.label ? 1 : 0) << '\n';
}

std::vector<RhymePair> read_rhyme_csv(const std::filesystem::path& path) {
  std::vector<RhymePair> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line_no == 1 || trim(line).empty()) continue;
    const auto f = parse_csv_line(line);
    if (f.size() != 3 || (f[2] != "0" && f[2] != "1")) throw ParseError(path.string(), line_no, "expected word1,word2,0|1");
    out.push_back({to_lower(trim(f[0])), to_lower(trim(f[1])), f[2] == "1"});
  }
  return out;
}

void write_g2p_csv(const std::filesystem::path& path, const std::vector<G2pRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "word";
  for (std::size_t i = 1; i <= kG2pLabelLength; ++i) out << ",p" << i;
  out << ",syllable_count\n";
  for (const auto& r : rows) {
    out << csv_field(r.word);
    for (const auto v : r.phonemes) out << ',' << v;
    out << ',' << r.syllables << '\n';
  }
}

std::vector<G2pRow> read_g2p_csv(const std::filesystem::path& path) {
  std::vector<G2pRow> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line_no == 1 || trim(line).empty()) continue;
    const auto f = parse_csv_line(line);
    if (f.size() != kG2pLabelLength + 2) throw ParseError(path.string(), line_no, "expected word,p1..p8,syllable_count");
    G2pRow row;
    row.word = to_lower(trim(f[0]));
    try {
      for (std::size_t i = 0; i < kG2pLabelLength; ++i) {
        row.phonemes[i] = std::stoi(f[i + 1]);
        if (row.phonemes[i] < 0 || row.phonemes[i] > static_cast<int>(kArpabetCount)) throw std::out_of_range("index");
      }
      row.syllables = std::stoi(f.back());
    } catch (const std::exception&) {
      throw ParseError(path.string(), line_no, "non-numeric or out-of-range label");
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace phonostad
