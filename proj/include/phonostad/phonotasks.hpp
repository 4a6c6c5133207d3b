#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phonostad/lexicon.hpp"
#include "phonostad/rational.hpp"

namespace phonostad {

/// ARPAbet base symbol -> label index, alphabetical (AA = 1 ... ZH = 39); 0 pads.
class PhonemeIndexTable {
 public:
  static int index(Arpabet a) noexcept { return static_cast<int>(a) + 1; }
  /// Throws RangeError outside [1, 39].
  static Arpabet symbol(int index);
};

inline constexpr std::size_t kG2pLabelLength = 8;
using G2pLabel = std::array<int, kG2pLabelLength>;

struct RhymePair {
  std::string word1;
  std::string word2;
  bool label = false;
};

struct G2pRow {
  std::string word;
  G2pLabel phonemes{};
  int syllables = 0;
};

/// Suffix from the anchor vowel: the last primary-stressed vowel, else the
/// last secondary-stressed one, else the last vowel. The anchor keeps its
/// stress digit; the rest are stripped.
Pronunciation rhyme_part(const Pronunciation& p);

/// Perfect rhyme on first pronunciations: rhyme parts equal symbol for symbol
/// (stress ignored). Throws MissingWordError.
bool is_perfect_rhyme(std::string_view w1, std::string_view w2, const Lexicon& lex);
bool is_perfect_rhyme(const Pronunciation& a, const Pronunciation& b);

/// True when the final three characters of the two words are identical.
bool shares_final_three(std::string_view w1, std::string_view w2);

/// Dataset words: alphabetic, in the lexicon with at least one vowel,
/// lowercase, first occurrence only.
std::vector<std::string> eligible_words(const Lexicon& lex, const std::vector<std::string>& words);

/// Balanced rhyme dataset. Positives are perfect rhymes whose final three
/// characters differ; negatives are uniformly drawn non-rhyming pairs; the
/// result is shuffled. Throws CapacityError when a pool runs dry.
std::vector<RhymePair> build_rhyme_dataset(const Lexicon& lex, const std::vector<std::string>& words,
                                           std::size_t n_pos, std::size_t n_neg, std::uint64_t seed);

G2pLabel encode_g2p(const Pronunciation& p);

std::vector<G2pRow> build_g2p_dataset(const Lexicon& lex, const std::vector<std::string>& words, std::size_t n,
                                      std::uint64_t seed);

/// Unit-cost Levenshtein distance on base symbols.
std::size_t edit_distance(const std::vector<Arpabet>& a, const std::vector<Arpabet>& b);

/// Phoneme error rate: edit distance over reference length, stress ignored.
/// Throws DomainError for an empty reference.
Rational per(const Pronunciation& reference, const Pronunciation& hypothesis);

// CSV formats shared with the extractor and the probe loader.
void write_rhyme_csv(const std::filesystem::path& path, const std::vector<RhymePair>& pairs);
std::vector<RhymePair> read_rhyme_csv(const std::filesystem::path& path);
void write_g2p_csv(const std::filesystem::path& path, const std::vector<G2pRow>& rows);
std::vector<G2pRow> read_g2p_csv(const std::filesystem::path& path);

}  // namespace phonostad
