#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phonostad {

/// The 39 ARPAbet base symbols in alphabetical order. The enumerator value
/// plus one is the phoneme's label index (AA = 1 ... ZH = 39; 0 is padding).
enum class Arpabet : std::uint8_t {
  AA, AE, AH, AO, AW, AY, B, CH, D, DH, EH, ER, EY, F, G, HH, IH, IY, JH, K,
  L, M, N, NG, OW, OY, P, R, S, SH, T, TH, UH, UW, V, W, Y, Z, ZH,
};

inline constexpr std::size_t kArpabetCount = 39;

std::string_view arpabet_name(Arpabet a) noexcept;
std::optional<Arpabet> parse_arpabet(std::string_view base) noexcept;
bool is_vowel(Arpabet a) noexcept;
const std::array<Arpabet, kArpabetCount>& all_arpabet() noexcept;

struct Phoneme {
  Arpabet symbol{};
  /// 0, 1 or 2 on vowels; -1 means "not annotated" (always the case on consonants).
  std::int8_t stress = -1;

  bool has_stress() const noexcept { return stress >= 0; }
  bool vowel() const noexcept { return is_vowel(symbol); }
  /// "AE1", "K".
  std::string str() const;
  friend bool operator==(const Phoneme&, const Phoneme&) = default;
};

using Pronunciation = std::vector<Phoneme>;

/// Parses one ARPAbet token ("AE1", "K"). Strict mode requires a stress
/// digit on every vowel and forbids one on consonants.
std::optional<Phoneme> parse_phoneme(std::string_view token, bool strict);

/// Space-separated ARPAbet string. Throws MappingError on an unknown symbol,
/// DomainError when empty.
Pronunciation parse_pronunciation(std::string_view text, bool strict = false);

/// "K AE1 T"; with strip_stress "K AE T".
std::string format_pronunciation(const Pronunciation& p, bool strip_stress = false);

/// Base symbols only.
std::vector<Arpabet> base_symbols(const Pronunciation& p);

class Lexicon {
 public:
  /// Appends a variant. Keys are lowercased.
  void add(std::string_view word, Pronunciation p);

  bool contains(std::string_view word) const;
  /// All variants in file order; throws MissingWordError.
  const std::vector<Pronunciation>& variants(std::string_view word) const;
  /// Words in first-seen file order.
  const std::vector<std::string>& words() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }

 private:
  std::unordered_map<std::string, std::vector<Pronunciation>> entries_;
  std::vector<std::string> order_;
};

/// Reads a CMU Pronouncing Dictionary file. Accepts both the classic layout
/// (";;;" comments, upper-case words, "WORD(1)" variants) and the
/// cmudict.dict layout (lower-case, "word(2)", trailing "# comment").
Lexicon load_cmu_dict(const std::filesystem::path& path);
Lexicon parse_cmu_dict(std::string_view text, const std::string& source = "<memory>");

/// First listed variant.
const Pronunciation& pronounce(const Lexicon& lex, std::string_view word);

/// Number of vowel nuclei (stress-bearing phonemes).
int count_syllables(const Pronunciation& p);

/// One word per line; lowercased, blank lines skipped, first occurrence kept.
std::vector<std::string> load_wordlist(const std::filesystem::path& path);

}  // namespace phonostad
