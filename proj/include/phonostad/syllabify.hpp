#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonostad/lexicon.hpp"

namespace phonostad {

/// Reference orthographic syllabifications, "word<TAB>syl-syl-syl" per line.
class SyllabificationLexicon {
 public:
  static SyllabificationLexicon load(const std::filesystem::path& path);
  static SyllabificationLexicon parse(std::string_view text, const std::string& source = "<memory>");

  void add(std::string_view word, std::vector<std::string> syllables);
  const std::vector<std::string>* find(std::string_view word) const;
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<std::string>& words() const noexcept { return order_; }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
  std::vector<std::string> order_;
};

/// Set of legal syllable onsets (consonant sequences).
class OnsetTable {
 public:
  static OnsetTable load(const std::filesystem::path& path);
  static OnsetTable parse(std::string_view text, const std::string& source = "<memory>");

  bool legal(const std::vector<Arpabet>& cluster) const { return cluster.empty() || onsets_.contains(cluster); }
  std::size_t size() const noexcept { return onsets_.size(); }

 private:
  std::set<std::vector<Arpabet>> onsets_;
};

/// Splits a pronunciation into syllables: one vowel nucleus each, intervocalic
/// consonants assigned to the longest legal onset of the next syllable.
std::vector<Pronunciation> syllabify_phonemes(const Pronunciation& p, const OnsetTable& onsets);

/// One step of a monotone grapheme-phoneme alignment: letters
/// [letter_begin, letter_end) spell phonemes [phoneme_begin, phoneme_end).
struct AlignmentStep {
  std::size_t letter_begin, letter_end;
  std::size_t phoneme_begin, phoneme_end;
};

/// Minimum-cost alignment of a lowercase word to its phonemes by dynamic
/// programming over a handcrafted grapheme/phoneme cost table.
std::vector<AlignmentStep> align_graphemes(std::string_view word, const Pronunciation& p);

/// Orthographic syllables from the phoneme syllabification projected through
/// the grapheme alignment. Throws DomainError if the word has fewer letters
/// than syllables.
std::vector<std::string> fallback_syllabify(std::string_view word, const Pronunciation& p, const OnsetTable& onsets);

/// Reference lexicon entry when present, otherwise the fallback over the
/// first CMU pronunciation. Throws MissingWordError when the word is in
/// neither resource.
std::vector<std::string> syllabify(std::string_view word, const Lexicon& lex,
                                   const SyllabificationLexicon& syl, const OnsetTable& onsets);

}  // namespace phonostad
