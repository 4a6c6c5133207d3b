#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonostad/lexicon.hpp"

namespace phonostad {

inline constexpr std::string_view kPrimaryStressMark = "ˈ";    // ˈ
inline constexpr std::string_view kSecondaryStressMark = "ˌ";  // ˌ

/// Bijection between ARPAbet base symbols and IPA strings.
class IpaArpabetMap {
 public:
  /// Rows "ARPA<TAB>IPA", '#' comments. Throws ParseError unless all 39
  /// symbols are covered exactly once and the IPA side is duplicate-free.
  static IpaArpabetMap load(const std::filesystem::path& path);
  static IpaArpabetMap parse(std::string_view text, const std::string& source = "<memory>");

  const std::string& ipa(Arpabet a) const noexcept { return to_ipa_[static_cast<std::size_t>(a)]; }
  /// Inverse lookup; throws MappingError.
  Arpabet arpabet(std::string_view ipa) const;

  /// Splits an IPA transcription into phonemes by longest match. Stress
  /// marks attach to the following vowel. Throws MappingError on any
  /// unmatched character.
  Pronunciation parse_ipa(std::string_view ipa) const;

  /// IPA segments (one string per phoneme, stress marks dropped).
  std::vector<std::string> segments(std::string_view ipa) const;

 private:
  std::array<std::string, kArpabetCount> to_ipa_;
  std::unordered_map<std::string, Arpabet> from_ipa_;
  std::size_t longest_ = 0;
};

/// Concatenated IPA with stress marks before each stressed nucleus.
std::string to_ipa(const Pronunciation& p, const IpaArpabetMap& m);

}  // namespace phonostad
