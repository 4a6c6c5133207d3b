#include <doctest.h>

#include "phonostad/error.hpp"
#include "phonostad/syllabify.hpp"
#include "support.hpp"

using namespace phonostad;
using namespace testsupport;

namespace {

std::vector<std::string> syl(const std::string& w) { return syllabify(w, cmu(), syllable_lexicon(), onsets()); }

std::string joined(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "-") + p;
  return out;
}

}  // namespace

TEST_SUITE("syllabify") {
  TEST_CASE("musical has three syllables") {
    CHECK(joined(syl("musical")) == "mu-si-cal");
    CHECK(count_syllables(pronounce(cmu(), "musical")) == 3);
  }

  TEST_CASE("maximal onset on phonemes") {
    const auto parts = syllabify_phonemes(parse_pronunciation("EH1 K S T R AH0"), onsets());
    REQUIRE(parts.size() == 2);
    CHECK(format_pronunciation(parts[0]) == "EH1 K");
    CHECK(format_pronunciation(parts[1]) == "S T R AH0");
    const auto two = syllabify_phonemes(parse_pronunciation("AE1 T L AE2 S"), onsets());
    CHECK(format_pronunciation(two[0]) == "AE1 T");
  }

  TEST_CASE("fallback splits doubled consonants") {
    CHECK(joined(fallback_syllabify("little", pronounce(cmu(), "little"), onsets())) == "lit-tle");
    CHECK(joined(fallback_syllabify("cat", pronounce(cmu(), "cat"), onsets())) == "cat");
  }

  TEST_CASE("reference lexicon wins and must spell the word") {
    const auto lex = SyllabificationLexicon::parse("table\tta-ble\n");
    CHECK(joined(*lex.find("table")) == "ta-ble");
    CHECK(lex.find("chair") == nullptr);
    CHECK_THROWS_AS(SyllabificationLexicon::parse("table\ttab-el\n"), ParseError);
  }

  TEST_CASE("unknown words raise MissingWordError") {
    CHECK_THROWS_AS(syl("qwzxv"), MissingWordError);
  }

  TEST_CASE("too few letters for the syllables") {
    CHECK_THROWS_AS(fallback_syllabify("ab", parse_pronunciation("AH0 B AH0 B AH0"), onsets()), DomainError);
  }

  TEST_CASE("fallback pieces spell the word with one nucleus each") {
    std::size_t checked = 0, failed = 0;
    for (const auto& w : cmu_common_words()) {
      const auto& p = pronounce(cmu(), w);
      std::vector<std::string> parts;
      try {
        parts = fallback_syllabify(w, p, onsets());
      } catch (const DomainError&) {
        ++failed;
        continue;
      }
      std::string spelled;
      for (const auto& s : parts) {
        REQUIRE_FALSE(s.empty());
        spelled += s;
      }
      REQUIRE(spelled == w);
      REQUIRE(static_cast<int>(parts.size()) == count_syllables(p));
      ++checked;
    }
    CHECK(checked > 9000);
    CHECK(failed < 20);
  }

  TEST_CASE("reference entries agree with the dictionary count") {
    for (const auto& w : syllable_lexicon().words()) {
      if (!cmu().contains(w)) continue;
      CHECK_MESSAGE(static_cast<int>(syllable_lexicon().find(w)->size()) == count_syllables(pronounce(cmu(), w)), w);
    }
  }

  TEST_CASE("grapheme alignment covers letters and phonemes monotonically") {
    for (const char* w : {"musical", "through", "knight", "xylophone", "queue", "box"}) {
      const auto& p = pronounce(cmu(), w);
      const auto steps = align_graphemes(w, p);
      std::size_t l = 0, ph = 0;
      for (const auto& s : steps) {
        CHECK(s.letter_begin == l);
        CHECK(s.phoneme_begin == ph);
        l = s.letter_end;
        ph = s.phoneme_end;
      }
      CHECK(l == std::string_view(w).size());
      CHECK(ph == p.size());
    }
  }
}
