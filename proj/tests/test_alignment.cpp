#include <doctest.h>

#include <set>

#include "phonostad/alignment.hpp"
#include "phonostad/error.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/syllabify.hpp"
#include "support.hpp"

using namespace phonostad;
using namespace testsupport;

namespace {

SplitVector random_vector(Rng& rng, std::size_t n) {
  SplitVector v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng.below(2));
  return v;
}

TokenSource gpt2_source(bool space = true) {
  return [space](const std::string& w) { return tokenize_word(gpt2(), w, space); };
}

SyllableSource reference_syllables() {
  return [](const std::string& w) { return syllabify(w, cmu(), syllable_lexicon(), onsets()); };
}

// Synthetic sources: word i is split after its first letter when i is odd,
// and the "syllables" are single letters for words longer than 4.
TokenSource toy_tokens() {
  return [](const std::string& w) {
    TokenSegmentation s;
    s.word = w;
    if (w.size() % 2 == 1) s.char_boundaries = {1};
    return s;
  };
}

SyllableSource toy_syllables() {
  return [](const std::string& w) {
    if (w.size() <= 4) return std::vector<std::string>{w};
    std::vector<std::string> out;
    for (char c : w) out.emplace_back(1, c);
    return out;
  };
}

}  // namespace

TEST_SUITE("alignment") {
  TEST_CASE("musical worked example is exactly 3/6") {
    const SplitVector v_syl{0, 1, 0, 1, 0, 0};
    const SplitVector v_tok{0, 0, 1, 0, 0, 0};
    const auto s = stad("musical", v_tok, v_syl);
    CHECK(s.num == 3);
    CHECK(s.den == 6);
    CHECK(s.value() == 0.5);
    CHECK(s.str() == "3/6");
    CHECK(split_vector_from_boundaries("musical", {2, 4}) == v_syl);
    CHECK(split_vector_from_boundaries("musical", boundaries_from_pieces({"mu", "si", "cal"})) == v_syl);
    CHECK(format_split_vector(v_syl) == "010100");
  }

  TEST_CASE("split vector validation") {
    CHECK_THROWS_AS(split_vector_from_boundaries("cat", {0}), RangeError);
    CHECK_THROWS_AS(split_vector_from_boundaries("cat", {3}), RangeError);
    CHECK_THROWS_AS(split_vector_from_boundaries("cat", {2, 1}), RangeError);
    CHECK_THROWS_AS(split_vector_from_boundaries("cat", {1, 1}), RangeError);
    CHECK_THROWS_AS(hamming({0, 1}, {0}), DimensionError);
    CHECK_THROWS_AS(stad("a", {}, {}), DomainError);
  }

  TEST_CASE("hamming is a metric and STAD lies in [0, 1]") {
    Rng rng(42);
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = 1 + rng.below(12);
      const auto a = random_vector(rng, n), b = random_vector(rng, n), c = random_vector(rng, n);
      CHECK(hamming(a, a) == 0);
      CHECK(hamming(a, b) == hamming(b, a));
      CHECK(hamming(a, c) <= hamming(a, b) + hamming(b, c));
      const std::string word(n + 1, 'x');
      const auto s = stad(word, a, b);
      CHECK(s.value() >= 0.0);
      CHECK(s.value() <= 1.0);
      CHECK(s.den == n);
    }
  }

  TEST_CASE("rational ordering is exact") {
    CHECK(Rational{1, 4} == Rational{1, 4});
    CHECK(Rational{1, 3} < Rational{2, 6 - 1});
    CHECK_FALSE(Rational{2, 8} < Rational{1, 4});
  }

  TEST_CASE("single-token monosyllable scores zero") {
    const auto s = score_word("cat", gpt2_source(), reference_syllables());
    REQUIRE(s);
    CHECK(s->stad.num == 0);
    CHECK_FALSE(score_word("cat", gpt2_source(), reference_syllables(), 2));
    CHECK_FALSE(score_word("can't", gpt2_source(), reference_syllables()));
    CHECK_FALSE(score_word("qwzxv", gpt2_source(), reference_syllables()));
  }

  TEST_CASE("parallel scoring equals the serial reference") {
    const auto& words = cmu_common_words();
    const auto par = score_words(words, gpt2_source(), reference_syllables());
    const auto ser = score_words_serial(words, gpt2_source(), reference_syllables());
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      REQUIRE(par[i].has_value() == ser[i].has_value());
      if (par[i]) {
        REQUIRE(par[i]->stad == ser[i]->stad);
        REQUIRE(par[i]->v_tok == ser[i]->v_tok);
      }
    }
  }

  TEST_CASE("partition groups honour their definitions") {
    std::vector<std::string> words;
    const std::string letters = "abcdefghij";
    for (std::size_t len = 2; len <= 7; ++len) {
      for (char c : letters) words.push_back(std::string(len, c));
    }
    PartitionConfig cfg;
    cfg.size = 5;
    cfg.seed = 3;
    const auto p = partition_a_m(words, toy_tokens(), toy_syllables(), cfg);
    CHECK(p.aligned.size() == 5);
    CHECK(p.misaligned.size() == 5);
    std::set<std::string> a(p.aligned.begin(), p.aligned.end()), m(p.misaligned.begin(), p.misaligned.end());
    CHECK(a.size() == 5);
    CHECK(m.size() == 5);
    for (const auto& w : a) {
      CHECK_FALSE(m.count(w));
      CHECK(score_word(w, toy_tokens(), toy_syllables())->stad.num == 0);
    }
    for (const auto& w : m) CHECK(score_word(w, toy_tokens(), toy_syllables())->stad.value() > 0.25);

    const auto again = partition_a_m(words, toy_tokens(), toy_syllables(), cfg);
    CHECK(again.aligned == p.aligned);
    CHECK(again.misaligned == p.misaligned);
    cfg.seed = 4;
    const auto other = partition_a_m(words, toy_tokens(), toy_syllables(), cfg);
    CHECK((other.aligned != p.aligned || other.misaligned != p.misaligned));
  }

  TEST_CASE("capacity errors report achievable counts") {
    std::vector<std::string> words{"ab", "abc", "abcde"};
    PartitionConfig cfg;
    cfg.size = 10;
    try {
      (void)partition_a_m(words, toy_tokens(), toy_syllables(), cfg);
      FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
      CHECK(std::string(e.what()).find("only") != std::string::npos);
    }
  }

  TEST_CASE("threshold boundary is exclusive") {
    StadScore quarter{"abcde", Rational{1, 4}, {}, {}};
    StadScore half{"abcdef", Rational{1, 2}, {}, {}};
    StadScore zero{"ab", Rational{0, 1}, {}, {}};
    PartitionConfig cfg;
    cfg.size = 1;
    const auto p = partition_scored({quarter, half, zero}, cfg);
    CHECK(p.misaligned_candidates == 1);
    CHECK(p.misaligned.front() == "abcdef");
  }

  TEST_CASE("the shipped resources fill 1000/1000 groups") {
    PartitionConfig cfg;
    const auto p = partition_a_m(wordlist(), gpt2_source(), reference_syllables(), cfg);
    CHECK(p.aligned.size() == 1000);
    CHECK(p.misaligned.size() == 1000);
  }
}
