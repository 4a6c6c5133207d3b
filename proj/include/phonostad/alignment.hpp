#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonostad/rational.hpp"
#include "phonostad/tokenization.hpp"

namespace phonostad {

/// Bit i is set when a split follows character i + 1 (length len(word) - 1).
using SplitVector = std::vector<std::uint8_t>;

struct StadScore {
  std::string word;
  Rational stad;
  SplitVector v_tok;
  SplitVector v_syl;
};

/// Throws RangeError when boundaries are out of [1, len-1] or not strictly increasing.
SplitVector split_vector_from_boundaries(std::string_view word, const std::vector<std::size_t>& boundaries);

/// Boundaries implied by consecutive syllables (cumulative lengths).
std::vector<std::size_t> boundaries_from_pieces(const std::vector<std::string>& pieces);

std::size_t hamming(const SplitVector& a, const SplitVector& b);

/// Normalised Hamming distance as an unreduced fraction hamming/n.
/// Throws DomainError for single-character words (n = 0).
Rational stad(std::string_view word, const SplitVector& v_tok, const SplitVector& v_syl);

std::string format_split_vector(const SplitVector& v);

using SyllableSource = std::function<std::vector<std::string>(const std::string&)>;

/// Scores one word; returns nullopt when the word is ineligible (non-alphabetic,
/// single letter, unknown to either source, fewer than min_syllables).
std::optional<StadScore> score_word(const std::string& word, const TokenSource& tok, const SyllableSource& syl,
                                    int min_syllables = 1);

/// Scores every word. The OpenMP version writes each slot independently and is
/// element-for-element identical to the serial reference. Both sources must be
/// safe to call concurrently.
std::vector<std::optional<StadScore>> score_words(const std::vector<std::string>& words, const TokenSource& tok,
                                                  const SyllableSource& syl, int min_syllables = 1);
std::vector<std::optional<StadScore>> score_words_serial(const std::vector<std::string>& words, const TokenSource& tok,
                                                         const SyllableSource& syl, int min_syllables = 1);

struct PartitionConfig {
  double threshold = 0.25;
  std::size_t size = 1000;
  std::uint64_t seed = 0;
  int min_syllables = 1;
};

struct Partition {
  std::vector<std::string> aligned;     // STAD = 0
  std::vector<std::string> misaligned;  // STAD > threshold
  std::size_t aligned_candidates = 0;
  std::size_t misaligned_candidates = 0;
};

/// Candidate pools from already-scored words (in input order).
Partition partition_scored(const std::vector<StadScore>& scored, const PartitionConfig& cfg);

/// Scores the words and samples both groups uniformly without replacement.
/// Throws CapacityError naming achievable sizes when a pool is too small.
Partition partition_a_m(const std::vector<std::string>& words, const TokenSource& tok, const SyllableSource& syl,
                        const PartitionConfig& cfg);

}  // namespace phonostad
