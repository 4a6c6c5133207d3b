#include "phonostad/alignment.hpp"

#include <unordered_set>

#include "phonostad/error.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

SplitVector split_vector_from_boundaries(std::string_view word, const std::vector<std::size_t>& boundaries) {
  const auto len = utf8_length(word);
  SplitVector v(len > 0 ? len - 1 : 0, 0);
  std::size_t prev = 0;
  for (const auto b : boundaries) {
    if (b < 1 || b + 1 > len || b <= prev) {
      throw RangeError("boundary " + std::to_string(b) + " invalid for '" + std::string(word) + "'");
    }
    v[b - 1] = 1;
    prev = b;
  }
  return v;
}

std::vector<std::size_t> boundaries_from_pieces(const std::vector<std::string>& pieces) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    pos += utf8_length(pieces[i]);
    out.push_back(pos);
  }
  return out;
}

std::size_t hamming(const SplitVector& a, const SplitVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("split vectors differ in length (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

Rational stad(std::string_view word, const SplitVector& v_tok, const SplitVector& v_syl) {
  const auto len = utf8_length(word);
  if (len < 2) throw DomainError("STAD is undefined for '" + std::string(word) + "' (no split positions)");
  if (v_tok.size() != len - 1 || v_syl.size() != len - 1) {
    throw DimensionError("split vectors must have length " + std::to_string(len - 1));
  }
  return {static_cast<std::int64_t>(hamming(v_tok, v_syl)), static_cast<std::int64_t>(len - 1)};
}

std::string format_split_vector(const SplitVector& v) {
  std::string out;
  out.reserve(v.size());
  for (auto b : v) out += b ? '1' : '0';
  return out;
}

std::optional<StadScore> score_word(const std::string& word, const TokenSource& tok, const SyllableSource& syl,
                                    int min_syllables) {
  if (!is_alpha_word(word) || word.size() < 2) return std::nullopt;
  try {
    const auto seg = tok(word);
    const auto syllables = syl(word);
    if (static_cast<int>(syllables.size()) < min_syllables) return std::nullopt;
    StadScore s;
    s.word = word;
    s.v_tok = split_vector_from_boundaries(word, seg.char_boundaries);
    s.v_syl = split_vector_from_boundaries(word, boundaries_from_pieces(syllables));
    s.stad = stad(word, s.v_tok, s.v_syl);
    return s;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<std::optional<StadScore>> score_words_serial(const std::vector<std::string>& words, const TokenSource& tok,
                                                         const SyllableSource& syl, int min_syllables) {
  std::vector<std::optional<StadScore>> out(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) out[i] = score_word(words[i], tok, syl, min_syllables);
  return out;
}

std::vector<std::optional<StadScore>> score_words(const std::vector<std::string>& words, const TokenSource& tok,
                                                  const SyllableSource& syl, int min_syllables) {
  std::vector<std::optional<StadScore>> out(words.size());
  const auto n = static_cast<std::ptrdiff_t>(words.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = score_word(words[static_cast<std::size_t>(i)], tok, syl, min_syllables);
  }
  return out;
}

Partition partition_scored(const std::vector<StadScore>& scored, const PartitionConfig& cfg) {
  std::vector<const StadScore*> a_pool, m_pool;
  std::unordered_set<std::string> seen;
  for (const auto& s : scored) {
    if (!seen.insert(s.word).second) continue;
    if (s.stad.num == 0) {
      a_pool.push_back(&s);
    } else if (s.stad.value() > cfg.threshold) {
      m_pool.push_back(&s);
    }
  }
  Partition p;
  p.aligned_candidates = a_pool.size();
  p.misaligned_candidates = m_pool.size();
  if (a_pool.size() < cfg.size || m_pool.size() < cfg.size) {
    throw CapacityError("requested " + std::to_string(cfg.size) + " words per group but only " +
                        std::to_string(a_pool.size()) + " aligned and " + std::to_string(m_pool.size()) +
                        " misaligned candidates exist");
  }
  Rng rng_a(derive_seed(cfg.seed, "partition/aligned"));
  for (const auto i : sample_indices(a_pool.size(), cfg.size, rng_a)) p.aligned.push_back(a_pool[i]->word);
  Rng rng_m(derive_seed(cfg.seed, "partition/misaligned"));
  for (const auto i : sample_indices(m_pool.size(), cfg.size, rng_m)) p.misaligned.push_back(m_pool[i]->word);
  return p;
}

Partition partition_a_m(const std::vector<std::string>& words, const TokenSource& tok, const SyllableSource& syl,
                        const PartitionConfig& cfg) {
  std::vector<StadScore> scored;
  for (auto& s : score_words(words, tok, syl, cfg.min_syllables)) {
    if (s) scored.push_back(std::move(*s));
  }
  return partition_scored(scored, cfg);
}

}  // namespace phonostad
