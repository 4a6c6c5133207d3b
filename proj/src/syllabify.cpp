#include "phonostad/syllabify.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <span>

#include "phonostad/error.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

SyllabificationLexicon SyllabificationLexicon::parse(std::string_view text, const std::string& source) {
  SyllabificationLexicon out;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) throw ParseError(source, line_no, "expected word<TAB>syl-syl-syl");
    const auto word = to_lower(trim(cols[0]));
    auto syllables = split(to_lower(trim(cols[1])), '-');
    std::string joined;
    for (const auto& s : syllables) {
      if (s.empty()) throw ParseError(source, line_no, "empty syllable in '" + cols[1] + "'");
      joined += s;
    }
    if (joined != word) throw ParseError(source, line_no, "syllables of '" + word + "' do not spell the word");
    out.add(word, std::move(syllables));
  }
  return out;
}

SyllabificationLexicon SyllabificationLexicon::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

void SyllabificationLexicon::add(std::string_view word, std::vector<std::string> syllables) {
  auto key = to_lower(word);
  if (entries_.insert_or_assign(key, std::move(syllables)).second) order_.push_back(key);
}

const std::vector<std::string>* SyllabificationLexicon::find(std::string_view word) const {
  const auto it = entries_.find(to_lower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

OnsetTable OnsetTable::parse(std::string_view text, const std::string& source) {
  OnsetTable t;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    std::vector<Arpabet> cluster;
    for (const auto& tok : split_whitespace(line)) {
      const auto sym = parse_arpabet(tok);
      if (!sym || is_vowel(*sym)) throw ParseError(source, line_no, "onset must be consonants, got '" + tok + "'");
      cluster.push_back(*sym);
    }
    t.onsets_.insert(std::move(cluster));
  }
  return t;
}

OnsetTable OnsetTable::load(const std::filesystem::path& path) { return parse(read_file(path), path.string()); }

std::vector<Pronunciation> syllabify_phonemes(const Pronunciation& p, const OnsetTable& onsets) {
  std::vector<std::size_t> nuclei;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].vowel()) nuclei.push_back(i);
  }
  if (nuclei.empty()) throw DegeneratePronunciationError("pronunciation '" + format_pronunciation(p) + "' has no vowel");

  // starts[k] = index of the first phoneme of syllable k.
  std::vector<std::size_t> starts{0};
  for (std::size_t k = 1; k < nuclei.size(); ++k) {
    const auto lo = nuclei[k - 1] + 1;
    const auto hi = nuclei[k];
    auto start = hi;
    for (auto cand = lo; cand < hi; ++cand) {
      std::vector<Arpabet> cluster;
      for (auto i = cand; i < hi; ++i) cluster.push_back(p[i].symbol);
      if (onsets.legal(cluster)) {
        start = cand;
        break;
      }
    }
    starts.push_back(start);
  }
  std::vector<Pronunciation> out;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const auto end = k + 1 < starts.size() ? starts[k + 1] : p.size();
    out.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(starts[k]), p.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return out;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

using A = Arpabet;

bool in(A x, std::initializer_list<A> set) { return std::find(set.begin(), set.end(), x) != set.end(); }

// Letter-to-phoneme costs for the common correspondences of English spelling.
double single_cost(char c, A ph) {
  const bool pv = is_vowel(ph);
  if (vowel_letter(c) && pv) {
    bool common = false;
    switch (c) {
      case 'a': common = in(ph, {A::AE, A::EY, A::AA, A::AH, A::AO, A::EH, A::IH}); break;
      case 'e': common = in(ph, {A::EH, A::IY, A::IH, A::AH, A::ER, A::EY}); break;
      case 'i': common = in(ph, {A::IH, A::AY, A::IY, A::AH, A::ER}); break;
      case 'o': common = in(ph, {A::AA, A::OW, A::AO, A::AH, A::UW, A::UH, A::ER}); break;
      case 'u': common = in(ph, {A::AH, A::UW, A::UH, A::ER, A::IH}); break;
      case 'y': common = in(ph, {A::IY, A::IH, A::AY}); break;
      default: break;
    }
    return common ? 0.2 : 0.6;
  }
  if (c == 'y' && ph == A::Y) return 0.1;
  if (c == 'u' && ph == A::W) return 1.0;
  if (c == 'i' && ph == A::Y) return 1.0;
  if (c == 'o' && ph == A::W) return 2.0;
  if (c == 'r' && ph == A::ER) return 0.5;
  if (vowel_letter(c) != pv) return 3.0;
  bool common = false;
  switch (c) {
    case 'b': common = ph == A::B; break;
    case 'c': common = in(ph, {A::K, A::S, A::CH, A::SH}); break;
    case 'd': common = in(ph, {A::D, A::JH, A::T}); break;
    case 'f': common = in(ph, {A::F, A::V}); break;
    case 'g': common = in(ph, {A::G, A::JH, A::ZH}); break;
    case 'h': common = ph == A::HH; break;
    case 'j': common = in(ph, {A::JH, A::Y, A::HH}); break;
    case 'k': common = ph == A::K; break;
    case 'l': common = ph == A::L; break;
    case 'm': common = ph == A::M; break;
    case 'n': common = in(ph, {A::N, A::NG}); break;
    case 'p': common = ph == A::P; break;
    case 'q': common = ph == A::K; break;
    case 'r': common = ph == A::R; break;
    case 's': common = in(ph, {A::S, A::Z, A::SH, A::ZH}); break;
    case 't': common = in(ph, {A::T, A::SH, A::CH, A::D, A::TH}); break;
    case 'v': common = ph == A::V; break;
    case 'w': common = in(ph, {A::W, A::V}); break;
    case 'x': common = in(ph, {A::Z, A::K, A::S}); break;
    case 'z': common = in(ph, {A::Z, A::S, A::ZH}); break;
    default: break;
  }
  return common ? 0.0 : 2.0;
}

double silent_cost(std::string_view g) {
  if (g.size() == 1) {
    const char c = g[0];
    if (c == 'e') return 0.8;
    if (c == 'h') return 1.0;
    if (c == 'u') return 1.2;
    if (vowel_letter(c)) return 1.5;
    return 2.5;
  }
  if (g == "gh") return 0.6;
  if (g == "ue") return 1.0;
  return kInf;
}

double digraph_cost(std::string_view g, A ph) {
  struct Entry {
    std::string_view letters;
    std::initializer_list<A> phonemes;
  };
  static const Entry table[] = {
      {"th", {A::TH, A::DH, A::T}}, {"sh", {A::SH}}, {"ch", {A::CH, A::K, A::SH}},
      {"ph", {A::F}},                {"ng", {A::NG}}, {"ck", {A::K}},
      {"gh", {A::G, A::F}},          {"wh", {A::W, A::HH}}, {"kn", {A::N}},
      {"wr", {A::R}},                {"gn", {A::N}},  {"mb", {A::M}},
      {"mn", {A::M}},                {"ps", {A::S}},  {"rh", {A::R}},
      {"sc", {A::S}},                {"ti", {A::SH, A::CH}}, {"ci", {A::SH}},
      {"si", {A::ZH, A::SH}},        {"qu", {A::K}},  {"dg", {A::JH}},
      {"igh", {A::AY}},              {"tch", {A::CH}}, {"dge", {A::JH}},
      {"sch", {A::SH}},
  };
  for (const auto& e : table) {
    if (e.letters == g) return in(ph, e.phonemes) ? 0.2 : kInf;
  }
  return kInf;
}

double chunk_cost(std::string_view g, std::span<const A> ph) {
  if (g.empty()) return ph.size() == 1 ? 4.0 : kInf;
  if (ph.empty()) return silent_cost(g);

  if (ph.size() == 1) {
    const A p = ph[0];
    if (g.size() == 1) return single_cost(g[0], p);
    if (const auto d = digraph_cost(g, p); d < kInf) return d;
    const bool all_vowels = std::all_of(g.begin() + 1, g.end(), [](char c) { return vowel_letter(c) || c == 'w'; }) &&
                            vowel_letter(g[0]);
    if (is_vowel(p)) {
      if (g.size() == 2 && all_vowels) return 0.3;
      if (g.size() >= 3 && (g == "ough" || g == "augh" || g == "eigh" || g == "eau" || all_vowels)) return 0.4;
      if (p == A::ER && g.back() == 'r' && std::all_of(g.begin(), g.end() - 1, vowel_letter)) return 0.2;
      return kInf;
    }
    if (g.size() == 2 && g[0] == g[1] && single_cost(g[0], p) == 0.0) return 0.1;
    if (g.size() == 2 && (g == "ck" || g == "ce" || g == "ge" || g == "se" || g == "ve" || g == "ze")) {
      return single_cost(g[0], p) == 0.0 ? 0.5 : kInf;
    }
    return g.size() == 2 ? 2.5 : kInf;
  }

  // Two phonemes.
  if (g.size() == 1) {
    const char c = g[0];
    if (c == 'x' && ((ph[0] == A::K && (ph[1] == A::S || ph[1] == A::SH)) || (ph[0] == A::G && ph[1] == A::Z))) return 0.3;
    if (c == 'u' && ph[0] == A::Y && is_vowel(ph[1])) return 0.4;
    if (single_cost(c, ph[0]) <= 0.6 || single_cost(c, ph[1]) <= 0.6) return 2.5;
    return kInf;
  }
  if (g.size() == 2) {
    if (g == "qu" && ph[0] == A::K && ph[1] == A::W) return 0.2;
    if (g == "ew" && ph[0] == A::Y && ph[1] == A::UW) return 0.3;
    if (g == "le" && ph[0] == A::AH && ph[1] == A::L) return 0.5;
    if (g == "cc" && ph[0] == A::K && ph[1] == A::S) return 0.3;
  }
  return kInf;
}

}  // namespace

std::vector<AlignmentStep> align_graphemes(std::string_view word, const Pronunciation& p) {
  const auto nl = word.size();
  const auto np = p.size();
  const auto syms = base_symbols(p);
  struct Cell {
    double cost = kInf;
    std::size_t prev_l = 0, prev_p = 0;
  };
  std::vector<Cell> dp((nl + 1) * (np + 1));
  auto at = [&](std::size_t l, std::size_t q) -> Cell& { return dp[l * (np + 1) + q]; };
  at(0, 0).cost = 0.0;
  for (std::size_t l = 0; l <= nl; ++l) {
    for (std::size_t q = 0; q <= np; ++q) {
      const double base = at(l, q).cost;
      if (base == kInf) continue;
      for (std::size_t gl = 0; gl <= 4 && l + gl <= nl; ++gl) {
        for (std::size_t pl = 0; pl <= 2 && q + pl <= np; ++pl) {
          if (gl == 0 && pl == 0) continue;
          const double c = chunk_cost(word.substr(l, gl), std::span<const A>(syms).subspan(q, pl));
          if (c == kInf) continue;
          auto& next = at(l + gl, q + pl);
          if (base + c < next.cost) next = {base + c, l, q};
        }
      }
    }
  }
  if (at(nl, np).cost == kInf) {
    throw DomainError("cannot align '" + std::string(word) + "' with " + format_pronunciation(p));
  }
  std::vector<AlignmentStep> steps;
  for (std::size_t l = nl, q = np; l > 0 || q > 0;) {
    const auto& cell = at(l, q);
    steps.push_back({cell.prev_l, l, cell.prev_p, q});
    l = cell.prev_l;
    q = cell.prev_p;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

std::vector<std::string> fallback_syllabify(std::string_view word, const Pronunciation& p, const OnsetTable& onsets) {
  const auto lower = to_lower(word);
  const auto syllables = syllabify_phonemes(p, onsets);
  const auto k = syllables.size();
  if (lower.size() < k) {
    throw DomainError("'" + lower + "' has fewer letters than its " + std::to_string(k) + " syllables");
  }
  if (k == 1) return {lower};

  const auto steps = align_graphemes(lower, p);
  std::vector<std::size_t> cuts;  // letter index where syllable s (s >= 1) starts
  std::size_t phoneme_start = 0;
  for (std::size_t s = 1; s < k; ++s) {
    phoneme_start += syllables[s - 1].size();
    std::size_t cut = lower.size();
    for (const auto& st : steps) {
      if (st.phoneme_begin <= phoneme_start && phoneme_start < st.phoneme_end) {
        cut = st.phoneme_begin == phoneme_start ? st.letter_begin : st.letter_end;
        // A doubled consonant spelling one phoneme is split between the syllables (lit-tle).
        if (st.phoneme_begin == phoneme_start && st.letter_end - st.letter_begin == 2 &&
            lower[st.letter_begin] == lower[st.letter_begin + 1] && !vowel_letter(lower[st.letter_begin])) {
          ++cut;
        }
        break;
      }
    }
    cuts.push_back(cut);
  }
  // Every syllable keeps at least one letter.
  for (std::size_t s = 0; s < cuts.size(); ++s) {
    const std::size_t lo = s == 0 ? 1 : cuts[s - 1] + 1;
    cuts[s] = std::max(cuts[s], lo);
  }
  for (std::size_t s = cuts.size(); s-- > 0;) {
    const std::size_t hi = s + 1 == cuts.size() ? lower.size() - 1 : cuts[s + 1] - 1;
    cuts[s] = std::min(cuts[s], hi);
  }
  std::vector<std::string> out;
  std::size_t start = 0;
  for (const auto cut : cuts) {
    out.push_back(lower.substr(start, cut - start));
    start = cut;
  }
  out.push_back(lower.substr(start));
  return out;
}

std::vector<std::string> syllabify(std::string_view word, const Lexicon& lex,
                                   const SyllabificationLexicon& syl, const OnsetTable& onsets) {
  if (const auto* ref = syl.find(word)) return *ref;
  if (!lex.contains(word)) throw MissingWordError(std::string(word));
  return fallback_syllabify(word, pronounce(lex, word), onsets);
}

}  // namespace phonostad
