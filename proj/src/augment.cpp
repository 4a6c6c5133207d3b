#include "phonostad/augment.hpp"

#include <algorithm>
#include <json.hpp>
#include <set>

#include "phonostad/error.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

namespace {

using Bindings = std::map<std::string, std::string, std::less<>>;

constexpr std::size_t kQuestionsPerTask = 5;

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Calls on_text for literal runs and on_name for each {name}.
template <typename Text, typename Name>
void scan_template(std::string_view t, Text on_text, Name on_name) {
  std::size_t i = 0, lit = 0;
  while (i < t.size()) {
    if (t[i] == '{') {
      std::size_t j = i + 1;
      while (j < t.size() && is_name_char(t[j])) ++j;
      if (j < t.size() && t[j] == '}' && j > i + 1) {
        on_text(t.substr(lit, i - lit));
        on_name(t.substr(i + 1, j - i - 1));
        i = lit = j + 1;
        continue;
      }
    }
    ++i;
  }
  on_text(t.substr(lit));
}

std::string unescape(std::string_view v) {
  v = trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '\\' && i + 1 < v.size()) {
      const char c = v[i + 1];
      if (c == 'n') { out += '\n'; ++i; continue; }
      if (c == 't') { out += '\t'; ++i; continue; }
      if (c == '\\') { out += '\\'; ++i; continue; }
    }
    out += v[i];
  }
  return out;
}

void require_names(std::string_view what, std::string_view tmpl, std::initializer_list<std::string_view> allowed) {
  for (const auto& name : placeholders(tmpl)) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw TemplateError(std::string(what) + " uses undeclared placeholder {" + name + "}");
    }
  }
}

void check_task(std::string_view section, const TaskTemplates& t, std::initializer_list<std::string_view> answer_keys,
                std::initializer_list<std::string_view> question_names,
                std::initializer_list<std::string_view> answer_names) {
  if (t.questions.size() != kQuestionsPerTask) {
    throw TemplateError("[" + std::string(section) + "] needs exactly 5 question templates, found " +
                        std::to_string(t.questions.size()));
  }
  for (const auto& q : t.questions) require_names(std::string(section) + " question", q, question_names);
  for (const auto key : answer_keys) {
    require_names(std::string(section) + " " + std::string(key), t.answer(key), answer_names);
  }
}

std::string word_ipa(const Pronunciation& p, const IpaArpabetMap& map) { return to_ipa(p, map); }

Pronunciation without_stress(Pronunciation p) {
  for (auto& ph : p) ph.stress = -1;
  return p;
}

const Pronunciation* lookup(const Lexicon& lex, std::string_view word) {
  const std::string key = to_lower(word);
  if (!lex.contains(key)) return nullptr;
  return &pronounce(lex, key);
}

std::size_t pick_question(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  Rng rng(derive_seed(seed, stream, index));
  return static_cast<std::size_t>(rng.below(kQuestionsPerTask));
}

bool ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

struct Candidate {
  std::size_t begin;  // byte span of the word inside the question
  std::size_t end;
  std::string lower;
};

std::vector<Candidate> conversation_candidates(std::string_view q, const Lexicon& lex) {
  std::vector<Candidate> out;
  std::set<std::string> seen;
  std::size_t i = 0;
  while (i < q.size()) {
    while (i < q.size() && std::isspace(static_cast<unsigned char>(q[i]))) ++i;
    std::size_t j = i;
    while (j < q.size() && !std::isspace(static_cast<unsigned char>(q[j]))) ++j;
    std::size_t b = i, e = j;
    while (b < e && !ascii_alpha(q[b])) ++b;
    while (e > b && !ascii_alpha(q[e - 1])) --e;
    const auto core = q.substr(b, e - b);
    if (core.size() >= 3 && is_alpha_word(core)) {
      std::string lower = to_lower(core);
      if (lex.contains(lower) && seen.insert(lower).second) out.push_back({b, e, std::move(lower)});
    }
    i = j;
  }
  return out;
}

}  // namespace

std::string_view to_string(QaTask t) noexcept {
  switch (t) {
    case QaTask::conversation: return "conversation";
    case QaTask::rhyme: return "rhyme";
    case QaTask::g2p: return "g2p";
    case QaTask::syllable: return "syllable";
  }
  return "conversation";
}

const std::string& TaskTemplates::answer(std::string_view key) const {
  const auto it = answers.find(key);
  if (it == answers.end()) throw TemplateError("missing answer template '" + std::string(key) + "'");
  return it->second;
}

std::vector<std::string> placeholders(std::string_view tmpl) {
  std::vector<std::string> names;
  scan_template(tmpl, [](std::string_view) {}, [&](std::string_view n) { names.emplace_back(n); });
  return names;
}

std::string fill(std::string_view tmpl, const Bindings& bindings) {
  std::string out;
  scan_template(
      tmpl, [&](std::string_view lit) { out += lit; },
      [&](std::string_view name) {
        const auto it = bindings.find(name);
        if (it == bindings.end()) throw TemplateError("unbound placeholder {" + std::string(name) + "}");
        out += it->second;
      });
  return out;
}

TemplateSet TemplateSet::parse(std::string_view text) {
  TemplateSet set;
  bool have_sentence = false, have_item = false;
  std::string section;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw TemplateError("line " + std::to_string(line_no) + ": unterminated section");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "conversation" && section != "rhyme" && section != "g2p" && section != "syllable") {
        throw TemplateError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || section.empty()) {
      throw TemplateError("line " + std::to_string(line_no) + ": expected key = value inside a section");
    }
    const std::string key(trim(line.substr(0, eq)));
    std::string value = unescape(line.substr(eq + 1));
    if (section == "conversation") {
      if (key == "ipa_sentence") { set.ipa_sentence = std::move(value); have_sentence = true; }
      else if (key == "ipa_item") { set.ipa_item = std::move(value); have_item = true; }
      else if (key == "ipa_joiner") set.ipa_joiner = std::move(value);
      else throw TemplateError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    TaskTemplates& t = section == "rhyme" ? set.rhyme : section == "g2p" ? set.g2p : set.syllable;
    if (key == "question") t.questions.push_back(std::move(value));
    else t.answers[key] = std::move(value);
  }
  if (!have_sentence || !have_item) throw TemplateError("[conversation] needs ipa_sentence and ipa_item");
  require_names("ipa_sentence", set.ipa_sentence, {"items"});
  require_names("ipa_item", set.ipa_item, {"word", "ipa"});
  check_task("rhyme", set.rhyme, {"transcriptions", "answer_positive", "answer_negative"}, {"word1", "word2"},
             {"word1", "word2", "ipa1", "ipa2", "ending1", "ending2", "ending"});
  check_task("g2p", set.g2p, {"answer"}, {"word"}, {"word", "ipa", "mapping", "arpabet"});
  check_task("syllable", set.syllable, {"answer"}, {"word"}, {"word", "ipa", "nuclei", "count"});
  return set;
}

TemplateSet TemplateSet::load(const std::filesystem::path& path) { return parse(read_file(path)); }

bool ipa_markup_balanced(std::string_view text) {
  bool open = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i).starts_with(kIpaOpen)) {
      if (open) return false;
      open = true;
      i += kIpaOpen.size();
    } else if (text.substr(i).starts_with(kIpaClose)) {
      if (!open) return false;
      open = false;
      i += kIpaClose.size();
    } else {
      ++i;
    }
  }
  return !open;
}

std::vector<std::string> ipa_spans(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while ((pos = text.find(kIpaOpen, pos)) != std::string_view::npos) {
    const auto start = pos + kIpaOpen.size();
    const auto end = text.find(kIpaClose, start);
    if (end == std::string_view::npos) break;
    out.emplace_back(text.substr(start, end - start));
    pos = end + kIpaClose.size();
  }
  return out;
}

std::size_t count_ipa_spans(std::string_view text) { return ipa_spans(text).size(); }

std::string strip_ipa_markup(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.substr(i).starts_with(kIpaOpen)) i += kIpaOpen.size();
    else if (text.substr(i).starts_with(kIpaClose)) i += kIpaClose.size();
    else out += text[i++];
  }
  return out;
}

ConversationOutcome augment_conversation(std::string_view question, std::string_view answer,
                                         const AugmentContext& ctx, std::uint64_t seed, std::uint64_t index) {
  ConversationOutcome out;
  out.example.task = QaTask::conversation;
  out.example.question = std::string(question);
  out.example.answer = std::string(answer);

  Rng rng(derive_seed(seed, "augment/conversation", index));
  out.k_sampled = static_cast<int>(rng.below(3));
  if (out.k_sampled == 0) return out;
  auto candidates = conversation_candidates(question, ctx.lex);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(out.k_sampled), candidates.size());
  if (k == 0) return out;
  auto picked = sample_indices(candidates.size(), k, rng);
  std::sort(picked.begin(), picked.end());
  out.k_applied = static_cast<int>(k);

  std::string q;
  std::vector<std::string> items;
  std::size_t cursor = 0;
  for (const auto idx : picked) {
    const auto& c = candidates[idx];
    q.append(question.substr(cursor, c.begin - cursor));
    q += kIpaOpen;
    q.append(question.substr(c.begin, c.end - c.begin));
    q += kIpaClose;
    cursor = c.end;
    const std::string ipa = word_ipa(pronounce(ctx.lex, c.lower), ctx.map);
    items.push_back(fill(ctx.templates.ipa_item, {{"word", std::string(question.substr(c.begin, c.end - c.begin))},
                                                  {"ipa", ipa}}));
  }
  q.append(question.substr(cursor));
  out.example.question = std::move(q);
  out.example.answer = fill(ctx.templates.ipa_sentence, {{"items", join(items, ctx.templates.ipa_joiner)}}) +
                       std::string(answer);
  return out;
}

std::vector<ConversationOutcome> augment_conversations(const std::vector<Conversation>& pairs,
                                                       const AugmentContext& ctx, std::uint64_t seed) {
  std::vector<ConversationOutcome> out(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& p = pairs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = augment_conversation(p.question, p.answer, ctx, seed, static_cast<std::uint64_t>(i));
  }
  return out;
}

TaskExamples make_rhyme_examples(const std::vector<RhymePair>& pairs, const AugmentContext& ctx, std::uint64_t seed) {
  TaskExamples out;
  const auto& t = ctx.templates.rhyme;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto* p1 = lookup(ctx.lex, pairs[i].word1);
    const auto* p2 = lookup(ctx.lex, pairs[i].word2);
    if (!p1 || !p2) {
      ++out.skipped;
      continue;
    }
    const std::string ending1 = to_ipa(without_stress(rhyme_part(*p1)), ctx.map);
    const std::string ending2 = to_ipa(without_stress(rhyme_part(*p2)), ctx.map);
    const Bindings b{{"word1", pairs[i].word1},          {"word2", pairs[i].word2},
                     {"ipa1", word_ipa(*p1, ctx.map)},   {"ipa2", word_ipa(*p2, ctx.map)},
                     {"ending1", ending1},               {"ending2", ending2},
                     {"ending", ending1}};
    QaExample e;
    e.task = QaTask::rhyme;
    e.question = fill(t.questions[pick_question(seed, "augment/rhyme", i)], b);
    const bool rhymes = is_perfect_rhyme(*p1, *p2);
    e.answer = fill(t.answer("transcriptions"), b) +
               fill(t.answer(rhymes ? "answer_positive" : "answer_negative"), b);
    out.examples.push_back(std::move(e));
  }
  return out;
}

TaskExamples make_g2p_examples(const std::vector<std::string>& words, const AugmentContext& ctx, std::uint64_t seed) {
  TaskExamples out;
  const auto& t = ctx.templates.g2p;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto* p = lookup(ctx.lex, words[i]);
    if (!p) {
      ++out.skipped;
      continue;
    }
    const std::string ipa = to_ipa(without_stress(*p), ctx.map);
    std::vector<std::string> lines, symbols;
    try {
      for (const auto& seg : ctx.map.segments(ipa)) {
        const auto a = ctx.map.arpabet(seg);
        lines.push_back(seg + " → " + std::string(arpabet_name(a)));
        symbols.emplace_back(arpabet_name(a));
      }
    } catch (const MappingError&) {
      ++out.skipped;
      continue;
    }
    const Bindings b{{"word", words[i]}, {"ipa", ipa}, {"mapping", join(lines, "\n")}, {"arpabet", join(symbols, " ")}};
    QaExample e;
    e.task = QaTask::g2p;
    e.question = fill(t.questions[pick_question(seed, "augment/g2p", i)], b);
    e.answer = fill(t.answer("answer"), b);
    out.examples.push_back(std::move(e));
  }
  return out;
}

TaskExamples make_syllable_examples(const std::vector<std::string>& words, const AugmentContext& ctx,
                                    std::uint64_t seed) {
  TaskExamples out;
  const auto& t = ctx.templates.syllable;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto* p = lookup(ctx.lex, words[i]);
    if (!p) {
      ++out.skipped;
      continue;
    }
    std::vector<std::string> nuclei;
    for (const auto& ph : *p) {
      if (ph.vowel()) nuclei.push_back(ctx.map.ipa(ph.symbol));
    }
    if (nuclei.empty()) {
      ++out.skipped;
      continue;
    }
    const Bindings b{{"word", words[i]},
                     {"ipa", word_ipa(*p, ctx.map)},
                     {"nuclei", join(nuclei, ", ")},
                     {"count", std::to_string(count_syllables(*p))}};
    QaExample e;
    e.task = QaTask::syllable;
    e.question = fill(t.questions[pick_question(seed, "augment/syllable", i)], b);
    e.answer = fill(t.answer("answer"), b);
    out.examples.push_back(std::move(e));
  }
  return out;
}

std::vector<Conversation> parse_conversations(std::string_view text, const std::string& source) {
  std::vector<Conversation> out;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("question") || !j.contains("answer") || !j["question"].is_string() ||
        !j["answer"].is_string()) {
      throw ParseError(source, line_no, "expected an object with string fields question and answer");
    }
    out.push_back({j["question"].get<std::string>(), j["answer"].get<std::string>()});
  }
  return out;
}

std::vector<Conversation> read_conversations(const std::filesystem::path& path) {
  return parse_conversations(read_file(path), path.string());
}

std::string to_jsonl(const QaExample& e) {
  const nlohmann::ordered_json j{{"task", to_string(e.task)}, {"question", e.question}, {"answer", e.answer}};
  return j.dump() + "\n";
}

}  // namespace phonostad
