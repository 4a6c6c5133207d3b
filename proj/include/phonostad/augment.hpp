#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "phonostad/ipa.hpp"
#include "phonostad/lexicon.hpp"
#include "phonostad/phonotasks.hpp"

namespace phonostad {

inline constexpr std::string_view kIpaOpen = "<IPA>";
inline constexpr std::string_view kIpaClose = "</IPA>";

enum class QaTask { conversation, rhyme, g2p, syllable };
std::string_view to_string(QaTask t) noexcept;

struct QaExample {
  QaTask task = QaTask::conversation;
  std::string question;
  std::string answer;

  bool operator==(const QaExample&) const = default;
};

struct TaskTemplates {
  std::vector<std::string> questions;
  std::map<std::string, std::string, std::less<>> answers;

  const std::string& answer(std::string_view key) const;
};

/// Template file: "[section]" headers followed by "key = value" lines.
/// Repeated "question" keys accumulate; a value wrapped in double quotes keeps
/// its surrounding spaces; "\n" in a value is a newline; '#' starts a comment
/// line. Sections: conversation (ipa_sentence, ipa_item, ipa_joiner), rhyme
/// (5 questions, transcriptions, answer_positive, answer_negative), g2p and
/// syllable (5 questions, answer).
struct TemplateSet {
  std::string ipa_sentence;  // {items}
  std::string ipa_item;      // {word} {ipa}
  std::string ipa_joiner = ", ";
  TaskTemplates rhyme;
  TaskTemplates g2p;
  TaskTemplates syllable;

  /// Throws TemplateError on a missing key, a question count other than 5,
  /// or a placeholder the task does not provide.
  static TemplateSet load(const std::filesystem::path& path);
  static TemplateSet parse(std::string_view text);
};

/// Replaces every {name}. Throws TemplateError naming the first unbound one.
std::string fill(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& bindings);

/// Placeholder names in order of appearance.
std::vector<std::string> placeholders(std::string_view tmpl);

/// True when every <IPA> is closed before the next opens and nothing dangles.
bool ipa_markup_balanced(std::string_view text);
std::size_t count_ipa_spans(std::string_view text);
/// Text inside each <IPA>...</IPA> span.
std::vector<std::string> ipa_spans(std::string_view text);
std::string strip_ipa_markup(std::string_view text);

struct AugmentContext {
  const Lexicon& lex;
  const IpaArpabetMap& map;
  const TemplateSet& templates;
};

struct ConversationOutcome {
  QaExample example;
  int k_sampled = 0;
  int k_applied = 0;
};

/// Augments the index-th conversation pair. k ~ U{0,1,2}; up to k distinct
/// eligible words (alphabetic, 3+ letters once punctuation is stripped, in
/// the lexicon) are wrapped in IPA markers, and the filled IPA sentence is
/// prepended to the answer. k = 0 returns the pair untouched.
ConversationOutcome augment_conversation(std::string_view question, std::string_view answer,
                                         const AugmentContext& ctx, std::uint64_t seed, std::uint64_t index);

struct Conversation {
  std::string question;
  std::string answer;
};

std::vector<ConversationOutcome> augment_conversations(const std::vector<Conversation>& pairs,
                                                       const AugmentContext& ctx, std::uint64_t seed);

struct TaskExamples {
  std::vector<QaExample> examples;
  std::size_t skipped = 0;  // out-of-lexicon or unmappable inputs
};

TaskExamples make_rhyme_examples(const std::vector<RhymePair>& pairs, const AugmentContext& ctx, std::uint64_t seed);
TaskExamples make_g2p_examples(const std::vector<std::string>& words, const AugmentContext& ctx, std::uint64_t seed);
TaskExamples make_syllable_examples(const std::vector<std::string>& words, const AugmentContext& ctx,
                                    std::uint64_t seed);

/// JSON Lines with "question" and "answer" string fields; blank lines ignored.
/// Throws ParseError with the line number.
std::vector<Conversation> read_conversations(const std::filesystem::path& path);
std::vector<Conversation> parse_conversations(std::string_view text, const std::string& source = "<memory>");

/// One {"task","question","answer"} object per line, UTF-8 unescaped.
std::string to_jsonl(const QaExample& e);

}  // namespace phonostad
