#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace phonostad {

/// A byte-pair-encoding model: vocabulary plus ranked merges.
struct TokenizerSpec {
  std::string name;
  std::unordered_map<std::string, int> vocab;
  /// Key is left + '\0' + right; value is the merge rank (file order).
  std::unordered_map<std::string, int> merge_ranks;
  bool byte_level = true;
  /// Leading-space sentinel as it appears in vocabulary strings.
  std::string space_marker = "Ġ";

  int rank(std::string_view left, std::string_view right) const;
};

/// Segmentation of one word; char_boundaries are code-point indices where a
/// new token starts, excluding 0 and len(word).
struct TokenSegmentation {
  std::string word;
  std::vector<std::string> tokens;
  std::vector<std::size_t> char_boundaries;
};

/// The GPT-2 byte-to-printable-character table (256 UTF-8 strings).
const std::array<std::string, 256>& byte_encoder();

/// JSON vocabulary object and "left right" merges file (optional "#" header).
/// Throws LoadError when a merge references a symbol, or yields a product,
/// that is missing from the vocabulary.
TokenizerSpec load_bpe(const std::filesystem::path& vocab_path, const std::filesystem::path& merges_path,
                       bool byte_level, std::string name = {});
TokenizerSpec make_bpe(std::unordered_map<std::string, int> vocab,
                       const std::vector<std::pair<std::string, std::string>>& merges, bool byte_level,
                       std::string name = {});

/// Greedy lowest-rank merge loop over one word, optionally space-prefixed.
/// Throws TokenizationError if a character is outside the vocabulary.
TokenSegmentation tokenize_word(const TokenizerSpec& spec, std::string_view word, bool leading_space = true);

/// Surface text of each token with space markers removed.
std::vector<std::string> token_surfaces(const TokenizerSpec& spec, const std::vector<std::string>& tokens);

/// Boundaries from token surfaces; throws ProjectionError when the surfaces
/// do not spell the word.
std::vector<std::size_t> project_boundaries(std::string_view word, const std::vector<std::string>& surfaces);

/// "word<TAB>tok1 tok2 ..." per line. Leading "Ġ", "▁" and "##" markers are stripped.
std::unordered_map<std::string, TokenSegmentation> load_pretokenized(const std::filesystem::path& path);

/// "boy", '/' -> "b/o/y".
std::string insert_delimiter(std::string_view word, char delim);

/// Anything that can segment a word (native tokenizer, pretokenized table).
using TokenSource = std::function<TokenSegmentation(const std::string&)>;

}  // namespace phonostad
