#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phonostad {

struct CognateEntry {
  std::string language;
  std::string form;

  auto operator<=>(const CognateEntry&) const = default;
};

/// Cognate sets keyed by id, with an index from lowercased English forms to
/// the sets that contain them. English is the language code "eng" or "en"
/// (any case). Non-English forms are matched exactly.
class CognateDb {
 public:
  /// Returns false when the entry was already present.
  bool add(const std::string& set_id, std::string language, std::string form);

  const std::map<std::string, std::set<CognateEntry>>& sets() const noexcept { return sets_; }
  /// Set ids containing the English word; empty when absent.
  std::vector<std::string> sets_of(std::string_view english_word) const;
  std::size_t size() const noexcept;  // total entries

 private:
  std::map<std::string, std::set<CognateEntry>> sets_;
  std::map<std::string, std::set<std::string>, std::less<>> index_;
};

bool is_english_code(std::string_view code) noexcept;

/// Reads either a three-column layout (set id, language, word, extra columns
/// ignored; optional header) or the published pairwise layout whose header
/// names "concept id", "lang 1", "word 1", "lang 2", "word 2". Rows are
/// deduplicated. Throws ParseError with the line number on a malformed row.
CognateDb load_cognet(const std::filesystem::path& path);
CognateDb parse_cognet(std::string_view text, const std::string& source = "<memory>");

/// Distinct (language, form) entries across every set containing the word.
/// By default the query's own English rows are not counted.
std::size_t relatedness(const CognateDb& db, std::string_view word, bool inclusive = false);

struct WordRelatedness {
  std::string word;
  std::string group;
  std::size_t relatedness = 0;
};

struct GroupRelatedness {
  double mean_a = 0;
  double mean_m = 0;
  std::vector<WordRelatedness> rows;  // A rows then M rows, input order
};

/// Throws DomainError when either group is empty.
GroupRelatedness group_relatedness(const CognateDb& db, const std::vector<std::string>& a,
                                   const std::vector<std::string>& m, bool inclusive = false);

}  // namespace phonostad
