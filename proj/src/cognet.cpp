#include "phonostad/cognet.hpp"

#include <algorithm>
#include <optional>

#include "phonostad/error.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

bool is_english_code(std::string_view code) noexcept {
  const auto c = to_lower(trim(code));
  return c == "eng" || c == "en";
}

bool CognateDb::add(const std::string& set_id, std::string language, std::string form) {
  if (set_id.empty() || language.empty() || form.empty()) throw DomainError("cognate entry fields must be non-empty");
  const bool english = is_english_code(language);
  if (english) index_[to_lower(form)].insert(set_id);
  return sets_[set_id].insert({std::move(language), std::move(form)}).second;
}

std::vector<std::string> CognateDb::sets_of(std::string_view english_word) const {
  const auto it = index_.find(to_lower(english_word));
  if (it == index_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::size_t CognateDb::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, entries] : sets_) n += entries.size();
  return n;
}

namespace {

std::string normalise_header(std::string_view h) {
  std::string out;
  for (const char c : to_lower(trim(h))) out += (c == '_' || c == '-') ? ' ' : c;
  return out;
}

struct PairColumns {
  std::size_t concept_id, lang1, word1, lang2, word2;
};

std::optional<PairColumns> pair_layout(const std::vector<std::string>& header) {
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < header.size(); ++i) at.emplace(normalise_header(header[i]), i);
  for (const char* key : {"concept id", "lang 1", "word 1", "lang 2", "word 2"}) {
    if (!at.count(key)) return std::nullopt;
  }
  return PairColumns{at["concept id"], at["lang 1"], at["word 1"], at["lang 2"], at["word 2"]};
}

bool looks_like_triple_header(const std::vector<std::string>& fields) {
  if (fields.size() < 3) return false;
  const auto first = normalise_header(fields[0]);
  const auto second = normalise_header(fields[1]);
  return (first == "set id" || first == "id" || first == "concept id" || first == "set") &&
         (second == "language" || second == "lang");
}

}  // namespace

CognateDb parse_cognet(std::string_view text, const std::string& source) {
  CognateDb db;
  std::optional<PairColumns> pairs;
  std::size_t line_no = 0;
  bool first = true;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    const auto fields = split(raw, '\t');
    if (first) {
      first = false;
      if ((pairs = pair_layout(fields))) continue;
      if (looks_like_triple_header(fields)) continue;
    }
    auto field = [&](std::size_t i) -> std::string {
      if (i >= fields.size()) throw ParseError(source, line_no, "too few columns");
      auto v = std::string(trim(fields[i]));
      if (v.empty()) throw ParseError(source, line_no, "empty field in column " + std::to_string(i + 1));
      return v;
    };
    if (pairs) {
      const auto id = field(pairs->concept_id);
      db.add(id, field(pairs->lang1), field(pairs->word1));
      db.add(id, field(pairs->lang2), field(pairs->word2));
    } else {
      if (fields.size() < 3) throw ParseError(source, line_no, "expected set id, language and word");
      db.add(field(0), field(1), field(2));
    }
  }
  return db;
}

CognateDb load_cognet(const std::filesystem::path& path) { return parse_cognet(read_file(path), path.string()); }

std::size_t relatedness(const CognateDb& db, std::string_view word, bool inclusive) {
  const auto query = to_lower(word);
  std::set<CognateEntry> seen;
  for (const auto& id : db.sets_of(word)) {
    for (const auto& e : db.sets().at(id)) {
      if (!inclusive && is_english_code(e.language) && to_lower(e.form) == query) continue;
      seen.insert(e);
    }
  }
  return seen.size();
}

GroupRelatedness group_relatedness(const CognateDb& db, const std::vector<std::string>& a,
                                   const std::vector<std::string>& m, bool inclusive) {
  if (a.empty() || m.empty()) throw DomainError("relatedness groups must be non-empty");
  GroupRelatedness out;
  auto run = [&](const std::vector<std::string>& words, const char* group) {
    double total = 0;
    for (const auto& w : words) {
      const auto r = relatedness(db, w, inclusive);
      out.rows.push_back({w, group, r});
      total += static_cast<double>(r);
    }
    return total / static_cast<double>(words.size());
  };
  out.mean_a = run(a, "A");
  out.mean_m = run(m, "M");
  return out;
}

}  // namespace phonostad
