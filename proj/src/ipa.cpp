#include "phonostad/ipa.hpp"

#include "phonostad/error.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

IpaArpabetMap IpaArpabetMap::parse(std::string_view text, const std::string& source) {
  IpaArpabetMap m;
  std::array<bool, kArpabetCount> seen{};
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    const auto cols = split(line, '\t');
    if (cols.size() != 2) throw ParseError(source, line_no, "expected ARPA<TAB>IPA");
    const auto sym = parse_arpabet(trim(cols[0]));
    if (!sym) throw ParseError(source, line_no, "unknown ARPAbet symbol '" + cols[0] + "'");
    const std::string ipa(trim(cols[1]));
    if (ipa.empty()) throw ParseError(source, line_no, "empty IPA string");
    const auto idx = static_cast<std::size_t>(*sym);
    if (seen[idx]) throw ParseError(source, line_no, "duplicate symbol " + cols[0]);
    if (!m.from_ipa_.emplace(ipa, *sym).second) throw ParseError(source, line_no, "IPA '" + ipa + "' mapped twice");
    seen[idx] = true;
    m.to_ipa_[idx] = ipa;
    m.longest_ = std::max(m.longest_, ipa.size());
  }
  for (std::size_t i = 0; i < kArpabetCount; ++i) {
    if (!seen[i]) throw ParseError(source, 0, "map does not cover " + std::string(arpabet_name(static_cast<Arpabet>(i))));
  }
  return m;
}

IpaArpabetMap IpaArpabetMap::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

Arpabet IpaArpabetMap::arpabet(std::string_view ipa) const {
  const auto it = from_ipa_.find(std::string(ipa));
  if (it == from_ipa_.end()) throw MappingError("IPA symbol '" + std::string(ipa) + "' is not in the map");
  return it->second;
}

Pronunciation IpaArpabetMap::parse_ipa(std::string_view ipa) const {
  Pronunciation out;
  std::int8_t pending = -1;
  std::size_t i = 0;
  while (i < ipa.size()) {
    if (ipa.substr(i).starts_with(kPrimaryStressMark)) {
      pending = 1;
      i += kPrimaryStressMark.size();
      continue;
    }
    if (ipa.substr(i).starts_with(kSecondaryStressMark)) {
      pending = 2;
      i += kSecondaryStressMark.size();
      continue;
    }
    bool matched = false;
    for (std::size_t len = std::min(longest_, ipa.size() - i); len > 0; --len) {
      const auto it = from_ipa_.find(std::string(ipa.substr(i, len)));
      if (it == from_ipa_.end()) continue;
      Phoneme ph{it->second, -1};
      if (is_vowel(ph.symbol)) {
        ph.stress = pending >= 0 ? pending : 0;
        pending = -1;
      }
      out.push_back(ph);
      i += len;
      matched = true;
      break;
    }
    if (!matched) throw MappingError("unmapped IPA text at '" + std::string(ipa.substr(i)) + "'");
  }
  return out;
}

std::vector<std::string> IpaArpabetMap::segments(std::string_view ipa) const {
  std::vector<std::string> out;
  for (const auto& ph : parse_ipa(ipa)) out.push_back(this->ipa(ph.symbol));
  return out;
}

std::string to_ipa(const Pronunciation& p, const IpaArpabetMap& m) {
  std::string out;
  for (const auto& ph : p) {
    if (ph.stress == 1) out += kPrimaryStressMark;
    if (ph.stress == 2) out += kSecondaryStressMark;
    out += m.ipa(ph.symbol);
  }
  return out;
}

}  // namespace phonostad
