#include "support.hpp"

#include "phonostad/phonotasks.hpp"

namespace testsupport {

using namespace phonostad;

const Lexicon& cmu() {
  static const Lexicon lex = load_cmu_dict(data_dir() / "cmudict.dict");
  return lex;
}

const std::vector<std::string>& wordlist() {
  static const auto words = load_wordlist(data_dir() / "wordlist-en-10000.txt");
  return words;
}

const IpaArpabetMap& ipa_map() {
  static const auto m = IpaArpabetMap::load(data_dir() / "ipa_arpabet.tsv");
  return m;
}

const SyllabificationLexicon& syllable_lexicon() {
  static const auto s = SyllabificationLexicon::load(data_dir() / "syllables.tsv");
  return s;
}

const OnsetTable& onsets() {
  static const auto o = OnsetTable::load(data_dir() / "onsets.txt");
  return o;
}

const TokenizerSpec& gpt2() {
  static const auto spec = load_bpe(data_dir() / "gpt2" / "vocab.json", data_dir() / "gpt2" / "merges.txt", true, "gpt2");
  return spec;
}

const std::vector<std::string>& cmu_common_words() {
  static const auto words = eligible_words(cmu(), wordlist());
  return words;
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("phonostad-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testsupport
