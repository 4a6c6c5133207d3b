#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "phonostad/ipa.hpp"
#include "phonostad/lexicon.hpp"
#include "phonostad/syllabify.hpp"
#include "phonostad/tokenization.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() { return PHONOSTAD_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return PHONOSTAD_TEST_DATA_DIR; }

// Shared resources, loaded once per process.
const phonostad::Lexicon& cmu();
const std::vector<std::string>& wordlist();
const phonostad::IpaArpabetMap& ipa_map();
const phonostad::SyllabificationLexicon& syllable_lexicon();
const phonostad::OnsetTable& onsets();
const phonostad::TokenizerSpec& gpt2();

/// Words in both the CMU dictionary and the frequency list.
const std::vector<std::string>& cmu_common_words();

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace testsupport
