// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "phonostad/alignment.hpp"
#include "phonostad/kernels.hpp"
#include "phonostad/lexicon.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/syllabify.hpp"
#include "phonostad/tokenization.hpp"

using namespace phonostad;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index n, Eigen::Index d) {
  Rng rng(42);
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

template <auto Fn>
void gram_bench(benchmark::State& state) {
  const auto x = random_matrix(state.range(0), state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1) * state.range(1));
}

template <auto Fn>
void matvec_bench(benchmark::State& state) {
  const auto x = random_matrix(state.range(0), state.range(1));
  const Eigen::VectorXd v = Eigen::VectorXd::Ones(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(x, v));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

struct StadFixture {
  Lexicon lex;
  SyllabificationLexicon syl;
  OnsetTable onsets;
  TokenizerSpec spec;
  std::vector<std::string> words;

  StadFixture() {
    const std::filesystem::path data = PHONOSTAD_DATA_DIR;
    lex = load_cmu_dict(data / "cmudict.dict");
    syl = SyllabificationLexicon::load(data / "syllables.tsv");
    onsets = OnsetTable::load(data / "onsets.txt");
    spec = load_bpe(data / "gpt2" / "vocab.json", data / "gpt2" / "merges.txt", true, "gpt2");
    words = load_wordlist(data / "wordlist-en-10000.txt");
  }

  static const StadFixture& get() {
    static const StadFixture f;
    return f;
  }
};

template <bool Parallel>
void stad_bench(benchmark::State& state) {
  const auto& f = StadFixture::get();
  const TokenSource tok = [&](const std::string& w) { return tokenize_word(f.spec, w, true); };
  const SyllableSource syl = [&](const std::string& w) { return syllabify(w, f.lex, f.syl, f.onsets); };
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(score_words(f.words, tok, syl));
    } else {
      benchmark::DoNotOptimize(score_words_serial(f.words, tok, syl));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.words.size()));
}

}  // namespace

BENCHMARK(gram_bench<kernels::serial::gram>)->Name("gram/serial")->Args({400, 768})->Args({2000, 128});
BENCHMARK(gram_bench<kernels::gram>)->Name("gram/omp")->Args({400, 768})->Args({2000, 128});
BENCHMARK(gram_bench<kernels::serial::outer_gram>)->Name("outer_gram/serial")->Args({400, 768});
BENCHMARK(gram_bench<kernels::outer_gram>)->Name("outer_gram/omp")->Args({400, 768});
BENCHMARK(matvec_bench<kernels::serial::matvec>)->Name("matvec/serial")->Args({2000, 768});
BENCHMARK(matvec_bench<kernels::matvec>)->Name("matvec/omp")->Args({2000, 768});
BENCHMARK(stad_bench<false>)->Name("stad_batch/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(stad_bench<true>)->Name("stad_batch/omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
