#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <sys/wait.h>

#include "phonostad/embeddings.hpp"
#include "phonostad/rng.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace phonostad;

namespace {

int run(const std::string& args, const fs::path& stdout_file = "/dev/null") {
  const std::string cmd = std::string(PHONOSTAD_CLI) + " " + args + " > " + stdout_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const fs::path& p) {
  const auto text = slurp(p);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::vector<std::string> listing(const fs::path& dir) {
  std::vector<std::string> names;
  if (!fs::exists(dir)) return names;
  for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

std::string data(const std::string& name) { return (testsupport::data_dir() / name).string(); }

/// Six layers whose first column carries the label with growing strength.
void write_probe_fixture(const fs::path& dir, std::size_t n) {
  fs::create_directories(dir / "emb");
  std::ofstream labels(dir / "rhyme.csv");
  labels << "word1,word2,label\n";
  std::vector<std::string> ids;
  std::vector<int> y;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    labels << "w" << i << ",v" << i << "," << label << "\n";
    ids.push_back("w" + std::to_string(i) + " v" + std::to_string(i));
    y.push_back(label);
  }
  labels.close();
  save_sidecar(dir / "emb", "fixture", "{word1} {word2}", ids);
  Rng rng(3);
  for (int depth = 0; depth <= 100; depth += 20) {
    EmbeddingMatrix m;
    m.layer_depth = depth;
    m.data.resize(static_cast<Eigen::Index>(n), 12);
    for (Eigen::Index i = 0; i < m.data.rows(); ++i) {
      for (Eigen::Index j = 0; j < 12; ++j) m.data(i, j) = rng.normal();
      m.data(i, 0) += (y[static_cast<std::size_t>(i)] ? 1 : -1) * (0.2 + depth / 25.0);
    }
    save_embeddings(dir / "emb" / ("layer" + std::to_string(depth) + ".phoemb"), m);
  }
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2") {
    CHECK(run("") != 0);
    CHECK(run("stad") == 2);
    CHECK(run("bogus") == 2);
  }

  TEST_CASE("stad is reproducible and writes every output") {
    const auto dir = testsupport::scratch_dir("cli-stad");
    const std::string common = "stad --tokenizer " + data("gpt2") + " --words " + data("wordlist-en-10000.txt") +
                               " --syllables " + data("syllables.tsv") + " --lexicon " + data("cmudict.dict") +
                               " --onsets " + data("onsets.txt") + " --seed 3 --out ";
    REQUIRE(run(common + (dir / "a").string()) == 0);
    REQUIRE(run(common + (dir / "b").string()) == 0);
    CHECK(listing(dir / "a") == std::vector<std::string>{"A.txt", "M.txt", "manifest.json", "stad.csv", "summary.json"});
    for (const char* f : {"A.txt", "M.txt", "stad.csv", "summary.json"}) {
      CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    auto ma = nlohmann::json::parse(slurp(dir / "a" / "manifest.json"));
    auto mb = nlohmann::json::parse(slurp(dir / "b" / "manifest.json"));
    ma.erase("timestamp");
    mb.erase("timestamp");
    CHECK(ma == mb);
    CHECK(ma["seed"] == 3);
    CHECK(line_count(dir / "a" / "A.txt") == 1000);
    CHECK(line_count(dir / "a" / "M.txt") == 1000);
  }

  TEST_CASE("failures leave no outputs") {
    const auto dir = testsupport::scratch_dir("cli-fail");
    CHECK(run("stad --tokenizer " + (dir / "nowhere").string() + " --words " + data("wordlist-en-10000.txt") +
              " --out " + (dir / "out").string()) == 3);
    CHECK(listing(dir / "out").empty());
    CHECK(run("stad --tokenizer " + data("gpt2") + " --words " + data("wordlist-en-10000.txt") + " --split-size 5000 --out " +
              (dir / "cap").string()) == 4);
    CHECK(listing(dir / "cap").empty());
  }

  TEST_CASE("per") {
    const auto dir = testsupport::scratch_dir("cli-per");
    std::ofstream(dir / "refs.tsv") << "a\tK AE1 T\nb\tD AO1 G\n";
    std::ofstream(dir / "hyps.tsv") << "a\tK AE1 T\nb\tD AO1 G\n";
    REQUIRE(run("per --refs " + (dir / "refs.tsv").string() + " --hyps " + (dir / "hyps.tsv").string() + " --out " +
                (dir / "out").string(),
                dir / "stdout.json") == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "stdout.json"));
    CHECK(j["per"] == 0.0);
    CHECK(fs::exists(dir / "out" / "per.csv"));
  }

  TEST_CASE("dataset and augment") {
    const auto dir = testsupport::scratch_dir("cli-data");
    REQUIRE(run("dataset --task rhyme --seed 0 --out " + (dir / "r").string()) == 0);
    CHECK(line_count(dir / "r" / "rhyme.csv") == 401);
    REQUIRE(run("dataset --task g2p --seed 0 --out " + (dir / "g").string()) == 0);
    CHECK(line_count(dir / "g" / "g2p.csv") == 2001);
    REQUIRE(run("augment --rhyme " + (dir / "r" / "rhyme.csv").string() + " --g2p " + (dir / "g" / "g2p.csv").string() +
                " --seed 1 --out " + (dir / "aug").string()) == 0);
    const auto counts = nlohmann::json::parse(slurp(dir / "aug" / "counts.json"));
    CHECK(line_count(dir / "aug" / "corpus.jsonl") > 4000);
    CHECK(counts.dump().find("rhyme") != std::string::npos);
    std::ofstream(dir / "pairs.csv") << "word1,word2,label\nnight,kite,1\ncough,tough,1\n";
    REQUIRE(run("dataset --task rhyme --pairs " + (dir / "pairs.csv").string() + " --out " + (dir / "imp").string(),
                dir / "imp.json") == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "imp.json"))["rule_disagreements"] == 1);
    CHECK(slurp(dir / "imp" / "rhyme.csv") == slurp(dir / "pairs.csv"));
    std::ofstream(dir / "missing.csv") << "word1,word2,label\nnight,qzxv,0\n";
    CHECK(run("dataset --task rhyme --pairs " + (dir / "missing.csv").string() + " --out " + (dir / "miss").string()) != 0);
    CHECK(listing(dir / "miss").empty());
    std::ofstream(dir / "bad.txt") << "[rhyme]\nquestion = x\n";
    CHECK(run("augment --templates " + (dir / "bad.txt").string() + " --rhyme " + (dir / "r" / "rhyme.csv").string() +
              " --out " + (dir / "bad").string()) == 6);
    CHECK(listing(dir / "bad").empty());
  }

  TEST_CASE("probe with controls and comparison") {
    const auto dir = testsupport::scratch_dir("cli-probe");
    write_probe_fixture(dir, 60);
    const std::string base = "probe --embeddings " + (dir / "emb").string() + " --task rhyme --seeds 5 ";
    REQUIRE(run(base + "--labels " + (dir / "rhyme.csv").string() + " --control random-embedding --out " +
                (dir / "p").string()) == 0);
    CHECK(line_count(dir / "p" / "probe.csv") == 1 + 6 + 1);
    const auto report = nlohmann::json::parse(slurp(dir / "p" / "probe.json"));
    CHECK(report["records"][5]["layer"] == "100%");
    CHECK(report["records"][5]["mean"].get<double>() > 0.95);
    CHECK(report["records"][6]["condition"] == "random-embedding");

    REQUIRE(run(base + "--compare " + (dir / "rhyme.csv").string() + " " + (dir / "rhyme.csv").string() + " --out " +
                (dir / "c").string()) == 0);
    CHECK(line_count(dir / "c" / "probe.csv") == 1 + 12);

    std::ofstream(dir / "other.csv") << "word1,word2,label\nx,y,1\n";
    CHECK(run(base + "--labels " + (dir / "other.csv").string() + " --out " + (dir / "bad").string()) == 5);
    CHECK(listing(dir / "bad").empty());
  }

  TEST_CASE("cognet") {
    const auto dir = testsupport::scratch_dir("cli-cognet");
    fs::create_directories(dir / "groups");
    std::ofstream(dir / "groups" / "A.txt") << "cat\nnight\n";
    std::ofstream(dir / "groups" / "M.txt") << "musical\n";
    REQUIRE(run("cognet --db " + data("cognet_sample.tsv") + " --groups " + (dir / "groups").string() + " --out " +
                (dir / "out").string()) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "out" / "summary.json"));
    CHECK(j["mean_M"] == 6.0);
    CHECK(line_count(dir / "out" / "cognet.csv") == 4);
  }
}
