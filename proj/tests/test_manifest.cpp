#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "phonostad/error.hpp"
#include "phonostad/manifest.hpp"
#include "support.hpp"

using namespace phonostad;
namespace fs = std::filesystem;

namespace {

std::size_t entries(const fs::path& dir) {
  return static_cast<std::size_t>(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}));
}

}  // namespace

TEST_SUITE("manifest") {
  TEST_CASE("sha256 reference digests") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const auto dir = testsupport::scratch_dir("sha");
    std::ofstream(dir / "f.txt") << "abc";
    CHECK(sha256_file(dir / "f.txt") == sha256_hex("abc"));
    CHECK_THROWS_AS(sha256_file(dir / "missing"), LoadError);
  }

  TEST_CASE("manifest JSON") {
    const auto dir = testsupport::scratch_dir("manifest");
    std::ofstream(dir / "b.txt") << "b";
    std::ofstream(dir / "a.txt") << "a";
    RunManifest m;
    m.subcommand = "stad";
    m.flags["--seed"] = "7";
    m.seed = 7;
    m.add_input_dir(dir);
    m.stamp();
    const auto j = nlohmann::json::parse(m.to_json());
    CHECK(j["subcommand"] == "stad");
    CHECK(j["seed"] == 7);
    CHECK(j["inputs"].size() == 2);
    CHECK(j["inputs"][(dir / "a.txt").string()] == sha256_hex("a"));
    CHECK(j["version"] == std::string(toolkit_version()));
    CHECK(j["timestamp"].get<std::string>().ends_with("Z"));
  }

  TEST_CASE("output set commits or leaves nothing") {
    const auto dir = testsupport::scratch_dir("outputs");
    {
      OutputSet out(dir);
      out.write("one.txt", "1");
      out.write("two.txt", "2");
      CHECK_FALSE(fs::exists(dir / "one.txt"));
    }
    CHECK(entries(dir) == 0);
    {
      OutputSet out(dir);
      out.write("one.txt", "1");
      out.commit();
      CHECK(out.committed().size() == 1);
    }
    CHECK(entries(dir) == 1);
    std::ifstream in(dir / "one.txt");
    std::string s;
    in >> s;
    CHECK(s == "1");
  }
}
