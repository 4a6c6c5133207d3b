#include "phonostad/manifest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <memory>

#include "phonostad/error.hpp"
#include "phonostad/util.hpp"

#ifndef PHONOSTAD_VERSION
#define PHONOSTAD_VERSION "0.0.0"
#endif

namespace phonostad {

std::string_view toolkit_version() noexcept { return PHONOSTAD_VERSION; }

namespace {

struct Sha256 {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};

  Sha256() {
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  }
  void update(const void* data, std::size_t n) { EVP_DigestUpdate(ctx.get(), data, n); }
  std::string hex() {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 15];
    }
    return out;
  }
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Sha256 h;
  h.update(bytes.data(), bytes.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read " + path.string());
  Sha256 h;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h.update(buf, static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

void RunManifest::add_input(const std::filesystem::path& path) { inputs[path.string()] = sha256_file(path); }

void RunManifest::add_input_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) add_input(f);
}

void RunManifest::stamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  timestamp = buf;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["subcommand"] = subcommand;
  j["flags"] = flags;
  j["inputs"] = inputs;
  j["seed"] = seed ? nlohmann::ordered_json(*seed) : nlohmann::ordered_json(nullptr);
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

OutputSet::~OutputSet() {
  if (done_) return;
  std::error_code ec;
  for (const auto& [tmp, final_path] : staged_) std::filesystem::remove(tmp, ec);
}

void OutputSet::write(const std::string& name, std::string_view bytes) {
  const auto final_path = dir_ / name;
  auto tmp = final_path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to " + tmp.string());
  }
  staged_.emplace_back(tmp, final_path);
}

void OutputSet::commit() {
  for (const auto& [tmp, final_path] : staged_) {
    std::filesystem::rename(tmp, final_path);
    committed_.push_back(final_path);
  }
  staged_.clear();
  done_ = true;
}

}  // namespace phonostad
