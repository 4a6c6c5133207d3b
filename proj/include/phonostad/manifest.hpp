#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace phonostad {

std::string_view toolkit_version() noexcept;

/// Lowercase hex SHA-256 of a file's bytes. Throws LoadError.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> flags;
  std::map<std::string, std::string> inputs;  // path -> sha256
  std::optional<std::uint64_t> seed;
  std::string version{toolkit_version()};
  std::string timestamp;  // UTC, ISO 8601

  /// Hashes the file and records it under its path as given.
  void add_input(const std::filesystem::path& path);
  /// Hashes every regular file below dir, in sorted path order.
  void add_input_dir(const std::filesystem::path& dir);
  void stamp();
  std::string to_json() const;
};

/// Files written to temporary siblings and renamed into place on commit().
/// Anything staged but not committed is removed on destruction.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  ~OutputSet();
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  /// Writes bytes to a temporary file for name (relative to the directory).
  void write(const std::string& name, std::string_view bytes);
  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::vector<std::filesystem::path> committed() const { return committed_; }
  void commit();

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> staged_;  // temp, final
  std::vector<std::filesystem::path> committed_;
  bool done_ = false;
};

}  // namespace phonostad
