#include "phonostad/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <unordered_map>

#include "phonostad/error.hpp"
#include "phonostad/rng.hpp"
#include "phonostad/util.hpp"

namespace phonostad {

namespace {

static_assert(std::endian::native == std::endian::little, "matrix I/O assumes a little-endian host");

template <typename T>
T read_le(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

template <typename T>
void write_le(unsigned char* p, T v) {
  std::memcpy(p, &v, sizeof v);
}

void apply_sidecar(EmbeddingMatrix& m, const std::filesystem::path& path) {
  auto sidecar = path;
  sidecar.replace_extension(".json");
  if (!std::filesystem::exists(sidecar)) sidecar = path.parent_path() / "sidecar.json";
  if (!std::filesystem::exists(sidecar)) return;
  try {
    const auto j = nlohmann::json::parse(read_file(sidecar));
    m.model_name = j.value("model_name", "");
    m.prompt_template = j.value("prompt_template", "");
    if (j.contains("ids")) m.ids = j.at("ids").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(sidecar.string() + ": " + e.what());
  }
  if (!m.ids.empty() && static_cast<Eigen::Index>(m.ids.size()) != m.rows()) {
    throw LoadError(sidecar.string() + ": " + std::to_string(m.ids.size()) + " ids for " +
                    std::to_string(m.rows()) + " rows");
  }
}

}  // namespace

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (bytes.size() < kEmbeddingHeaderSize) throw LoadError(path.string() + ": file shorter than the header");
  if (std::memcmp(p, kEmbeddingMagic, sizeof kEmbeddingMagic) != 0) throw LoadError(path.string() + ": bad magic");
  const auto version = read_le<std::uint16_t>(p + 8);
  if (version != kEmbeddingVersion) {
    throw LoadError(path.string() + ": unsupported version " + std::to_string(version));
  }
  const auto rows = read_le<std::uint32_t>(p + 10);
  const auto cols = read_le<std::uint32_t>(p + 14);
  const auto depth = p[18];
  if (depth > 100) throw LoadError(path.string() + ": layer depth " + std::to_string(depth) + " exceeds 100");
  const auto expected = kEmbeddingHeaderSize + std::size_t{rows} * cols * sizeof(float);
  if (bytes.size() != expected) {
    throw LoadError(path.string() + ": payload is " + std::to_string(bytes.size() - kEmbeddingHeaderSize) +
                    " bytes, header implies " + std::to_string(expected - kEmbeddingHeaderSize));
  }
  EmbeddingMatrix m;
  m.layer_depth = depth;
  m.data.resize(rows, cols);
  const auto* payload = p + kEmbeddingHeaderSize;
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (std::uint32_t c = 0; c < cols; ++c) {
      const float v = read_le<float>(payload + (std::size_t{r} * cols + c) * sizeof(float));
      if (!std::isfinite(v)) {
        throw LoadError(path.string() + ": non-finite value at row " + std::to_string(r) + ", col " + std::to_string(c));
      }
      m.data(r, c) = v;
    }
  }
  apply_sidecar(m, path);
  return m;
}

void save_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m) {
  if (m.layer_depth < 0 || m.layer_depth > 100) throw RangeError("layer depth must be within [0, 100]");
  std::vector<unsigned char> buf(kEmbeddingHeaderSize + static_cast<std::size_t>(m.rows() * m.cols()) * sizeof(float), 0);
  std::memcpy(buf.data(), kEmbeddingMagic, sizeof kEmbeddingMagic);
  write_le<std::uint16_t>(buf.data() + 8, kEmbeddingVersion);
  write_le<std::uint32_t>(buf.data() + 10, static_cast<std::uint32_t>(m.rows()));
  write_le<std::uint32_t>(buf.data() + 14, static_cast<std::uint32_t>(m.cols()));
  buf[18] = static_cast<unsigned char>(m.layer_depth);
  auto* payload = buf.data() + kEmbeddingHeaderSize;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      write_le<float>(payload + static_cast<std::size_t>(r * m.cols() + c) * sizeof(float), static_cast<float>(m.data(r, c)));
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

void save_sidecar(const std::filesystem::path& dir, const std::string& model_name, const std::string& prompt_template,
                  const std::vector<std::string>& ids) {
  nlohmann::json j;
  j["model_name"] = model_name;
  j["prompt_template"] = prompt_template;
  j["ids"] = ids;
  std::ofstream out(dir / "sidecar.json", std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / "sidecar.json").string());
  out << j.dump(2) << '\n';
}

std::vector<EmbeddingMatrix> load_embedding_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw LoadError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".phoemb") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw LoadError("no .phoemb files in " + dir.string());
  std::vector<EmbeddingMatrix> out;
  for (const auto& f : files) out.push_back(load_embeddings(f));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.layer_depth < b.layer_depth; });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].layer_depth == out[i - 1].layer_depth) {
      throw LoadError(dir.string() + ": two matrices for depth " + std::to_string(out[i].layer_depth));
    }
  }
  return out;
}

EmbeddingMatrix random_embeddings(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0 || d == 0) throw DomainError("random embeddings need n, d > 0");
  EmbeddingMatrix m;
  m.model_name = "control-random";
  m.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  Rng rng(derive_seed(seed, "random-embeddings"));
  for (Eigen::Index r = 0; r < m.data.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.data.cols(); ++c) m.data(r, c) = rng.normal();
  }
  return m;
}

std::string to_string(LabelKind k) {
  switch (k) {
    case LabelKind::binary: return "binary";
    case LabelKind::scalar: return "scalar";
    case LabelKind::vector8: return "vector8";
  }
  return "?";
}

LabelSet random_labels(LabelKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("random labels need n > 0");
  LabelSet out;
  out.kind = kind;
  const Eigen::Index width = kind == LabelKind::vector8 ? 8 : 1;
  out.values.resize(static_cast<Eigen::Index>(n), width);
  Rng rng(derive_seed(seed, "random-labels/" + to_string(kind)));
  const std::uint64_t bound = kind == LabelKind::binary ? 2 : kind == LabelKind::scalar ? 9 : 40;
  for (Eigen::Index r = 0; r < out.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < width; ++c) out.values(r, c) = static_cast<double>(rng.below(bound));
  }
  return out;
}

LabelSet align_labels(const LabelSet& labels, const std::vector<std::string>& matrix_ids, Eigen::Index rows) {
  if (matrix_ids.empty() || labels.ids.empty()) {
    if (labels.size() != rows) {
      throw AlignmentError(std::to_string(labels.size()) + " labels for a matrix with " + std::to_string(rows) + " rows");
    }
    return labels;
  }
  std::unordered_map<std::string, Eigen::Index> where;
  for (Eigen::Index i = 0; i < labels.size(); ++i) where.emplace(labels.ids[static_cast<std::size_t>(i)], i);
  if (static_cast<Eigen::Index>(matrix_ids.size()) != labels.size()) {
    throw AlignmentError(std::to_string(labels.size()) + " labels for " + std::to_string(matrix_ids.size()) + " matrix rows");
  }
  LabelSet out;
  out.kind = labels.kind;
  out.values.resize(labels.values.rows(), labels.values.cols());
  out.ids = matrix_ids;
  for (std::size_t r = 0; r < matrix_ids.size(); ++r) {
    const auto it = where.find(matrix_ids[r]);
    if (it == where.end()) throw AlignmentError("matrix row id '" + matrix_ids[r] + "' has no label");
    out.values.row(static_cast<Eigen::Index>(r)) = labels.values.row(it->second);
  }
  return out;
}

}  // namespace phonostad
