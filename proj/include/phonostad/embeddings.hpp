#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace phonostad {

/// Hidden-state matrix for one layer depth: one row per prompt.
///
/// On disk (little endian, packed):
///   offset  0  char[8]  magic "PHOEMB01"
///   offset  8  u16      version (1)
///   offset 10  u32      rows
///   offset 14  u32      cols
///   offset 18  u8       layer depth in percent
///   offset 19  u8[13]   reserved, zero
///   offset 32  f32[rows*cols] row-major payload
/// Metadata lives in a JSON sidecar: "<file stem>.json" next to the matrix,
/// or "sidecar.json" in the same directory, with keys model_name,
/// prompt_template and ids.
struct EmbeddingMatrix {
  Eigen::MatrixXd data;
  int layer_depth = 0;
  std::string model_name;
  std::string prompt_template;
  std::vector<std::string> ids;

  Eigen::Index rows() const noexcept { return data.rows(); }
  Eigen::Index cols() const noexcept { return data.cols(); }
};

inline constexpr char kEmbeddingMagic[8] = {'P', 'H', 'O', 'E', 'M', 'B', '0', '1'};
inline constexpr std::uint16_t kEmbeddingVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderSize = 32;

/// Throws LoadError on bad magic/version, size mismatch, non-finite cells
/// (naming row and column) or a sidecar whose id list has the wrong length.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

/// Writes the matrix file only (values rounded to float32).
void save_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m);

/// Writes "sidecar.json" for a directory of matrices.
void save_sidecar(const std::filesystem::path& dir, const std::string& model_name, const std::string& prompt_template,
                  const std::vector<std::string>& ids);

/// All "*.phoemb" files in a directory, sorted by layer depth.
std::vector<EmbeddingMatrix> load_embedding_dir(const std::filesystem::path& dir);

/// I.i.d. N(0, 1) control matrix tagged "control-random".
EmbeddingMatrix random_embeddings(std::size_t n, std::size_t d, std::uint64_t seed);

enum class LabelKind { binary, scalar, vector8 };

std::string to_string(LabelKind k);

/// Row-aligned labels: n x 1 for binary/scalar, n x 8 for vector8.
struct LabelSet {
  LabelKind kind = LabelKind::binary;
  Eigen::MatrixXd values;
  std::vector<std::string> ids;

  Eigen::Index size() const noexcept { return values.rows(); }
};

/// Binary: fair coin. Scalar: uniform integer in [0, 8]. Vector8: each entry uniform in [0, 39].
LabelSet random_labels(LabelKind kind, std::size_t n, std::uint64_t seed);

/// Reorders labels to follow the matrix ids. Throws AlignmentError when the
/// id sets differ; with no matrix ids the row counts must agree.
LabelSet align_labels(const LabelSet& labels, const std::vector<std::string>& matrix_ids, Eigen::Index rows);

}  // namespace phonostad
