#pragma once

// Flat-file formats shared by the command-line tool.
//
//   matrix   no header, comma separated, one row per line, %.17g values
//   edges    "i,j,value" per line, 0-based, i < j
//   labels   one 0/1 per line (1 = outlier)
//   vector   one value per line
//   manifest "key=value" per line
//
// Every writer replaces its target atomically (temp file + rename).

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tglasso/edge_set.hpp"

namespace tglasso {

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string format_double(double value);

/// Parses a full-precision double; throws InvalidParams on malformed text.
double parse_double(std::string_view text);

/// Reads a numeric CSV. A first line that does not parse as numbers is
/// treated as a header and skipped. Throws IoError / InvalidParams.
DenseMatrix read_matrix_csv(const std::filesystem::path& path);
std::string matrix_csv(const DenseMatrix& m);
void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m);

/// Edges of theta with their values.
std::string edges_csv(const EdgeSet& edges, const SymMatrix& theta);
/// Edge list with an implicit value column of 1.
std::string edges_csv(const EdgeSet& edges);
/// Reads "i,j[,value]" lines. Node count is p, or max index + 1 when p < 0.
EdgeSet read_edges_csv(const std::filesystem::path& path, Index p = -1);

std::string labels_csv(const std::vector<bool>& labels);
std::vector<bool> read_labels_csv(const std::filesystem::path& path);

std::string vector_csv(const std::vector<double>& values);

/// 64-bit FNV-1a hash.
std::uint64_t digest_bytes(std::string_view bytes);
std::uint64_t digest_file(const std::filesystem::path& path);
std::string digest_hex(std::uint64_t digest);

/// Writes content to path through a temporary sibling and a rename.
void atomic_write(const std::filesystem::path& path, std::string_view content);

/// Ordered key=value record written next to a command's outputs.
class Manifest {
public:
  void set(std::string key, std::string value);
  void set(std::string key, double value);
  void set_int(std::string key, long long value);

  /// Records "<prefix>.<file name>" = digest of the file.
  void add_digest(const std::string& prefix, const std::filesystem::path& file);

  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }
  [[nodiscard]] std::string render() const;
  void write(const std::filesystem::path& path) const;

  /// Parses render() output.
  static Manifest parse(std::string_view text);

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace tglasso
