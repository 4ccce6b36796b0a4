#include "tglasso/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

namespace tglasso {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                           : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool try_parse_double(std::string_view text, double* out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), *out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return content;
}

std::vector<std::string_view> lines_of(std::string_view content) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    const auto line = trim(content.substr(start, end - start));
    if (!line.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

Index parse_index(std::string_view text, const fs::path& path) {
  double v = 0.0;
  if (!try_parse_double(text, &v) || v < 0.0 || v != std::floor(v)) {
    throw InvalidParams("bad node index '" + std::string(text) + "' in " + path.string());
  }
  return static_cast<Index>(v);
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

double parse_double(std::string_view text) {
  double v = 0.0;
  if (!try_parse_double(text, &v)) {
    throw InvalidParams("not a number: '" + std::string(text) + "'");
  }
  return v;
}

DenseMatrix read_matrix_csv(const fs::path& path) {
  const std::string content = read_file(path);
  auto lines = lines_of(content);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto fields = split_fields(lines[k]);
    std::vector<double> row(fields.size());
    bool numeric = true;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (!try_parse_double(fields[j], &row[j])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (k == 0) continue;  // header
      throw InvalidParams("non-numeric field on line " + std::to_string(k + 1) + " of " +
                          path.string());
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidParams("ragged row on line " + std::to_string(k + 1) + " of " + path.string());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return DenseMatrix(0, 0);
  DenseMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return m;
}

std::string matrix_csv(const DenseMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 24);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const fs::path& path, const DenseMatrix& m) {
  atomic_write(path, matrix_csv(m));
}

std::string edges_csv(const EdgeSet& edges, const SymMatrix& theta) {
  std::string out;
  for (const auto& [i, j] : edges) {
    out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(theta(i, j)) + '\n';
  }
  return out;
}

std::string edges_csv(const EdgeSet& edges) {
  std::string out;
  for (const auto& [i, j] : edges) {
    out += std::to_string(i) + ',' + std::to_string(j) + ",1\n";
  }
  return out;
}

EdgeSet read_edges_csv(const fs::path& path, Index p) {
  const std::string content = read_file(path);
  std::vector<std::pair<Index, Index>> pairs;
  Index max_index = -1;
  const auto lines = lines_of(content);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto fields = split_fields(lines[k]);
    double probe = 0.0;
    if (k == 0 && !try_parse_double(fields.front(), &probe)) continue;  // header
    if (fields.size() < 2) throw InvalidParams("edge line needs i,j in " + path.string());
    const Index i = parse_index(fields[0], path);
    const Index j = parse_index(fields[1], path);
    max_index = std::max({max_index, i, j});
    pairs.emplace_back(i, j);
  }
  EdgeSet out(p >= 0 ? p : max_index + 1);
  for (const auto& [i, j] : pairs) out.add(i, j);
  return out;
}

std::string labels_csv(const std::vector<bool>& labels) {
  std::string out;
  out.reserve(labels.size() * 2);
  for (bool b : labels) out += b ? "1\n" : "0\n";
  return out;
}

std::vector<bool> read_labels_csv(const fs::path& path) {
  const std::string content = read_file(path);
  std::vector<bool> out;
  for (auto line : lines_of(content)) {
    if (line == "1") {
      out.push_back(true);
    } else if (line == "0") {
      out.push_back(false);
    } else {
      throw InvalidParams("labels must be 0 or 1 in " + path.string());
    }
  }
  return out;
}

std::string vector_csv(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += format_double(v) + '\n';
  return out;
}

std::uint64_t digest_bytes(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t digest_file(const fs::path& path) { return digest_bytes(read_file(path)); }

std::string digest_hex(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

void atomic_write(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

void Manifest::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

void Manifest::set(std::string key, double value) { set(std::move(key), format_double(value)); }

void Manifest::set_int(std::string key, long long value) {
  set(std::move(key), std::to_string(value));
}

void Manifest::add_digest(const std::string& prefix, const fs::path& file) {
  set(prefix + "." + file.filename().string(), digest_hex(digest_file(file)));
}

std::string Manifest::render() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + '=' + v + '\n';
  return out;
}

void Manifest::write(const fs::path& path) const { atomic_write(path, render()); }

Manifest Manifest::parse(std::string_view text) {
  Manifest m;
  for (auto line : lines_of(text)) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InvalidParams("manifest line without '='");
    m.set(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
  }
  return m;
}

}  // namespace tglasso
