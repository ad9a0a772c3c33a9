#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cslattice::cli {

// 17 significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double value);

// Shortest round-trip form, used inside file names (t = 76.4 -> "76.4").
std::string format_label(double value);

// Row-oriented CSV assembled in memory and written in one go.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_comment(std::string_view line);
  // Cells are pre-formatted; the count must match the header.
  void add_row(const std::vector<std::string>& cells);

  std::size_t rows() const noexcept { return rows_; }
  std::string str() const { return comments_ + header_ + body_; }
  void write(const std::filesystem::path& path) const;

 private:
  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string comments_;
  std::string header_;
  std::string body_;
};

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// A file written by a command, relative to the output root.
struct EmittedFile {
  std::string path;
  bool partial = false;
};

struct ManifestInput {
  std::string command;
  nlohmann::json config;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
  std::string status;
  nlohmann::json runs = nlohmann::json::array();
  std::vector<EmittedFile> files;
};

// Writes <root>/manifest.json listing every emitted file with its checksum
// and size. Returns the manifest document.
nlohmann::json write_manifest(const std::filesystem::path& root, const ManifestInput& input);

// Creates the directory (and parents); throws ConfigError when that fails.
void ensure_directory(const std::filesystem::path& dir);

}  // namespace cslattice::cli
