#include "cslattice/cli/output.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <memory>

#include "cslattice/errors.hpp"

#ifndef CSLATTICE_VERSION
#define CSLATTICE_VERSION "unknown"
#endif

namespace cslattice::cli {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

std::string format_label(double value) { return fmt::format("{}", value); }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(columns.size()) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) header_ += ',';
    header_ += columns[i];
  }
  header_ += '\n';
}

void CsvTable::add_comment(std::string_view line) {
  comments_ += "# ";
  comments_ += line;
  comments_ += '\n';
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw ShapeError(fmt::format("csv row has {} cells, header has {}", cells.size(), columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i];
  }
  body_ += '\n';
  ++rows_;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << comments_ << header_ << body_;
  if (!out) throw ConfigError("write failed for " + path.string());
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string() + " for checksumming");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    const auto got = in.gcount();
    if (got > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(got));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

namespace {

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(tp.time_since_epoch()).count() % 1000;
  return fmt::format("{:%Y-%m-%dT%H:%M:%S}.{:03d}Z", fmt::gmtime(std::chrono::system_clock::to_time_t(tp)), ms);
}

}  // namespace

nlohmann::json write_manifest(const std::filesystem::path& root, const ManifestInput& input) {
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : input.files) {
    const auto full = root / f.path;
    files.push_back({{"path", f.path},
                     {"sha256", sha256_file(full)},
                     {"bytes", std::filesystem::file_size(full)},
                     {"partial", f.partial}});
  }
  const double wall = std::chrono::duration<double>(input.finished - input.started).count();
  nlohmann::json manifest{
      {"artifact", "cslattice"},
      {"version", CSLATTICE_VERSION},
      {"command", input.command},
      {"status", input.status},
      {"started_at", iso_utc(input.started)},
      {"finished_at", iso_utc(input.finished)},
      {"wall_seconds", wall},
      {"config", input.config},
      {"runs", input.runs},
      {"files", files},
  };
  std::ofstream out(root / "manifest.json", std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + (root / "manifest.json").string());
  out << manifest.dump(2) << '\n';
  return manifest;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  }
}

}  // namespace cslattice::cli
