#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace vxm::io {

/// One float cell rendered with 17 significant digits.
std::string format_double(double x);

/// Comma-separated table with a header row, LF line endings, floats at
/// 17 significant digits.
struct CsvWriter {
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);
    const std::string& text() const { return buf_; }
    void write(const std::filesystem::path& path) const;

  private:
    std::string buf_;
    std::size_t columns_;
};

/// FNV-1a over the file bytes; the manifest's content hash.
std::uint64_t fnv1a(const std::string& bytes);
std::string hash_hex(const std::string& bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace vxm::io
