#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace wids {

// Minimal comma-separated reader for the capture exports and artifact files
// this pipeline exchanges. Double-quoted fields may contain commas (capture
// exports quote multi-reading columns); "" inside quotes is a literal quote.
// Handles CRLF line endings and skips blank lines. Lines starting with '#'
// before the header are collected as comments (artifact files use one as a
// marker line).
class CsvReader {
 public:
  explicit CsvReader(const std::filesystem::path& path);

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::string>& leading_comments() const { return comments_; }

  // Reads the next data row; returns false at end of file.
  bool next(std::vector<std::string>& fields);

  // 1-based file line of the row most recently returned by next().
  std::size_t line_number() const { return row_line_; }

  const std::string& path() const { return path_; }

 private:
  bool read_line(std::string& line);

  std::string path_;
  std::ifstream in_;
  std::vector<std::string> header_;
  std::vector<std::string> comments_;
  std::size_t line_ = 0;
  std::size_t row_line_ = 0;
};

// Streaming writer companion to CsvReader.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void write_comment(const std::string& text);
  void write_row(const std::vector<std::string>& fields);

  // Flushes and verifies the stream; throws IoError on failure.
  void close();

 private:
  std::string path_;
  std::ofstream out_;
};

std::string join_csv(const std::vector<std::string>& fields);
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace wids
