#include "wids/csv.hpp"

#include "wids/types.hpp"

namespace wids {

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {  // escaped quote
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty()) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string join_csv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

CsvReader::CsvReader(const std::filesystem::path& path)
    : path_(path.string()), in_(path) {
  if (!in_) throw IoError("cannot open '" + path_ + "' for reading");
  std::string line;
  while (read_line(line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      comments_.push_back(line);
      continue;
    }
    header_ = split_csv_line(line);
    return;
  }
  throw SchemaError("'" + path_ + "' has no header row");
}

bool CsvReader::read_line(std::string& line) {
  if (!std::getline(in_, line)) return false;
  ++line_;
  strip_cr(line);
  return true;
}

bool CsvReader::next(std::vector<std::string>& fields) {
  std::string line;
  while (read_line(line)) {
    if (line.empty()) continue;
    fields = split_csv_line(line);
    row_line_ = line_;
    return true;
  }
  if (in_.bad()) throw IoError("read error on '" + path_ + "'");
  return false;
}

CsvWriter::CsvWriter(const std::filesystem::path& path)
    : path_(path.string()), out_(path) {
  if (!out_) throw IoError("cannot open '" + path_ + "' for writing");
}

void CsvWriter::write_comment(const std::string& text) {
  out_ << "# " << text << '\n';
}

void CsvWriter::write_row(const std::vector<std::string>& fields) {
  out_ << join_csv(fields) << '\n';
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw IoError("write error on '" + path_ + "'");
  out_.close();
}

}  // namespace wids
