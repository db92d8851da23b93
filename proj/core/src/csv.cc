#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "dpg/errors.h"
#include "dpg/io.h"

namespace dpg {
namespace {

// Splits one CSV record. Handles double-quoted fields with "" escapes.
std::vector<std::string> SplitRecord(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw DataError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw DataError("cannot rename '" + tmp.string() + "' to '" +
                    path.string() + "': " + ec.message());
  }
}

Dataset ParseCsv(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw DataError("CSV has no header row");

  std::vector<std::string> header = SplitRecord(lines[0]);
  for (auto& h : header) h = std::string(Trim(h));
  const bool has_label = header.back() == "label";
  if (has_label) header.pop_back();

  Dataset data;
  data.features = FeatureSchema::Numeric(header);
  std::unordered_map<std::string, int> label_index;
  std::vector<double> row(header.size());
  for (std::size_t r = 1; r < lines.size(); ++r) {
    if (Trim(lines[r]).empty()) continue;
    const auto fields = SplitRecord(lines[r]);
    const std::size_t expected = header.size() + (has_label ? 1 : 0);
    if (fields.size() != expected) {
      throw DataError("line " + std::to_string(r + 1) + ": expected " +
                      std::to_string(expected) + " fields, found " +
                      std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string_view cell = Trim(fields[c]);
      double v = 0.0;
      const char* end = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (cell.empty() || ec != std::errc() || ptr != end) {
        throw DataError("cannot parse '" + std::string(cell) + "' at row " +
                        std::to_string(r) + ", column " +
                        std::to_string(c + 1) + " ('" + header[c] + "')");
      }
      row[c] = v;
    }
    int label = -1;
    if (has_label) {
      const std::string name(Trim(fields.back()));
      auto [it, inserted] =
          label_index.emplace(name, static_cast<int>(data.class_labels.size()));
      if (inserted) data.class_labels.push_back(name);
      label = it->second;
    }
    data.AddRow(row, label);
  }
  return data;
}

Dataset LoadCsv(const std::filesystem::path& path) {
  return ParseCsv(ReadFile(path));
}

std::string ShortestDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string DatasetToCsv(const Dataset& data) {
  std::string out;
  const bool labeled = !data.labels.empty();
  for (std::size_t c = 0; c < data.num_features(); ++c) {
    if (c) out += ',';
    out += CsvField(data.features.names[c]);
  }
  if (labeled) out += ",label";
  out += '\n';
  for (std::size_t r = 0; r < data.num_rows; ++r) {
    const auto row = data.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += ShortestDouble(row[c]);
    }
    if (labeled) out += ',' + CsvField(data.class_labels[data.labels[r]]);
    out += '\n';
  }
  return out;
}

}  // namespace dpg
