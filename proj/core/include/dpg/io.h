#ifndef DPG_IO_H_
#define DPG_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "dpg/ensemble.h"

namespace dpg {

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// CSV with a header row of feature names and an optional trailing "label"
// column. Labels become class indices in first-appearance order. Numbers are
// parsed independently of the C locale.
Dataset ParseCsv(std::string_view text);
Dataset LoadCsv(const std::filesystem::path& path);

// Inverse of ParseCsv; numbers use the shortest round-trip form.
std::string DatasetToCsv(const Dataset& data);

// Shortest decimal string that parses back to exactly `value`.
std::string ShortestDouble(double value);

// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string CsvField(std::string_view field);

}  // namespace dpg

#endif  // DPG_IO_H_
