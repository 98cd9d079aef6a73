#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rct::io {

// Shortest text that parses back to the same double (%.17g is enough to
// round-trip; parse+reformat is a fixed point, so files re-emit bytewise).
std::string format_double(double v);

// Write content to path atomically: temp file with .partial suffix, then
// rename. A crashed or failed write leaves only the .partial file behind.
void atomic_write_text(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

// CSV with `# key=value` metadata lines, one header row, string cells.
// Cells hold already-formatted text so read->write reproduces files exactly.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace rct::io
