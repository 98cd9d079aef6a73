#include "rct/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rct/errors.hpp"

namespace rct::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  const std::string partial = path + ".partial";
  {
    std::ofstream out(partial, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + partial);
    out << content;
    if (!out.good()) throw IoFailure("short write to " + partial);
  }
  std::error_code ec;
  std::filesystem::rename(partial, path, ec);
  if (ec) throw IoFailure("rename to " + path + " failed: " + ec.message());
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string render_csv(const CsvTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata) out << "# " << key << "=" << value << "\n";
  for (size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      std::string body = line.substr(2);
      auto eq = body.find('=');
      if (eq == std::string::npos) throw IoFailure("metadata line without '='");
      table.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (line.empty()) continue;
    if (!header_seen) {
      table.header = split(line);
      header_seen = true;
    } else {
      table.rows.push_back(split(line));
    }
  }
  if (!header_seen) throw IoFailure("csv has no header row");
  return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
  atomic_write_text(path, render_csv(table));
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path)); }

}  // namespace rct::io
