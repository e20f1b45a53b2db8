#include "aniso/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "aniso/util.hpp"

namespace aniso {

namespace {

std::string join_cells(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

}  // namespace

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  if (header.empty()) throw config_error("csv_table: header row is mandatory");
  std::string out = join_cells(header);
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw config_error("csv_table: row width " + std::to_string(row.size()) +
                         " does not match header width " + std::to_string(header.size()));
    out += join_cells(row);
    out += '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> csv_parse(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw config_error("csv_parse: no header row");
  for (const auto& row : rows)
    if (row.size() != rows.front().size())
      throw config_error("csv_parse: ragged row width");
  return rows;
}

std::string field_to_csv(const GridField& u) {
  const auto& g = *u.grid;
  std::vector<std::vector<std::string>> rows;
  rows.reserve(u.v.size());
  for (int k = 0; k < g.inside_count(); ++k)
    rows.push_back({std::to_string(k), fmt_g(g.cell_x(k)), fmt_g(g.cell_y(k)),
                    fmt_g(u.v[static_cast<std::size_t>(k)])});
  return csv_table({"cell", "x", "y", "value"}, rows);
}

GridField field_from_csv(RasterPtr grid, const std::string& text) {
  const auto rows = csv_parse(text);
  if (rows.front() != std::vector<std::string>{"cell", "x", "y", "value"})
    throw config_error("field_from_csv: unexpected header");
  GridField u(grid);
  if (rows.size() - 1 != u.v.size())
    throw config_error("field_from_csv: row count does not match raster");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const long k = std::stol(rows[i][0]);
    if (k < 0 || static_cast<std::size_t>(k) >= u.v.size())
      throw config_error("field_from_csv: cell index out of range");
    u.v[static_cast<std::size_t>(k)] = std::stod(rows[i][3]);
  }
  return u;
}

std::string study_file_stem(const std::string& study, const std::string& domain_tag,
                            const std::string& norm_tag, double beta) {
  char b[32];
  std::snprintf(b, sizeof b, "%g", beta);
  return study + "_" + domain_tag + "_" + norm_tag + "_" + b;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void append_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open for appending: " + path);
  out << content;
  if (!out) throw std::runtime_error("append failed: " + path);
}

}  // namespace aniso
