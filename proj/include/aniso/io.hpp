#pragma once

#include <string>
#include <vector>

#include "aniso/variation.hpp"

namespace aniso {

// Renders a CSV table: '.' decimal point, ',' separator, mandatory header.
// Cells are written verbatim, so numeric cells should be preformatted with
// fmt_g to keep output locale-independent and byte-stable.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Splits CSV text produced by csv_table back into rows of cells. The first
// row is the header. Throws config_error on ragged rows.
std::vector<std::vector<std::string>> csv_parse(const std::string& text);

// Serializes a grid field as `cell,x,y,value` rows for external plotting.
std::string field_to_csv(const GridField& u);

// Reads a field written by field_to_csv back onto the given raster. The row
// count and cell indices must match the raster exactly.
GridField field_from_csv(RasterPtr grid, const std::string& text);

// Artifact stem `<study>_<domain>_<norm>_<beta>` built from describe() tags;
// beta is rendered with %g so `-0.5` stays short and sign-explicit.
std::string study_file_stem(const std::string& study, const std::string& domain_tag,
                            const std::string& norm_tag, double beta);

// Whole-file text IO; throws std::runtime_error when the file cannot be
// opened. write_text_file creates parent directories as needed.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
void append_text_file(const std::string& path, const std::string& content);

}  // namespace aniso
