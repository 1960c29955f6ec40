#pragma once

#include <iosfwd>
#include <string>

#include "parmax/grid.hpp"

namespace parmax {

/// Self-describing text record for a cylinder grid: one "key = value"
/// line per parameter under a version header. Round-trips bit-exactly.
void write_grid_record(std::ostream& out, const Cylinder& grid);
Cylinder read_grid_record(std::istream& in);

void write_grid_record_file(const std::string& path, const Cylinder& grid);
Cylinder read_grid_record_file(const std::string& path);

/// CSV with columns (index, x1[, x2], t, value), one row per node in flat
/// order. The grid itself travels separately as a grid record.
void write_grid_function_csv(std::ostream& out, const GridFunction& u);
GridFunction read_grid_function_csv(std::istream& in, const Cylinder& grid);

void write_grid_function_csv_file(const std::string& path, const GridFunction& u);
GridFunction read_grid_function_csv_file(const std::string& path, const Cylinder& grid);

}  // namespace parmax
