#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fields.hpp"

namespace nlcflow {

/// Binary field snapshot:
///
///   "NLCF1\n"
///   "<nx> <ny> <Lx> <Ly> <nfields>\n"
///   for each field: "<name> (<cols>)x(<rows>)\n" followed by cols*rows little-endian
///   IEEE-754 doubles, row-major (rows outer).
///
/// <cols>/<rows> are written symbolically (nx, nx+1, ny, ny+1) when they match the grid,
/// and as integers otherwise.
struct SnapshotField {
  std::string name;
  int cols = 0;
  int rows = 0;
  std::vector<double> data;
};

struct Snapshot {
  GridSpec grid;
  std::vector<SnapshotField> fields;

  void add(const std::string& name, const Array2D& a);
  void add_values(const std::string& name, std::vector<double> values);
  const SnapshotField& get(const std::string& name) const;
  Array2D array(const std::string& name) const;
  bool has(const std::string& name) const;
};

void write_snapshot(std::ostream& os, const Snapshot& snap);
Snapshot read_snapshot(std::istream& is);

void save_snapshot(const std::string& path, const Snapshot& snap);
Snapshot load_snapshot(const std::string& path);

}  // namespace nlcflow
