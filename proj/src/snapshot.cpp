#include "snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "error.hpp"

namespace nlcflow {

namespace {

constexpr const char* kMagic = "NLCF1";

std::string dim_token(int n, int base, const char* sym) {
  if (n == base) return sym;
  if (n == base + 1) return std::string(sym) + "+1";
  return std::to_string(n);
}

int parse_dim(const std::string& tok, const GridSpec& g) {
  if (tok == "nx") return g.nx;
  if (tok == "ny") return g.ny;
  if (tok == "nx+1") return g.nx + 1;
  if (tok == "ny+1") return g.ny + 1;
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used == tok.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kIoError, "bad snapshot dimension '" + tok + "'");
}

void put_le(std::ostream& os, double x) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  unsigned char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<unsigned char>(bits >> (8 * k));
  os.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw Error(ErrorCode::kIoError, "truncated snapshot");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

}  // namespace

void Snapshot::add(const std::string& name, const Array2D& a) {
  fields.push_back({name, a.cols(), a.rows(), a.data()});
}

void Snapshot::add_values(const std::string& name, std::vector<double> values) {
  const int n = static_cast<int>(values.size());
  fields.push_back({name, n, 1, std::move(values)});
}

bool Snapshot::has(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return true;
  return false;
}

const SnapshotField& Snapshot::get(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return f;
  throw Error(ErrorCode::kIoError, "snapshot has no field '" + name + "'");
}

Array2D Snapshot::array(const std::string& name) const {
  const SnapshotField& f = get(name);
  Array2D a(f.cols, f.rows);
  a.data() = f.data;
  return a;
}

void write_snapshot(std::ostream& os, const Snapshot& snap) {
  char buf[128];
  os << kMagic << '\n';
  std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g %zu\n", snap.grid.nx, snap.grid.ny, snap.grid.lx,
                snap.grid.ly, snap.fields.size());
  os << buf;
  for (const auto& f : snap.fields) {
    os << f.name << " (" << dim_token(f.cols, snap.grid.nx, "nx") << ")x("
       << dim_token(f.rows, snap.grid.ny, "ny") << ")\n";
    for (double x : f.data) put_le(os, x);
  }
  if (!os) throw Error(ErrorCode::kIoError, "failed writing snapshot");
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw Error(ErrorCode::kIoError, "not an NLCF1 snapshot");
  if (!std::getline(is, line)) throw Error(ErrorCode::kIoError, "missing snapshot header");
  Snapshot snap;
  std::size_t nfields = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> snap.grid.nx >> snap.grid.ny >> snap.grid.lx >> snap.grid.ly >> nfields))
      throw Error(ErrorCode::kIoError, "bad snapshot header '" + line + "'");
  }
  for (std::size_t k = 0; k < nfields; ++k) {
    if (!std::getline(is, line)) throw Error(ErrorCode::kIoError, "missing field name line");
    const auto sp = line.rfind(' ');
    const auto x = line.find(")x(", sp == std::string::npos ? 0 : sp);
    if (sp == std::string::npos || x == std::string::npos || line.size() < x + 4 ||
        line[sp + 1] != '(' || line.back() != ')')
      throw Error(ErrorCode::kIoError, "bad field name line '" + line + "'");
    SnapshotField f;
    f.name = line.substr(0, sp);
    f.cols = parse_dim(line.substr(sp + 2, x - sp - 2), snap.grid);
    f.rows = parse_dim(line.substr(x + 3, line.size() - x - 4), snap.grid);
    f.data.resize(static_cast<std::size_t>(f.cols) * f.rows);
    for (double& v : f.data) v = get_le(is);
    snap.fields.push_back(std::move(f));
  }
  return snap;
}

void save_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::kIoError, "cannot open " + path + " for writing");
  write_snapshot(os, snap);
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return read_snapshot(is);
}

}  // namespace nlcflow
