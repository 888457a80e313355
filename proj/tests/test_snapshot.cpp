#include <cstring>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "error.hpp"
#include "snapshot.hpp"
#include "support.hpp"

using namespace nlcflow;

namespace {

Snapshot sample_snapshot() {
  const GridSpec g = GridSpec::make(5, 4, 1.25, 0.75);
  std::mt19937 rng(3);
  Snapshot s;
  s.grid = g;
  s.add("rho", testing::random_scalar(g, rng).values);
  const MacVelocity w = testing::random_velocity(g, rng);
  s.add("u", w.u);
  s.add("v", w.v);
  s.add_values("meta", {0.5, -1.0, std::numeric_limits<double>::infinity(), 1e-310});
  return s;
}

}  // namespace

TEST_CASE("snapshot header and layout") {
  Snapshot s;
  s.grid = GridSpec::make(4, 4, 1.0, 2.0);
  Array2D u(5, 4, 0.0);
  u(1, 0) = 1.0;
  s.add("u", u);
  std::ostringstream os;
  write_snapshot(os, s);
  const std::string bytes = os.str();
  const std::string head = "NLCF1\n4 4 1 2 1\nu (nx+1)x(ny)\n";
  REQUIRE(bytes.size() == head.size() + 20 * 8);
  CHECK(bytes.substr(0, head.size()) == head);
  // second value of the first row is 1.0 = 0x3FF0000000000000, little-endian
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data()) + head.size() + 8;
  for (int k = 0; k < 6; ++k) CHECK(p[k] == 0);
  CHECK(p[6] == 0xF0);
  CHECK(p[7] == 0x3F);
}

TEST_CASE("non-grid dimensions are written as integers") {
  const Snapshot s = sample_snapshot();
  std::ostringstream os;
  write_snapshot(os, s);
  CHECK(os.str().find("\nrho (nx)x(ny)\n") != std::string::npos);
  CHECK(os.str().find("v (nx)x(ny+1)\n") != std::string::npos);
  CHECK(os.str().find("meta (4)x(1)\n") != std::string::npos);
}

TEST_CASE("snapshot round trip is bitwise") {
  const Snapshot s = sample_snapshot();
  std::stringstream ss;
  write_snapshot(ss, s);
  const Snapshot r = read_snapshot(ss);
  CHECK(r.grid == s.grid);
  REQUIRE(r.fields.size() == s.fields.size());
  for (std::size_t k = 0; k < s.fields.size(); ++k) {
    CHECK(r.fields[k].name == s.fields[k].name);
    CHECK(r.fields[k].cols == s.fields[k].cols);
    CHECK(r.fields[k].rows == s.fields[k].rows);
    CHECK(std::memcmp(r.fields[k].data.data(), s.fields[k].data.data(), 8 * s.fields[k].data.size()) == 0);
  }
  CHECK(r.array("u") == s.array("u"));
  CHECK(r.has("v"));
  CHECK_FALSE(r.has("P"));
  CHECK_THROWS_AS(r.get("P"), Error);

  const auto path = std::filesystem::temp_directory_path() / "nlcflow_snapshot_test.nlcf";
  save_snapshot(path.string(), s);
  const Snapshot f = load_snapshot(path.string());
  CHECK(f.array("v") == s.array("v"));
  std::filesystem::remove(path);
}

TEST_CASE("malformed snapshots are rejected") {
  std::ostringstream os;
  write_snapshot(os, sample_snapshot());
  const std::string good = os.str();
  auto fails = [](const std::string& bytes) {
    std::istringstream is(bytes);
    try {
      read_snapshot(is);
    } catch (const Error& e) {
      return e.code() == ErrorCode::kIoError;
    }
    return false;
  };
  CHECK(fails("NLCF2\n" + good.substr(6)));
  CHECK(fails(good.substr(0, good.size() - 3)));
  CHECK(fails("NLCF1\n4 4 1\n"));
  CHECK(fails("NLCF1\n4 4 1 1 1\nrho (mx)x(ny)\n"));
  CHECK(fails("NLCF1\n4 4 1 1 1\nrho nx x ny\n"));
  CHECK(fails(""));
  CHECK_THROWS_AS(load_snapshot("/nonexistent/dir/file.nlcf"), Error);
}
