#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "chrec/snapshot_io.hpp"

using namespace chrec;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "chrec_test_io";
  fs::create_directories(dir);
  return dir / name;
}

VectorField random_velocity(const ChannelGrid& grid) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> dist;
  VectorField vel(grid);
  for (Eigen::Index i = 0; i < vel.u().values().size(); ++i) {
    vel.u().values()(i) = dist(rng);
    vel.v().values()(i) = dist(rng);
  }
  return vel;
}

void write_bytes(const fs::path& path, const std::string& bytes) {
  std::ofstream(path, std::ios::binary).write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

SnapshotError::Kind kind_of(const fs::path& path) {
  try {
    read_snapshot(path);
  } catch (const SnapshotError& e) {
    return e.kind();
  }
  FAIL("read_snapshot accepted a corrupt file");
  return SnapshotError::Kind::io;
}

}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
  const ChannelGrid grid(3.5, -0.25, 1.75, 12, 7);
  const VectorField vel = random_velocity(grid);
  const fs::path path = scratch("round_trip.bin");
  write_snapshot(path, vel, 0.1 + 0.2);
  const auto snap = read_snapshot(path);
  CHECK(snap.t == 0.1 + 0.2);
  CHECK(snap.velocity.grid() == grid);
  CHECK((snap.velocity.u().values() == vel.u().values()).all());
  CHECK((snap.velocity.v().values() == vel.v().values()).all());
  CHECK(fs::file_size(path) == 48 + 2 * 8 * 12 * 7);
}

TEST_CASE("snapshot layout") {
  const ChannelGrid grid(2 * std::numbers::pi, 0, 1, 4, 3);
  VectorField vel(grid);
  vel.u()(1, 2) = 7.0;
  const fs::path path = scratch("layout.bin");
  write_snapshot(path, vel, 2.0);
  const std::string bytes = read_bytes(path);
  CHECK(bytes.substr(0, 4) == "CHRC");
  std::uint32_t version = 0, nx = 0, ny = 0;
  std::memcpy(&version, bytes.data() + 4, 4);
  std::memcpy(&nx, bytes.data() + 32, 4);
  std::memcpy(&ny, bytes.data() + 36, 4);
  CHECK(version == 1);
  CHECK(nx == 4);
  CHECK(ny == 3);
  double u12 = 0;
  std::memcpy(&u12, bytes.data() + 48 + 8 * (1 * 3 + 2), 8);
  CHECK(u12 == 7.0);
}

TEST_CASE("corrupt snapshots raise distinct errors") {
  const ChannelGrid grid(2 * std::numbers::pi, 0, 1, 4, 3);
  const fs::path good = scratch("good.bin");
  write_snapshot(good, random_velocity(grid), 1.0);
  const std::string bytes = read_bytes(good);

  const fs::path bad = scratch("bad.bin");
  SUBCASE("wrong magic") {
    write_bytes(bad, "XXXX" + bytes.substr(4));
    CHECK(kind_of(bad) == SnapshotError::Kind::bad_magic);
  }
  SUBCASE("wrong version") {
    std::string b = bytes;
    b[4] = 2;
    write_bytes(bad, b);
    CHECK(kind_of(bad) == SnapshotError::Kind::bad_version);
  }
  SUBCASE("header only") {
    write_bytes(bad, bytes.substr(0, 48));
    CHECK(kind_of(bad) == SnapshotError::Kind::truncated);
  }
  SUBCASE("short header") {
    write_bytes(bad, bytes.substr(0, 20));
    CHECK(kind_of(bad) == SnapshotError::Kind::truncated);
  }
  SUBCASE("odd grid in the header") {
    std::string b = bytes;
    b[32] = 5;
    write_bytes(bad, b);
    CHECK(kind_of(bad) == SnapshotError::Kind::bad_header);
  }
  SUBCASE("missing file") {
    CHECK(kind_of(scratch("does_not_exist.bin")) == SnapshotError::Kind::io);
  }
}
