#include "chrec/snapshot_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace chrec {

namespace {

constexpr std::array<char, 4> kMagic{'C', 'H', 'R', 'C'};
constexpr std::size_t kHeaderBytes = 48;

template <typename T>
void put(std::vector<unsigned char>& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.insert(out.end(), bytes.begin(), bytes.end());
}

template <typename T>
T get(const std::vector<unsigned char>& in, std::size_t& offset) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  offset += sizeof(T);
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const VectorField& velocity, double t) {
  const auto& g = velocity.grid();
  const std::size_t count = static_cast<std::size_t>(g.nx()) * g.ny();
  std::vector<unsigned char> buf;
  buf.reserve(kHeaderBytes + 2 * count * sizeof(double));
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put<std::uint32_t>(buf, kSnapshotVersion);
  put<double>(buf, g.length_x());
  put<double>(buf, g.a());
  put<double>(buf, g.b());
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.nx()));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.ny()));
  put<double>(buf, t);
  for (const auto* component : {&velocity.u(), &velocity.v()}) {
    const double* data = component->values().data();  // row-major: i * N_y + j
    for (std::size_t k = 0; k < count; ++k) put<double>(buf, data[k]);
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw SnapshotError(SnapshotError::Kind::io, "snapshot: cannot open " + path.string());
  os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!os) throw SnapshotError(SnapshotError::Kind::io, "snapshot: write failed for " + path.string());
}

VelocitySnapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError(SnapshotError::Kind::io, "snapshot: cannot open " + path.string());
  const std::vector<unsigned char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

  if (buf.size() < kMagic.size())
    throw SnapshotError(SnapshotError::Kind::truncated, "snapshot: file shorter than the magic bytes");
  if (!std::equal(kMagic.begin(), kMagic.end(), buf.begin()))
    throw SnapshotError(SnapshotError::Kind::bad_magic, "snapshot: magic mismatch (expected CHRC)");
  if (buf.size() < kHeaderBytes)
    throw SnapshotError(SnapshotError::Kind::truncated, "snapshot: truncated header");

  std::size_t offset = kMagic.size();
  const auto version = get<std::uint32_t>(buf, offset);
  if (version != kSnapshotVersion)
    throw SnapshotError(SnapshotError::Kind::bad_version,
                        "snapshot: unsupported format version " + std::to_string(version));
  const double lx = get<double>(buf, offset);
  const double a = get<double>(buf, offset);
  const double b = get<double>(buf, offset);
  const auto nx = get<std::uint32_t>(buf, offset);
  const auto ny = get<std::uint32_t>(buf, offset);
  const double t = get<double>(buf, offset);

  ChannelGrid grid = [&] {
    try {
      return ChannelGrid(lx, a, b, static_cast<int>(nx), static_cast<int>(ny));
    } catch (const InvalidArgument& e) {
      throw SnapshotError(SnapshotError::Kind::bad_header, std::string("snapshot: ") + e.what());
    }
  }();
  const std::size_t count = static_cast<std::size_t>(nx) * ny;
  if (buf.size() < kHeaderBytes + 2 * count * sizeof(double))
    throw SnapshotError(SnapshotError::Kind::truncated, "snapshot: truncated field data");

  VectorField velocity(grid);
  for (auto* component : {&velocity.u(), &velocity.v()}) {
    double* data = component->values().data();
    for (std::size_t k = 0; k < count; ++k) data[k] = get<double>(buf, offset);
  }
  return {t, std::move(velocity)};
}

}  // namespace chrec
