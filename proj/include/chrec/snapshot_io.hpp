#pragma once

#include <filesystem>
#include <string>

#include "chrec/errors.hpp"
#include "chrec/field.hpp"

namespace chrec {

/// Velocity snapshot file, little-endian:
///
///   offset  size  content
///   0       4     magic "CHRC"
///   4       4     uint32 format version (1)
///   8       24    float64 L_x, a, b
///   32      8     uint32 N_x, N_y
///   40      8     float64 t
///   48      ...   float64 u[N_x * N_y], then v[N_x * N_y], index i * N_y + j
class SnapshotError : public Error {
 public:
  enum class Kind { io, truncated, bad_magic, bad_version, bad_header };
  SnapshotError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

struct VelocitySnapshot {
  double t;
  VectorField velocity;
};

void write_snapshot(const std::filesystem::path& path, const VectorField& velocity, double t);
VelocitySnapshot read_snapshot(const std::filesystem::path& path);

}  // namespace chrec
