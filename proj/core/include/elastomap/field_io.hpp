#pragma once

// Binary field files:
//   "SMF1" | u16 version | u8 dim | u8 ncomp | u32 size per axis |
//   float64 payload (little-endian, row-major, components fastest) |
//   metadata (UTF-8 key=value lines up to end of file).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elastomap/grid.hpp"

namespace elastomap {

inline constexpr std::uint16_t kFieldVersion = 1;

class Metadata {
 public:
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }
  bool operator==(const Metadata&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct FieldFile {
  Grid grid;
  int ncomp = 1;
  std::vector<double> payload;
  Metadata meta;

  bool is_scalar() const noexcept { return ncomp == 1; }
  ScalarField scalar() const;
  TensorField tensor() const;
};

FieldFile make_field_file(const ScalarField& f, Metadata meta = {});
FieldFile make_field_file(const TensorField& f, Metadata meta = {});

std::vector<std::uint8_t> encode_field(const FieldFile& f);
/// Throws BadMagic, UnsupportedVersion, TruncatedPayload (with byte offset).
FieldFile decode_field(const std::vector<std::uint8_t>& bytes);

void write_field(const std::filesystem::path& path, const FieldFile& f);
FieldFile read_field(const std::filesystem::path& path);

struct PgmRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// 8-bit P5 image, top row at the largest second coordinate. Without a range
/// the field min/max is used, widened by 1e-12 on each side. The range used
/// is written to `path` + ".range" and returned.
PgmRange write_pgm(const ScalarField& field, const std::filesystem::path& path,
                   std::optional<PgmRange> range = std::nullopt);
PgmRange read_pgm_range(const std::filesystem::path& pgm_path);
/// Quantized pixels in file order (row-major from the top row).
std::vector<std::uint8_t> pgm_pixels(const ScalarField& field, PgmRange range);

/// One row per point: index, coordinates, components; shortest round-trip
/// decimal formatting.
std::string to_csv(const FieldFile& f);
void write_csv(const std::filesystem::path& path, const FieldFile& f);

}  // namespace elastomap
