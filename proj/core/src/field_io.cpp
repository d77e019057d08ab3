#include "elastomap/field_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "elastomap/error.hpp"

namespace elastomap {

namespace {

constexpr char kMagic[4] = {'S', 'M', 'F', '1'};
constexpr double kRangeGuard = 1e-12;

template <class T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xFF));
  }
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& b) : bytes_(b) {}

  template <class T>
  T take(const char* what) {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw Error(ErrorCode::TruncatedPayload, std::string("file ends at byte ") +
                                                   std::to_string(bytes_.size()) + " inside " +
                                                   what + " at offset " + std::to_string(pos_));
    }
    T v = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) {
      v |= static_cast<T>(static_cast<T>(bytes_[pos_ + b]) << (8 * b));
    }
    pos_ += sizeof(T);
    return v;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void Metadata::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

std::optional<std::string> Metadata::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

ScalarField FieldFile::scalar() const {
  if (ncomp != 1) throw Error(ErrorCode::DimensionMismatch, "field file holds a tensor field");
  return ScalarField(grid, payload);
}

TensorField FieldFile::tensor() const {
  if (ncomp != mandel_size(grid.dim())) {
    throw Error(ErrorCode::DimensionMismatch, "field file does not hold a Mandel tensor field");
  }
  return TensorField(grid, payload);
}

FieldFile make_field_file(const ScalarField& f, Metadata meta) {
  meta.set("grid", f.grid().is_periodic() ? "periodic" : "bounded");
  return {f.grid(), 1, f.values(), std::move(meta)};
}

FieldFile make_field_file(const TensorField& f, Metadata meta) {
  meta.set("grid", f.grid().is_periodic() ? "periodic" : "bounded");
  return {f.grid(), f.ncomp(), f.data(), std::move(meta)};
}

std::vector<std::uint8_t> encode_field(const FieldFile& f) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_le<std::uint16_t>(out, kFieldVersion);
  out.push_back(static_cast<std::uint8_t>(f.grid.dim()));
  out.push_back(static_cast<std::uint8_t>(f.ncomp));
  for (int a = 0; a < f.grid.dim(); ++a) put_le<std::uint32_t>(out, f.grid.extent(a));
  out.reserve(out.size() + 8 * f.payload.size() + 64);
  for (double v : f.payload) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  Metadata meta = f.meta;
  meta.set("grid", f.grid.is_periodic() ? "periodic" : "bounded");
  for (const auto& [k, v] : meta.entries()) {
    out.insert(out.end(), k.begin(), k.end());
    out.push_back('=');
    out.insert(out.end(), v.begin(), v.end());
    out.push_back('\n');
  }
  return out;
}

FieldFile decode_field(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "not a field file (expected magic SMF1)");
  }
  Reader r(bytes);
  r.take<std::uint32_t>("magic");
  const auto version = r.take<std::uint16_t>("version");
  if (version != kFieldVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "field file version " + std::to_string(version));
  }
  const int dim = r.take<std::uint8_t>("header");
  const int ncomp = r.take<std::uint8_t>("header");
  if (dim != 2 && dim != 3) {
    throw Error(ErrorCode::UnsupportedDimension, "field file dimension " + std::to_string(dim));
  }
  if (ncomp != 1 && ncomp != mandel_size(dim)) {
    throw Error(ErrorCode::DimensionMismatch, "field file has " + std::to_string(ncomp) +
                                                  " components per point");
  }
  std::vector<int> shape(dim);
  for (int a = 0; a < dim; ++a) shape[a] = static_cast<int>(r.take<std::uint32_t>("header"));
  std::size_t count = ncomp;
  for (int s : shape) count *= static_cast<std::size_t>(s);
  if (r.remaining() < 8 * count) {
    throw Error(ErrorCode::TruncatedPayload,
                "payload needs " + std::to_string(8 * count) + " bytes from offset " +
                    std::to_string(r.pos()) + ", file ends at byte " +
                    std::to_string(bytes.size()));
  }
  std::vector<double> payload(count);
  for (auto& v : payload) v = std::bit_cast<double>(r.take<std::uint64_t>("payload"));

  Metadata meta;
  std::string text(bytes.begin() + static_cast<std::ptrdiff_t>(r.pos()), bytes.end());
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    meta.set(line.substr(0, eq), line.substr(eq + 1));
  }
  const bool bounded = meta.get("grid") == std::optional<std::string>("bounded");
  Grid grid = bounded ? Grid::bounded(shape) : Grid::periodic(shape);
  return {grid, ncomp, std::move(payload), std::move(meta)};
}

void write_field(const std::filesystem::path& path, const FieldFile& f) {
  const auto bytes = encode_field(f);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

FieldFile read_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_field(bytes);
}

std::vector<std::uint8_t> pgm_pixels(const ScalarField& field, PgmRange range) {
  const Grid& g = field.grid();
  if (g.dim() != 2) throw Error(ErrorCode::UnsupportedDimension, "PGM output is 2D only");
  const int w = g.extent(0);
  const int h = g.extent(1);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(w) * h);
  const double span = range.hi - range.lo;
  for (int row = 0; row < h; ++row) {
    const int j = h - 1 - row;
    for (int i = 0; i < w; ++i) {
      double t = span > 0.0 ? (field[g.ravel({i, j, 0})] - range.lo) / span : 0.5;
      t = std::clamp(t, 0.0, 1.0);
      px[static_cast<std::size_t>(row) * w + i] = static_cast<std::uint8_t>(std::lround(t * 255.0));
    }
  }
  return px;
}

PgmRange write_pgm(const ScalarField& field, const std::filesystem::path& path,
                   std::optional<PgmRange> range) {
  PgmRange r = range.value_or(PgmRange{field.min() - kRangeGuard, field.max() + kRangeGuard});
  const auto px = pgm_pixels(field, r);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << "P5\n" << field.grid().extent(0) << ' ' << field.grid().extent(1) << "\n255\n";
  out.write(reinterpret_cast<const char*>(px.data()), static_cast<std::streamsize>(px.size()));
  std::ofstream side(path.string() + ".range", std::ios::trunc);
  if (!out || !side) throw Error(ErrorCode::IoError, "write failed for " + path.string());
  side << format_g17(r.lo) << ' ' << format_g17(r.hi) << '\n';
  return r;
}

PgmRange read_pgm_range(const std::filesystem::path& pgm_path) {
  std::ifstream in(pgm_path.string() + ".range");
  PgmRange r;
  if (!(in >> r.lo >> r.hi)) {
    throw Error(ErrorCode::IoError, "cannot read range sidecar for " + pgm_path.string());
  }
  return r;
}

std::string to_csv(const FieldFile& f) {
  static const char* axes[3] = {"x", "y", "z"};
  std::string out = "index";
  for (int a = 0; a < f.grid.dim(); ++a) out += std::string(",") + axes[a];
  for (int c = 0; c < f.ncomp; ++c) out += ",c" + std::to_string(c);
  out += '\n';
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    out += std::to_string(i);
    const auto x = f.grid.coord(i);
    for (int a = 0; a < f.grid.dim(); ++a) out += ',' + format_double(x[a]);
    for (int c = 0; c < f.ncomp; ++c) out += ',' + format_double(f.payload[i * f.ncomp + c]);
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const FieldFile& f) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << to_csv(f);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace elastomap
