#include "fdsketch/serialize.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "fdsketch/errors.hpp"

namespace fdsketch {

namespace {

constexpr char kMagic[4] = {'F', 'D', 'C', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes.data(), 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), 8);
  if (!in) throw ParseError("truncated FDC1 snapshot");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void save_sketch(const FdSketch& sketch, std::ostream& out) {
  out.write(kMagic, 4);
  put_u64(out, static_cast<std::uint64_t>(sketch.dim()));
  put_u64(out, static_cast<std::uint64_t>(sketch.ell()));
  put_u64(out, sketch.steps());
  for (double v : sketch.covariance_estimate().packed()) put_f64(out, v);
  put_f64(out, sketch.shrinkage_total());
  if (!out) throw ParseError("failed to write FDC1 snapshot");
}

FdSketch load_sketch(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || magic[0] != kMagic[0] || magic[1] != kMagic[1] || magic[2] != kMagic[2] ||
      magic[3] != kMagic[3]) {
    throw ParseError("not an FDC1 snapshot (bad magic)");
  }
  const std::uint64_t d64 = get_u64(in);
  const std::uint64_t ell64 = get_u64(in);
  const std::uint64_t steps = get_u64(in);
  if (d64 == 0 || d64 > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    throw ParseError("FDC1 snapshot has invalid dimension");
  }
  if (ell64 == 0 || ell64 > d64) throw ParseError("FDC1 snapshot has invalid ell");

  const int d = static_cast<int>(d64);
  SymMatrix current(d);
  for (double& v : current.packed_mut()) v = get_f64(in);
  const double shrinkage_total = get_f64(in);

  // Strict framing: the payload ends exactly here.
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError("trailing bytes after FDC1 snapshot payload");
  }
  return FdSketch::restore(d, static_cast<int>(ell64), steps, shrinkage_total,
                           std::move(current));
}

void save_sketch_file(const FdSketch& sketch, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot open snapshot file for writing: " + path);
  save_sketch(sketch, out);
}

FdSketch load_sketch_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open snapshot file: " + path);
  return load_sketch(in);
}

}  // namespace fdsketch
