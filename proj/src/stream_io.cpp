#include "fdsketch/stream_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "fdsketch/errors.hpp"

namespace fdsketch {

namespace {

constexpr char kMagic[4] = {'F', 'D', 'V', '1'};

bool is_delim(char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; }

class TextReader final : public VectorStreamReader {
 public:
  explicit TextReader(std::istream& in) : in_(in) {}

  bool next(std::vector<double>& out) override {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::size_t pos = 0;
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      if (pos == line.size() || line[pos] == '#') continue;
      if (line[pos] == '\r' && pos + 1 == line.size()) continue;

      out.clear();
      while (pos < line.size()) {
        while (pos < line.size() && is_delim(line[pos])) ++pos;
        if (pos >= line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && !is_delim(line[end])) ++end;
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
        if (ec != std::errc() || ptr != line.data() + end) {
          throw ParseError("malformed number '" + line.substr(pos, end - pos) + "' at line " +
                               std::to_string(line_no_),
                           line_no_);
        }
        if (!std::isfinite(value)) {
          throw ParseError("non-finite value at line " + std::to_string(line_no_), line_no_);
        }
        out.push_back(value);
        pos = end;
      }
      if (out.empty()) continue;

      if (dim_ == 0) {
        dim_ = static_cast<int>(out.size());
      } else if (static_cast<int>(out.size()) != dim_) {
        throw ParseError("dimension changed from " + std::to_string(dim_) + " to " +
                             std::to_string(out.size()) + " at line " + std::to_string(line_no_),
                         line_no_);
      }
      return true;
    }
    return false;
  }

  int dim() const override { return dim_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
  int dim_ = 0;
};

class Fdv1Reader final : public VectorStreamReader {
 public:
  explicit Fdv1Reader(std::istream& in) : in_(in) {
    char magic[4];
    in_.read(magic, 4);
    if (!in_ || magic[0] != kMagic[0] || magic[1] != kMagic[1] || magic[2] != kMagic[2] ||
        magic[3] != kMagic[3]) {
      throw ParseError("not an FDV1 stream (bad magic)");
    }
    std::array<unsigned char, 4> b;
    in_.read(reinterpret_cast<char*>(b.data()), 4);
    if (!in_) throw ParseError("truncated FDV1 header");
    std::uint32_t d = 0;
    for (int i = 0; i < 4; ++i) d |= static_cast<std::uint32_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    if (d == 0 || d > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
      throw ParseError("FDV1 stream has invalid dimension");
    }
    dim_ = static_cast<int>(d);
  }

  bool next(std::vector<double>& out) override {
    out.resize(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      std::array<unsigned char, 8> b;
      in_.read(reinterpret_cast<char*>(b.data()), 8);
      if (!in_) {
        if (i == 0 && in_.gcount() == 0) return false;  // clean end at a record boundary
        throw ParseError("truncated FDV1 record " + std::to_string(records_ + 1));
      }
      std::uint64_t bits = 0;
      for (int j = 0; j < 8; ++j) {
        bits |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(j)]) << (8 * j);
      }
      const double value = std::bit_cast<double>(bits);
      if (!std::isfinite(value)) {
        throw ParseError("non-finite value in FDV1 record " + std::to_string(records_ + 1));
      }
      out[static_cast<std::size_t>(i)] = value;
    }
    ++records_;
    return true;
  }

  int dim() const override { return dim_; }

 private:
  std::istream& in_;
  int dim_ = 0;
  std::size_t records_ = 0;
};

}  // namespace

std::unique_ptr<VectorStreamReader> open_text_stream(std::istream& in) {
  return std::make_unique<TextReader>(in);
}

std::unique_ptr<VectorStreamReader> open_fdv1_stream(std::istream& in) {
  return std::make_unique<Fdv1Reader>(in);
}

void write_fdv1(std::ostream& out, int dim, const std::vector<std::vector<double>>& vectors) {
  if (dim < 1) throw ParameterError("FDV1 dimension must be positive");
  out.write(kMagic, 4);
  const auto d = static_cast<std::uint32_t>(dim);
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((d >> (8 * i)) & 0xff));
  for (const auto& x : vectors) {
    if (x.size() != static_cast<std::size_t>(dim)) {
      throw DimensionError("FDV1 vector length does not match header dimension");
    }
    for (double v : x) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      for (int i = 0; i < 8; ++i) out.put(static_cast<char>((bits >> (8 * i)) & 0xff));
    }
  }
}

}  // namespace fdsketch
