#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

namespace fdsketch {

/// Pull-based reader over a stream of fixed-dimension vectors.
class VectorStreamReader {
 public:
  virtual ~VectorStreamReader() = default;

  /// Fills `out` with the next vector; returns false on a clean end of
  /// stream. Throws ParseError on malformed input.
  virtual bool next(std::vector<double>& out) = 0;

  /// Dimension of the stream; 0 while still unknown (text input before the
  /// first data line).
  virtual int dim() const = 0;
};

/// Text format: one vector per line, fields split on whitespace or commas,
/// lines whose first non-blank character is '#' are skipped. Errors carry
/// 1-based line numbers.
std::unique_ptr<VectorStreamReader> open_text_stream(std::istream& in);

/// FDV1 binary format: magic "FDV1", u32 little-endian dimension, then
/// consecutive little-endian 64-bit float vectors until end of file.
std::unique_ptr<VectorStreamReader> open_fdv1_stream(std::istream& in);

void write_fdv1(std::ostream& out, int dim, const std::vector<std::vector<double>>& vectors);

}  // namespace fdsketch
