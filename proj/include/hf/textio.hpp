#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hf {

/// Shortest decimal form that parses back to the same double, so serialized
/// fixtures round-trip bit-exactly.
std::string format_double(double value);

double parse_double_token(std::string_view token, int line, const char* what);

/// Splits on runs of spaces/tabs. Carriage returns are stripped by the line
/// reader, not here.
std::vector<std::string> split_tokens(std::string_view line);

/// Line iterator over a byte buffer that tracks 1-based line numbers and
/// skips blank lines and '#' comments.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  /// Next significant line; returns false at end of input.
  bool next(std::string_view& line, int& line_no);

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_no_ = 0;
};

}  // namespace hf
