#include "hf/textio.hpp"

#include <charconv>
#include <cstdio>

#include "hf/errors.hpp"

namespace hf {

std::string format_double(double value) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double_token(std::string_view token, int line, const char* what) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    raise(ErrorCode::Syntax, "line " + std::to_string(line) + ": invalid " +
                                 std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

bool LineReader::next(std::string_view& line, int& line_no) {
  while (pos_ < text_.size()) {
    std::size_t eol = text_.find('\n', pos_);
    std::string_view raw;
    if (eol == std::string_view::npos) {
      raw = text_.substr(pos_);
      pos_ = text_.size();
    } else {
      raw = text_.substr(pos_, eol - pos_);
      pos_ = eol + 1;
    }
    ++line_no_;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t first = raw.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (raw[first] == '#') continue;
    line = raw;
    line_no = line_no_;
    return true;
  }
  return false;
}

}  // namespace hf
