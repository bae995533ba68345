#include "hf/span.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

SpanCalibration default_calibration() {
  SpanCalibration cal;
  cal.points = {{1.0, 9.0}, {3.0, 27.0}, {5.0, 45.0}};
  cal.is_default = true;
  return cal;
}

namespace {

double interpolate(const SpanCalibration& cal, double thickness) {
  const auto& pts = cal.points;
  if (thickness <= pts.front().thickness) return pts.front().max_span;
  if (thickness >= pts.back().thickness) return pts.back().max_span;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (thickness <= pts[i + 1].thickness) {
      double t0 = pts[i].thickness, t1 = pts[i + 1].thickness;
      double s0 = pts[i].max_span, s1 = pts[i + 1].max_span;
      if (t1 == t0) return s0;
      return s0 + (s1 - s0) * (thickness - t0) / (t1 - t0);
    }
  }
  return pts.back().max_span;
}

}  // namespace

void validate_calibration(const SpanCalibration& cal) {
  if (cal.points.empty())
    raise(ErrorCode::InvariantViolation, "calibration table is empty");
  for (std::size_t i = 0; i < cal.points.size(); ++i) {
    const auto& p = cal.points[i];
    if (p.thickness < kMinHousingThickness || p.thickness > kMaxHousingThickness)
      raise(ErrorCode::InvariantViolation,
            "calibration thickness " + format_double(p.thickness) +
                " outside the validated 1..5 mm range");
    if (p.max_span <= 0.0)
      raise(ErrorCode::InvariantViolation, "calibration span must be positive");
    if (i > 0) {
      if (p.thickness <= cal.points[i - 1].thickness)
        raise(ErrorCode::InvariantViolation, "calibration thicknesses must increase");
      if (p.max_span < cal.points[i - 1].max_span)
        raise(ErrorCode::InvariantViolation,
              "calibration spans must be monotone non-decreasing");
    }
  }
  if (cal.points.front().thickness <= kSpanAnchorThickness &&
      cal.points.back().thickness >= kSpanAnchorThickness) {
    double at_anchor = interpolate(cal, kSpanAnchorThickness);
    if (std::abs(at_anchor - kSpanAnchorValue) > 1e-9)
      raise(ErrorCode::InvariantViolation,
            "calibration is inconsistent with the validated anchor (3 mm -> 27 mm), got " +
                format_double(at_anchor));
  }
}

double max_span(double thickness, const SpanCalibration& cal) {
  if (!(thickness >= kMinHousingThickness && thickness <= kMaxHousingThickness))
    raise(ErrorCode::OutOfCalibratedRange,
          "housing thickness " + format_double(thickness) +
              " outside the calibrated 1..5 mm range");
  return interpolate(cal, thickness);
}

SpanCalibration load_calibration(const std::string& bytes) {
  LineReader reader(bytes);
  std::string_view line;
  int line_no = 0;
  if (!reader.next(line, line_no)) raise(ErrorCode::Syntax, "empty calibration file");
  {
    auto header = split_tokens(line);
    if (header.size() != 2 || header[0] != "spancal" || header[1] != "v1")
      raise(ErrorCode::Syntax,
            "line " + std::to_string(line_no) + ": expected 'spancal v1' header");
  }
  SpanCalibration cal;
  while (reader.next(line, line_no)) {
    auto tok = split_tokens(line);
    if (tok.size() != 2)
      raise(ErrorCode::Syntax,
            "line " + std::to_string(line_no) + ": expected '<thickness> <span>'");
    cal.points.push_back({parse_double_token(tok[0], line_no, "thickness"),
                          parse_double_token(tok[1], line_no, "span")});
  }
  std::sort(cal.points.begin(), cal.points.end(),
            [](const auto& a, const auto& b) { return a.thickness < b.thickness; });
  validate_calibration(cal);
  return cal;
}

std::string save_calibration(const SpanCalibration& cal) {
  std::ostringstream out;
  out << "spancal v1\n";
  for (const auto& p : cal.points) {
    out << format_double(p.thickness) << ' ' << format_double(p.max_span) << '\n';
  }
  return out.str();
}

SpanCalibration load_calibration_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::Io, "cannot open calibration file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_calibration(buf.str());
}

}  // namespace hf
