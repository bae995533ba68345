#pragma once

#include <string>
#include <vector>

namespace hf {

/// Empirical maximum bolt distance as a function of housing thickness.
/// Thickness domain is the validated 1..5 mm; spans are monotone
/// non-decreasing; a table covering 3 mm must pass through (3, 27).
struct SpanCalibration {
  struct Point {
    double thickness = 0.0;
    double max_span = 0.0;
  };
  std::vector<Point> points;  // sorted by thickness
  bool is_default = false;    // shipped linear model, reported as UNCALIBRATED
};

inline constexpr double kMinHousingThickness = 1.0;
inline constexpr double kMaxHousingThickness = 5.0;
inline constexpr double kSpanAnchorThickness = 3.0;
inline constexpr double kSpanAnchorValue = 27.0;

/// Shipped fallback: linear in thickness through the published anchor,
/// clamped to the validated thickness range.
SpanCalibration default_calibration();

/// Validates invariants (range, monotonicity, anchor consistency); raises
/// InvariantViolation on failure.
void validate_calibration(const SpanCalibration& cal);

/// Piecewise-linear interpolation; clamps beyond the calibrated ends (never
/// extrapolates upward). Raises OutOfCalibratedRange outside 1..5 mm.
double max_span(double thickness, const SpanCalibration& cal);

SpanCalibration load_calibration(const std::string& bytes);
std::string save_calibration(const SpanCalibration& cal);
SpanCalibration load_calibration_file(const std::string& path);

}  // namespace hf
