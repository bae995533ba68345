#pragma once

#include <optional>
#include <vector>

#include "hf/library.hpp"
#include "hf/model.hpp"

namespace hf {

/// Flexible-tab dimensions for a two-terminal cavity, all driven by the rated
/// body dims (l, w, t):
///   thickness  = t
///   slope      = 30 degrees toward the board
///   width      = 0.6 * w
///   length     = 0.45 * l
///   height     = t + 0.1   (cavity ceiling above the board plane)
struct TabSpec {
  double thickness = 0.0;
  double slope_deg = 30.0;
  double width = 0.0;
  double length = 0.0;
  double height = 0.0;
};

/// Smallest package the tab structure prints reliably for.
inline constexpr double kMinTabLength = 1.55;  // rated 0603 length
inline constexpr double kMinTabWidth = 0.80;   // rated 0603 width

/// Lateral fit clearance around component bodies (per side).
inline constexpr double kFitClearance = 0.1;
/// Nominal tab interference: undeformed tab apex sits this far below the
/// rated component top.
inline constexpr double kTabInterference = 0.1;
/// Isolation groove: web left under the groove and the groove's plan width.
inline constexpr double kGrooveWeb = 0.3;
inline constexpr double kGrooveWidth = 1.0;
/// Press bars contact pin rows at this height above the board.
inline constexpr double kPinPressHeight = 0.2;
/// Press bar overhang beyond the pin-row rectangle, away from the body.
inline constexpr double kBarOverhang = 0.2;
inline constexpr double kBarSideMargin = 0.1;

TabSpec tab_dims(const PackageSpec& pkg);

enum class CavityKind { TwoTerminalCavity, PressBarCavity, NegativePocket, CustomSolid };

/// One sloped tab wedge hanging from the cavity ceiling. The underside drops
/// at the tab slope from the hinge edge (at ceiling height) to the tip edge,
/// whose lower rim is the apex at `tip_z`.
struct TabWedge {
  Point2 hinge_a, hinge_b;  // edge at ceiling height
  Point2 tip_a, tip_b;      // edge above the apex
  double ceiling_z = 0.0;
  double tip_z = 0.0;
};

/// Solid volume hanging from the ceiling that presses a pin row.
struct PressBar {
  std::vector<Point2> plan;  // CCW, board frame
  double bottom_z = 0.0;
};

/// Ring carved from the housing top around a bolted component, leaving a
/// 0.3 mm web at the board side.
struct GrooveRing {
  std::vector<Point2> outer;  // CCW
  std::vector<Point2> inner;  // CCW
  double web = kGrooveWeb;
  double width = kGrooveWidth;
};

/// One vertical pocket of a cavity: open toward the board, ceiling at
/// `ceiling_z`; through-cutouts have no ceiling.
struct CavityPocket {
  std::vector<Point2> plan;  // CCW, board frame
  double ceiling_z = 0.0;
  bool through = false;
};

struct CavitySolid {
  CavityKind kind = CavityKind::TwoTerminalCavity;
  std::string ref_des;
  std::vector<CavityPocket> pockets;
  std::vector<TabWedge> tabs;
  std::optional<TabSpec> tab_spec;
  std::vector<PressBar> bars;
  std::optional<GrooveRing> groove;
  bool raised_pad_required = false;
};

/// Cavity solid for one placed component under a fabrication profile.
/// Raises PackageTooSmall / UnsupportedOnProfile / MissingCavityModel.
CavitySolid cavity_for(const ComponentInstance& comp, const PackageSpec& pkg,
                       const MaterialProfile& profile);

/// Pocket footprint (without groove) in the package-local frame; used by the
/// planner and DRC for clearance checks without building the full solid.
Rect cavity_footprint_local(const PackageSpec& pkg);

/// Groove ring rectangles in the package-local frame (IC classes only).
struct GrooveRectsLocal {
  Rect inner;
  Rect outer;
};
std::optional<GrooveRectsLocal> groove_rects_local(const PackageSpec& pkg);

}  // namespace hf
