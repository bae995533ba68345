#pragma once

#include <string>
#include <vector>

#include "hf/library.hpp"
#include "hf/model.hpp"
#include "hf/span.hpp"

namespace hf {

/// A component counts as covered when its center lies within this distance of
/// the segment between two plan holes whose separation obeys the span rule.
inline constexpr double kCoverageRadius = 1.5;
/// Minimum printable wall: hole-to-hole spacing is diameter + this.
inline constexpr double kMinWall = 0.8;
inline constexpr double kDefaultBoltDiameter = 1.0;

enum class HoleOrigin { IcPreallocated, Shared };

struct BoltHole {
  Point2 position;
  double diameter = kDefaultBoltDiameter;
  HoleOrigin origin = HoleOrigin::Shared;
  std::string ref_des;  // owning component for pre-allocated holes
};

/// Certifies coverage of one two-terminal component by a hole pair.
struct CoverageCert {
  std::string ref_des;
  std::size_t hole_a = 0;
  std::size_t hole_b = 0;
  double span = 0.0;
  double center_distance = 0.0;  // component center to the hole segment
};

struct BoltPlan {
  std::vector<BoltHole> holes;
  std::vector<CoverageCert> coverage;  // sorted by refDes
  double max_span_allowed = 0.0;
  double max_span_used = 0.0;
  double bolt_diameter = kDefaultBoltDiameter;
};

/// Places IC pre-allocated holes verbatim and a locally-minimal set of shared
/// holes so every two-terminal component is covered under the span rule.
/// Deterministic; raises Infeasible when a component cannot be covered.
BoltPlan plan_bolts(const BoardDesign& board, const LibraryFile& lib,
                    double thickness, const SpanCalibration& cal,
                    double bolt_diameter = kDefaultBoltDiameter);

/// Same, seeded with holes that must appear in the plan (used for
/// idempotence: re-planning on a plan's own holes adds nothing).
BoltPlan plan_bolts_seeded(const BoardDesign& board, const LibraryFile& lib,
                           double thickness, const SpanCalibration& cal,
                           double bolt_diameter,
                           const std::vector<BoltHole>& seed_holes);

struct PlanViolation {
  std::string rule;     // coverage | spacing | containment | certificate
  std::string subject;  // refDes or hole index
  std::string message;
  double measured = 0.0;
  double limit = 0.0;
};

/// Independent re-check of the plan invariants: coverage of every
/// two-terminal component, hole spacing, and containment. Empty means valid.
std::vector<PlanViolation> verify_plan(const BoardDesign& board,
                                       const LibraryFile& lib,
                                       const BoltPlan& plan, double thickness,
                                       const SpanCalibration& cal);

std::string plan_to_text(const BoltPlan& plan, const SpanCalibration& cal);

}  // namespace hf
