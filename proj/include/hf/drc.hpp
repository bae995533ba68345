#pragma once

#include <string>
#include <vector>

#include "hf/builder.hpp"
#include "hf/library.hpp"
#include "hf/model.hpp"
#include "hf/planner.hpp"
#include "hf/span.hpp"

namespace hf {

// Validated limits backing the rule set.
inline constexpr double kMinValidatedPitch = 0.6;     // mm, smallest working pin pitch
inline constexpr double kMinValidatedPadArea = 0.0625;  // mm^2, smallest working land
inline constexpr double kHoleClearance = 0.8;         // mm wall between hole and feature
inline constexpr double kMinCavityCeiling = 0.6;      // mm above any covered cavity
inline constexpr double kContactResistanceMean = 0.46;   // ohm per pressed contact
inline constexpr double kContactResistanceSigma = 0.139; // ohm spread per contact
inline constexpr double kAssemblyTorqueNm = 0.01;

enum class Severity { Error, Warning, Info };

const char* severity_name(Severity s);

struct RuleViolation {
  std::string rule_id;  // R1..R8
  Severity severity = Severity::Error;
  std::string subject;  // refDes, hole index, or net
  std::string message;
  double measured = 0.0;
  double limit = 0.0;
};

/// Full rule sweep over a board/plan pair:
///   R1 tab package below the printable minimum (Error)
///   R2 pin pitch below the validated range (Warning)
///   R3 pad contact area below the validated range (Warning)
///   R4 certified bolt span above the thickness limit (Error)
///   R5 bottom-pad IC without the raised-pad requirement (Error)
///   R6 tabs requested on a process that cannot print them (Error)
///   R7 hole-to-pad / hole-to-cavity wall below 0.8 mm (Error)
///   R8 cavity ceiling thinner than 0.6 mm (Error)
/// Violations are data, not failures; output sorted by (rule, subject).
std::vector<RuleViolation> run_drc(const BoardDesign& board, const LibraryFile& lib,
                                   const BoltPlan& plan, const HousingConfig& cfg,
                                   const SpanCalibration& cal);

std::size_t count_errors(const std::vector<RuleViolation>& violations);

/// Violations as human-readable text or one tab-separated record per line.
std::string drc_text(const std::vector<RuleViolation>& violations, bool tsv);

struct ResistanceEstimate {
  double mean = 0.0;   // ohms
  double sigma = 0.0;  // ohms
  int contacts = 0;
};

/// Added series resistance model for one net: mean grows linearly with the
/// number of pressed contacts, variance adds. Contact count is approximated
/// by the component pads bound to the net. Raises UnknownNet.
ResistanceEstimate estimate_contact_resistance(const BoardDesign& board,
                                               const LibraryFile& lib,
                                               const std::string& net);

struct AssemblyReport {
  std::string board_name;
  std::size_t bolt_count = 0;
  std::size_t shared_bolts = 0;
  std::vector<std::pair<std::string, std::size_t>> bolts_by_class;  // sorted
  std::vector<std::pair<std::string, ResistanceEstimate>> net_resistance;  // sorted
  std::vector<std::string> raised_pad_refs;  // components needing raised pads
  bool calibrated = false;
  double torque_nm = kAssemblyTorqueNm;
};

AssemblyReport make_assembly_report(const BoardDesign& board, const LibraryFile& lib,
                                    const BoltPlan& plan, const SpanCalibration& cal);

std::string report_text(const AssemblyReport& report, bool tsv);

}  // namespace hf
