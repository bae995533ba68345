#include "housingforge.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "hf/board_io.hpp"
#include "hf/builder.hpp"
#include "hf/drc.hpp"
#include "hf/errors.hpp"
#include "hf/library.hpp"
#include "hf/mesh.hpp"
#include "hf/planner.hpp"
#include "hf/reuse.hpp"
#include "hf/span.hpp"

struct hf_library {
  hf::LibraryFile lib;
};
struct hf_board {
  hf::BoardDesign board;
};
struct hf_calibration {
  hf::SpanCalibration cal;
};
struct hf_plan {
  hf::BoltPlan plan;
};
struct hf_mesh {
  hf::TriMesh mesh;
};
struct hf_drc_report {
  std::vector<hf::RuleViolation> violations;
};
struct hf_reuse_report {
  hf::ReuseReport report;
};
struct hf_ledger {
  hf::CycleLedger ledger;
};

namespace {

thread_local std::string t_last_error;

hf_status status_for(hf::ErrorCode code) {
  using hf::ErrorCode;
  switch (code) {
    case ErrorCode::Io: return HF_E_IO;
    case ErrorCode::Syntax: return HF_E_SYNTAX;
    case ErrorCode::UnknownPackage: return HF_E_UNKNOWN_PACKAGE;
    case ErrorCode::MissingOutline: return HF_E_MISSING_OUTLINE;
    case ErrorCode::DegenerateOutline: return HF_E_DEGENERATE_OUTLINE;
    case ErrorCode::ComponentOutsideOutline: return HF_E_COMPONENT_OUTSIDE_OUTLINE;
    case ErrorCode::DuplicatePackage: return HF_E_DUPLICATE_PACKAGE;
    case ErrorCode::InvariantViolation: return HF_E_INVARIANT;
    case ErrorCode::PackageTooSmall: return HF_E_PACKAGE_TOO_SMALL;
    case ErrorCode::UnsupportedOnProfile: return HF_E_UNSUPPORTED_ON_PROFILE;
    case ErrorCode::MissingCavityModel: return HF_E_MISSING_CAVITY_MODEL;
    case ErrorCode::OutOfCalibratedRange: return HF_E_OUT_OF_CALIBRATED_RANGE;
    case ErrorCode::Infeasible: return HF_E_INFEASIBLE;
    case ErrorCode::BooleanFailure: return HF_E_BOOLEAN_FAILURE;
    case ErrorCode::CavityOverlap: return HF_E_CAVITY_OVERLAP;
    case ErrorCode::UnknownNet: return HF_E_UNKNOWN_NET;
    case ErrorCode::MissingPartNumbers: return HF_E_MISSING_PART_NUMBERS;
    case ErrorCode::InvalidArgument: return HF_E_INVALID_ARGUMENT;
  }
  return HF_E_INVALID_ARGUMENT;
}

template <typename Fn>
hf_status guarded(Fn&& fn) {
  try {
    fn();
    return HF_OK;
  } catch (const hf::Error& err) {
    t_last_error = err.what();
    return status_for(err.code());
  } catch (const std::exception& err) {
    t_last_error = err.what();
    return HF_E_INVALID_ARGUMENT;
  }
}

hf_status require(bool ok, const char* what) {
  if (ok) return HF_OK;
  t_last_error = std::string("null argument: ") + what;
  return HF_E_INVALID_ARGUMENT;
}

void write_text(const std::string& text, const char* path) {
  if (path == nullptr || std::string(path) == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) hf::raise(hf::ErrorCode::Io, "cannot write '" + std::string(path) + "'");
  out << text;
}

hf::MaterialProfile profile_for(hf_profile p) {
  switch (p) {
    case HF_PROFILE_RESIN: return hf::MaterialProfile::resin();
    case HF_PROFILE_FDM_PLA: return hf::MaterialProfile::fdm_pla();
    case HF_PROFILE_CNC_MDF: return hf::MaterialProfile::cnc_mdf();
  }
  return hf::MaterialProfile::resin();
}

hf::HousingConfig config_for(const hf_housing_config* cfg) {
  hf::HousingConfig out;
  if (cfg != nullptr) {
    out.thickness = cfg->thickness;
    out.bolt_diameter = cfg->bolt_diameter;
    out.circle_segments = cfg->circle_segments;
    out.profile = profile_for(cfg->profile);
    out.ascii_stl = cfg->ascii_stl != 0;
  }
  return out;
}

}  // namespace

extern "C" {

const char* hf_version(void) { return "housingforge 1.0.0"; }

const char* hf_last_error(void) { return t_last_error.c_str(); }

const char* hf_status_name(hf_status status) {
  switch (status) {
    case HF_OK: return "ok";
    case HF_E_IO: return "io";
    case HF_E_SYNTAX: return "syntax";
    case HF_E_UNKNOWN_PACKAGE: return "unknown-package";
    case HF_E_MISSING_OUTLINE: return "missing-outline";
    case HF_E_DEGENERATE_OUTLINE: return "degenerate-outline";
    case HF_E_COMPONENT_OUTSIDE_OUTLINE: return "component-outside-outline";
    case HF_E_DUPLICATE_PACKAGE: return "duplicate-package";
    case HF_E_INVARIANT: return "invariant-violation";
    case HF_E_PACKAGE_TOO_SMALL: return "package-too-small";
    case HF_E_UNSUPPORTED_ON_PROFILE: return "unsupported-on-profile";
    case HF_E_MISSING_CAVITY_MODEL: return "missing-cavity-model";
    case HF_E_OUT_OF_CALIBRATED_RANGE: return "out-of-calibrated-range";
    case HF_E_INFEASIBLE: return "infeasible";
    case HF_E_BOOLEAN_FAILURE: return "boolean-failure";
    case HF_E_CAVITY_OVERLAP: return "cavity-overlap";
    case HF_E_UNKNOWN_NET: return "unknown-net";
    case HF_E_MISSING_PART_NUMBERS: return "missing-part-numbers";
    case HF_E_INVALID_ARGUMENT: return "invalid-argument";
  }
  return "?";
}

void hf_housing_config_default(hf_housing_config* cfg) {
  if (cfg == nullptr) return;
  cfg->thickness = 3.0;
  cfg->bolt_diameter = 1.0;
  cfg->circle_segments = 32;
  cfg->profile = HF_PROFILE_RESIN;
  cfg->ascii_stl = 0;
}

hf_status hf_library_default(hf_library** out) {
  if (hf_status s = require(out != nullptr, "out"); s != HF_OK) return s;
  return guarded([&] { *out = new hf_library{hf::default_library()}; });
}

hf_status hf_library_load_file(const char* path, hf_library** out) {
  if (hf_status s = require(path != nullptr && out != nullptr, "path/out"); s != HF_OK)
    return s;
  return guarded([&] { *out = new hf_library{hf::load_library_file(path)}; });
}

hf_status hf_library_save_file(const hf_library* lib, const char* path) {
  if (hf_status s = require(lib != nullptr && path != nullptr, "lib/path"); s != HF_OK)
    return s;
  return guarded([&] { write_text(hf::save_library(lib->lib), path); });
}

size_t hf_library_package_count(const hf_library* lib) {
  return lib != nullptr ? lib->lib.packages().size() : 0;
}

const char* hf_library_package_name(const hf_library* lib, size_t index) {
  if (lib == nullptr || index >= lib->lib.packages().size()) return nullptr;
  return lib->lib.packages()[index].name.c_str();
}

void hf_library_free(hf_library* lib) { delete lib; }

hf_status hf_board_parse_file(const char* path, hf_format format,
                              const hf_library* lib, hf_board** out) {
  if (hf_status s = require(path != nullptr && lib != nullptr && out != nullptr,
                            "path/lib/out");
      s != HF_OK)
    return s;
  return guarded([&] {
    hf::ParseResult result;
    switch (format) {
      case HF_FORMAT_AUTO:
        result = hf::parse_board_file(path, lib->lib);
        break;
      case HF_FORMAT_NATIVE:
        result = hf::parse_board_file(path, hf::SourceFormat::NativeBoard, lib->lib);
        break;
      case HF_FORMAT_KICAD:
        result = hf::parse_board_file(path, hf::SourceFormat::KicadPcbSubset, lib->lib);
        break;
    }
    for (const auto& warning : result.warnings) {
      std::fprintf(stderr, "warning: %s\n", warning.c_str());
    }
    *out = new hf_board{std::move(result.board)};
  });
}

hf_status hf_board_save_file(const hf_board* board, const char* path) {
  if (hf_status s = require(board != nullptr && path != nullptr, "board/path");
      s != HF_OK)
    return s;
  return guarded([&] { write_text(hf::serialize_board(board->board), path); });
}

const char* hf_board_name(const hf_board* board) {
  return board != nullptr ? board->board.name.c_str() : nullptr;
}

size_t hf_board_component_count(const hf_board* board) {
  return board != nullptr ? board->board.components.size() : 0;
}

void hf_board_free(hf_board* board) { delete board; }

hf_status hf_calibration_default(hf_calibration** out) {
  if (hf_status s = require(out != nullptr, "out"); s != HF_OK) return s;
  return guarded([&] { *out = new hf_calibration{hf::default_calibration()}; });
}

hf_status hf_calibration_load_file(const char* path, hf_calibration** out) {
  if (hf_status s = require(path != nullptr && out != nullptr, "path/out"); s != HF_OK)
    return s;
  return guarded([&] { *out = new hf_calibration{hf::load_calibration_file(path)}; });
}

hf_status hf_max_span(const hf_calibration* cal, double thickness, double* out_span) {
  if (hf_status s = require(cal != nullptr && out_span != nullptr, "cal/out");
      s != HF_OK)
    return s;
  return guarded([&] { *out_span = hf::max_span(thickness, cal->cal); });
}

void hf_calibration_free(hf_calibration* cal) { delete cal; }

hf_status hf_plan_bolts(const hf_board* board, const hf_library* lib,
                        double thickness, const hf_calibration* cal,
                        double bolt_diameter, hf_plan** out) {
  if (hf_status s = require(board != nullptr && lib != nullptr && cal != nullptr &&
                                out != nullptr,
                            "board/lib/cal/out");
      s != HF_OK)
    return s;
  return guarded([&] {
    *out = new hf_plan{
        hf::plan_bolts(board->board, lib->lib, thickness, cal->cal, bolt_diameter)};
  });
}

size_t hf_plan_hole_count(const hf_plan* plan) {
  return plan != nullptr ? plan->plan.holes.size() : 0;
}

size_t hf_plan_shared_hole_count(const hf_plan* plan) {
  if (plan == nullptr) return 0;
  size_t n = 0;
  for (const auto& hole : plan->plan.holes) {
    if (hole.origin == hf::HoleOrigin::Shared) ++n;
  }
  return n;
}

double hf_plan_max_span_used(const hf_plan* plan) {
  return plan != nullptr ? plan->plan.max_span_used : 0.0;
}

hf_status hf_plan_verify(const hf_board* board, const hf_library* lib,
                         const hf_plan* plan, double thickness,
                         const hf_calibration* cal, size_t* out_violations) {
  if (hf_status s = require(board != nullptr && lib != nullptr && plan != nullptr &&
                                cal != nullptr && out_violations != nullptr,
                            "board/lib/plan/cal/out");
      s != HF_OK)
    return s;
  return guarded([&] {
    auto violations =
        hf::verify_plan(board->board, lib->lib, plan->plan, thickness, cal->cal);
    *out_violations = violations.size();
    for (const auto& v : violations) {
      std::fprintf(stderr, "plan violation [%s] %s: %s\n", v.rule.c_str(),
                   v.subject.c_str(), v.message.c_str());
    }
  });
}

hf_status hf_plan_write(const hf_plan* plan, const hf_calibration* cal,
                        const char* path) {
  if (hf_status s = require(plan != nullptr && cal != nullptr, "plan/cal"); s != HF_OK)
    return s;
  return guarded([&] { write_text(hf::plan_to_text(plan->plan, cal->cal), path); });
}

void hf_plan_free(hf_plan* plan) { delete plan; }

hf_status hf_drc_run(const hf_board* board, const hf_library* lib,
                     const hf_plan* plan, const hf_housing_config* cfg,
                     const hf_calibration* cal, hf_drc_report** out) {
  if (hf_status s = require(board != nullptr && lib != nullptr && plan != nullptr &&
                                cal != nullptr && out != nullptr,
                            "board/lib/plan/cal/out");
      s != HF_OK)
    return s;
  return guarded([&] {
    hf::HousingConfig config = config_for(cfg);
    hf::validate_config(config);
    *out = new hf_drc_report{
        hf::run_drc(board->board, lib->lib, plan->plan, config, cal->cal)};
  });
}

size_t hf_drc_count(const hf_drc_report* report) {
  return report != nullptr ? report->violations.size() : 0;
}

size_t hf_drc_error_count(const hf_drc_report* report) {
  return report != nullptr ? hf::count_errors(report->violations) : 0;
}

hf_status hf_drc_write(const hf_drc_report* report, hf_text_format format,
                       const char* path) {
  if (hf_status s = require(report != nullptr, "report"); s != HF_OK) return s;
  return guarded(
      [&] { write_text(hf::drc_text(report->violations, format == HF_TSV), path); });
}

hf_status hf_report_write(const hf_board* board, const hf_library* lib,
                          const hf_plan* plan, const hf_calibration* cal,
                          hf_text_format format, const char* path) {
  if (hf_status s = require(board != nullptr && lib != nullptr && plan != nullptr &&
                                cal != nullptr,
                            "board/lib/plan/cal");
      s != HF_OK)
    return s;
  return guarded([&] {
    auto report = hf::make_assembly_report(board->board, lib->lib, plan->plan, cal->cal);
    write_text(hf::report_text(report, format == HF_TSV), path);
  });
}

void hf_drc_report_free(hf_drc_report* report) { delete report; }

hf_status hf_build_housing(const hf_board* board, const hf_plan* plan,
                           const hf_library* lib, const hf_housing_config* cfg,
                           hf_mesh** out) {
  if (hf_status s = require(board != nullptr && plan != nullptr && lib != nullptr &&
                                out != nullptr,
                            "board/plan/lib/out");
      s != HF_OK)
    return s;
  return guarded([&] {
    hf::HousingConfig config = config_for(cfg);
    auto cavities =
        hf::board_cavities(board->board, lib->lib, config.profile, /*lenient=*/true);
    *out = new hf_mesh{
        hf::build_housing_with_cavities(board->board, plan->plan, cavities, config)};
  });
}

hf_status hf_mesh_diagnostics(const hf_mesh* mesh, hf_mesh_diag* out) {
  if (hf_status s = require(mesh != nullptr && out != nullptr, "mesh/out"); s != HF_OK)
    return s;
  return guarded([&] {
    hf::MeshDiagnostics diag = hf::mesh_diagnostics(mesh->mesh);
    out->watertight = diag.watertight ? 1 : 0;
    out->components = diag.components;
    out->triangles = mesh->mesh.triangles.size();
    out->boundary_edges = diag.boundary_edges;
    out->nonmanifold_edges = diag.nonmanifold_edges;
    out->volume = diag.volume;
    for (int i = 0; i < 3; ++i) {
      out->bbox_min[i] = diag.bbox_min[i];
      out->bbox_max[i] = diag.bbox_max[i];
    }
  });
}

hf_status hf_mesh_write_stl(const hf_mesh* mesh, const char* path, int ascii) {
  if (hf_status s = require(mesh != nullptr && path != nullptr, "mesh/path");
      s != HF_OK)
    return s;
  return guarded([&] { hf::write_stl_file(mesh->mesh, path, ascii != 0); });
}

void hf_mesh_free(hf_mesh* mesh) { delete mesh; }

hf_status hf_reuse_diff(const hf_board* old_board, const hf_board* new_board,
                        hf_reuse_report** out) {
  if (hf_status s = require(old_board != nullptr && new_board != nullptr &&
                                out != nullptr,
                            "old/new/out");
      s != HF_OK)
    return s;
  return guarded([&] {
    *out = new hf_reuse_report{hf::diff_reuse(old_board->board, new_board->board)};
  });
}

double hf_reuse_fraction(const hf_reuse_report* report) {
  return report != nullptr ? report->report.reusable_fraction : 0.0;
}

int hf_reuse_matched_total(const hf_reuse_report* report) {
  return report != nullptr ? report->report.matched_total : 0;
}

int hf_reuse_new_total(const hf_reuse_report* report) {
  return report != nullptr ? report->report.new_total : 0;
}

hf_status hf_reuse_write(const hf_reuse_report* report, hf_text_format format,
                         const char* path) {
  if (hf_status s = require(report != nullptr, "report"); s != HF_OK) return s;
  return guarded([&] {
    write_text(hf::reuse_report_text(report->report, format == HF_TSV), path);
  });
}

void hf_reuse_report_free(hf_reuse_report* report) { delete report; }

hf_status hf_ledger_load(const char* path, hf_ledger** out) {
  if (hf_status s = require(path != nullptr && out != nullptr, "path/out"); s != HF_OK)
    return s;
  return guarded([&] { *out = new hf_ledger{hf::load_ledger_file(path)}; });
}

hf_status hf_ledger_save(const hf_ledger* ledger, const char* path) {
  if (hf_status s = require(ledger != nullptr && path != nullptr, "ledger/path");
      s != HF_OK)
    return s;
  return guarded([&] { hf::save_ledger_file(ledger->ledger, path); });
}

hf_status hf_ledger_record(hf_ledger* ledger, const char* housing_id, int* out_count,
                           int* out_warning) {
  if (hf_status s = require(ledger != nullptr && housing_id != nullptr, "ledger/id");
      s != HF_OK)
    return s;
  return guarded([&] {
    auto warning = ledger->ledger.record_cycle(housing_id);
    if (out_count != nullptr) *out_count = ledger->ledger.count(housing_id);
    if (out_warning != nullptr) *out_warning = warning.has_value() ? 1 : 0;
  });
}

int hf_ledger_count(const hf_ledger* ledger, const char* housing_id) {
  if (ledger == nullptr || housing_id == nullptr) return 0;
  return ledger->ledger.count(housing_id);
}

hf_status hf_ledger_write(const hf_ledger* ledger, hf_text_format format,
                          const char* path) {
  if (hf_status s = require(ledger != nullptr, "ledger"); s != HF_OK) return s;
  return guarded([&] {
    if (format == HF_TSV) {
      std::string out;
      for (const auto& [id, count] : ledger->ledger.counts()) {
        out += id + "\t" + std::to_string(count) + "\n";
      }
      write_text(out, path);
    } else {
      write_text(hf::save_ledger(ledger->ledger), path);
    }
  });
}

void hf_ledger_free(hf_ledger* ledger) { delete ledger; }

}  // extern "C"
