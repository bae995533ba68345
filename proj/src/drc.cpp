#include "hf/drc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "hf/cavity.hpp"
#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

const char* severity_name(Severity s) {
  switch (s) {
    case Severity::Error: return "Error";
    case Severity::Warning: return "Warning";
    case Severity::Info: return "Info";
  }
  return "?";
}

namespace {

double clearance_to_ring(Point2 center, double radius, const std::vector<Point2>& ring) {
  Polygon2 poly{ring, {}};
  if (point_in_ring(ring, center)) return -radius;
  return polygon_boundary_distance(poly, center) - radius;
}

}  // namespace

std::vector<RuleViolation> run_drc(const BoardDesign& board, const LibraryFile& lib,
                                   const BoltPlan& plan, const HousingConfig& cfg,
                                   const SpanCalibration& cal) {
  std::vector<RuleViolation> out;
  const double span_limit = max_span(cfg.thickness, cal);

  for (const auto& comp : board.components) {
    const PackageSpec* pkg = lib.find(comp.package);
    if (pkg == nullptr) continue;  // parse layer reports unknown packages

    if (pkg->cls == PackageClass::TwoTerminal) {
      constexpr double kDimEps = 1e-9;
      if (pkg->body_l < kMinTabLength - kDimEps || pkg->body_w < kMinTabWidth - kDimEps) {
        out.push_back({"R1", Severity::Error, comp.ref_des,
                       "package '" + pkg->name +
                           "' is below the smallest package validated for flexible tabs",
                       std::min(pkg->body_l / kMinTabLength, pkg->body_w / kMinTabWidth),
                       1.0});
      }
      if (!cfg.profile.tabs_supported) {
        out.push_back({"R6", Severity::Error, comp.ref_des,
                       "flexible tabs cannot be fabricated with profile '" +
                           std::string(material_kind_name(cfg.profile.kind)) + "'",
                       0.0, 0.0});
      }
    }

    if (pkg->is_ic() && pkg->pin_pitch > 0.0 && pkg->pin_pitch < kMinValidatedPitch) {
      out.push_back({"R2", Severity::Warning, comp.ref_des,
                     "pin pitch below the validated minimum", pkg->pin_pitch,
                     kMinValidatedPitch});
    }

    for (const auto& pad : pkg->pads) {
      double area = pad.rect.w * pad.rect.h;
      if (area < kMinValidatedPadArea) {
        out.push_back({"R3", Severity::Warning, comp.ref_des + "/" + pad.name,
                       "pad contact area below the validated minimum", area,
                       kMinValidatedPadArea});
        break;  // one report per component is enough
      }
    }

    if (pkg->cls == PackageClass::IcBottomPad && !pkg->raised_pad_required) {
      out.push_back({"R5", Severity::Error, comp.ref_des,
                     "bottom-pad package '" + pkg->name +
                         "' must require raised board pads to reach its contacts",
                     0.0, 0.0});
    }
  }

  for (const auto& pad : board.free_pads) {
    double area = pad.rect.w * pad.rect.h;
    if (area < kMinValidatedPadArea) {
      out.push_back({"R3", Severity::Warning, "free-pad",
                     "pad contact area below the validated minimum", area,
                     kMinValidatedPadArea});
      break;
    }
  }

  for (const auto& cert : plan.coverage) {
    if (cert.span > span_limit + 1e-9) {
      out.push_back({"R4", Severity::Error, cert.ref_des,
                     "certified bolt span exceeds the thickness limit", cert.span,
                     span_limit});
    }
  }

  // Geometry-dependent rules share the pipeline's cavity list.
  auto cavities = board_cavities(board, lib, cfg.profile, /*lenient=*/true);

  for (std::size_t h = 0; h < plan.holes.size(); ++h) {
    const BoltHole& hole = plan.holes[h];
    double radius = 0.5 * hole.diameter;
    const std::string subject = "hole " + std::to_string(h);
    double worst = 1e300;
    std::string worst_against;
    for (const auto& comp : board.components) {
      const PackageSpec* pkg = lib.find(comp.package);
      if (pkg == nullptr) continue;
      for (const auto& ring : component_pad_rings(*pkg, comp)) {
        double c = clearance_to_ring(hole.position, radius, ring);
        if (c < worst) {
          worst = c;
          worst_against = "pad of " + comp.ref_des;
        }
      }
    }
    for (const auto& pad : board.free_pads) {
      double c = clearance_to_ring(hole.position, radius, pad.rect.corners());
      if (c < worst) {
        worst = c;
        worst_against = "free pad";
      }
    }
    for (const auto& solid : cavities) {
      for (const auto& pocket : solid.pockets) {
        double c = clearance_to_ring(hole.position, radius, pocket.plan);
        if (c < worst) {
          worst = c;
          worst_against = "cavity of " + solid.ref_des;
        }
      }
    }
    if (worst < kHoleClearance - 1e-9) {
      out.push_back({"R7", Severity::Error, subject,
                     "insufficient wall to " + worst_against, worst, kHoleClearance});
    }
  }

  for (const auto& solid : cavities) {
    for (const auto& pocket : solid.pockets) {
      if (pocket.through) continue;
      double ceiling_material = cfg.thickness - pocket.ceiling_z;
      if (ceiling_material < kMinCavityCeiling - 1e-9) {
        out.push_back({"R8", Severity::Error, solid.ref_des,
                       "cavity ceiling is too thin to print", ceiling_material,
                       kMinCavityCeiling});
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const RuleViolation& a, const RuleViolation& b) {
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    return a.subject < b.subject;
  });
  return out;
}

std::size_t count_errors(const std::vector<RuleViolation>& violations) {
  std::size_t n = 0;
  for (const auto& v : violations) {
    if (v.severity == Severity::Error) ++n;
  }
  return n;
}

std::string drc_text(const std::vector<RuleViolation>& violations, bool tsv) {
  std::ostringstream out;
  if (tsv) {
    for (const auto& v : violations) {
      out << v.rule_id << '\t' << severity_name(v.severity) << '\t' << v.subject
          << '\t' << v.message << '\t' << format_double(v.measured) << '\t'
          << format_double(v.limit) << '\n';
    }
    return out.str();
  }
  out << "design-rule check: " << violations.size() << " finding(s), "
      << count_errors(violations) << " error(s)\n";
  for (const auto& v : violations) {
    out << "  [" << v.rule_id << "/" << severity_name(v.severity) << "] " << v.subject
        << ": " << v.message << " (measured " << format_double(v.measured)
        << ", limit " << format_double(v.limit) << ")\n";
  }
  return out.str();
}

ResistanceEstimate estimate_contact_resistance(const BoardDesign& board,
                                               const LibraryFile& lib,
                                               const std::string& net) {
  bool known = false;
  int contacts = 0;
  for (const auto& comp : board.components) {
    for (const auto& [pad, bound_net] : comp.nets_by_pad) {
      if (bound_net == net) {
        known = true;
        ++contacts;
      }
    }
  }
  for (const auto& pad : board.free_pads) {
    if (!pad.net.empty() && pad.net == net) known = true;
  }
  if (!known) raise(ErrorCode::UnknownNet, "net '" + net + "' does not exist");
  (void)lib;
  ResistanceEstimate est;
  est.contacts = contacts;
  est.mean = kContactResistanceMean * contacts;
  est.sigma = kContactResistanceSigma * std::sqrt(static_cast<double>(contacts));
  return est;
}

AssemblyReport make_assembly_report(const BoardDesign& board, const LibraryFile& lib,
                                    const BoltPlan& plan, const SpanCalibration& cal) {
  AssemblyReport report;
  report.board_name = board.name;
  report.bolt_count = plan.holes.size();
  report.calibrated = !cal.is_default;

  std::map<std::string, std::size_t> by_class;
  for (const auto& hole : plan.holes) {
    if (hole.origin == HoleOrigin::Shared) {
      ++report.shared_bolts;
      continue;
    }
    const ComponentInstance* comp = board.find(hole.ref_des);
    const PackageSpec* pkg = comp != nullptr ? lib.find(comp->package) : nullptr;
    ++by_class[pkg != nullptr ? package_class_name(pkg->cls) : "unknown"];
  }
  report.bolts_by_class.assign(by_class.begin(), by_class.end());

  std::set<std::string> nets;
  for (const auto& comp : board.components) {
    for (const auto& [pad, net] : comp.nets_by_pad) nets.insert(net);
    const PackageSpec* pkg = lib.find(comp.package);
    if (pkg != nullptr && pkg->cls == PackageClass::IcBottomPad &&
        pkg->raised_pad_required) {
      report.raised_pad_refs.push_back(comp.ref_des);
    }
  }
  std::sort(report.raised_pad_refs.begin(), report.raised_pad_refs.end());
  for (const auto& net : nets) {
    report.net_resistance.emplace_back(net,
                                       estimate_contact_resistance(board, lib, net));
  }
  return report;
}

std::string report_text(const AssemblyReport& report, bool tsv) {
  std::ostringstream out;
  if (tsv) {
    out << "board\t" << report.board_name << '\n';
    out << "bolts\t" << report.bolt_count << '\n';
    out << "bolts-shared\t" << report.shared_bolts << '\n';
    for (const auto& [cls, n] : report.bolts_by_class) {
      out << "bolts-" << cls << '\t' << n << '\n';
    }
    out << "torque-nm\t" << format_double(report.torque_nm) << '\n';
    out << "calibration\t" << (report.calibrated ? "CALIBRATED" : "UNCALIBRATED") << '\n';
    for (const auto& ref : report.raised_pad_refs) {
      out << "raised-pads\t" << ref << '\n';
    }
    for (const auto& [net, est] : report.net_resistance) {
      out << "net\t" << net << '\t' << format_double(est.mean) << '\t'
          << format_double(est.sigma) << '\t' << est.contacts << '\n';
    }
    return out.str();
  }
  out << "assembly report for '" << report.board_name << "'\n";
  out << "  bolts: " << report.bolt_count << " (" << report.shared_bolts << " shared";
  for (const auto& [cls, n] : report.bolts_by_class) {
    out << ", " << n << ' ' << cls;
  }
  out << ")\n";
  out << "  assembly torque: " << format_double(report.torque_nm)
      << " N*m per nut, do not overtighten\n";
  out << "  span calibration: "
      << (report.calibrated ? "CALIBRATED (user table)"
                            : "UNCALIBRATED (built-in linear model)")
      << '\n';
  if (!report.raised_pad_refs.empty()) {
    out << "  raised board pads required under:";
    for (const auto& ref : report.raised_pad_refs) out << ' ' << ref;
    out << '\n';
  }
  if (!report.net_resistance.empty()) {
    out << "  estimated added series resistance per net (model, not a measurement):\n";
    for (const auto& [net, est] : report.net_resistance) {
      out << "    " << net << ": " << format_double(est.mean) << " ohm (sigma "
          << format_double(est.sigma) << ", " << est.contacts << " contact(s))\n";
    }
  }
  return out.str();
}

}  // namespace hf
