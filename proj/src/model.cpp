#include "hf/model.hpp"

#include <algorithm>

namespace hf {

const char* package_class_name(PackageClass cls) {
  switch (cls) {
    case PackageClass::TwoTerminal: return "two-terminal";
    case PackageClass::IcExtendedPin: return "ic-extended-pin";
    case PackageClass::IcBottomPad: return "ic-bottom-pad";
    case PackageClass::Custom: return "custom";
  }
  return "?";
}

std::optional<PackageClass> package_class_from_name(const std::string& name) {
  if (name == "two-terminal") return PackageClass::TwoTerminal;
  if (name == "ic-extended-pin") return PackageClass::IcExtendedPin;
  if (name == "ic-bottom-pad") return PackageClass::IcBottomPad;
  if (name == "custom") return PackageClass::Custom;
  return std::nullopt;
}

std::vector<Point2> PackageSpec::body_ring_local() const {
  Rect body{{0.0, 0.0}, body_l, body_w};
  return body.corners();
}

std::optional<std::string> validate_package(const PackageSpec& pkg) {
  if (pkg.name.empty()) return "package name is empty";
  if (pkg.body_l <= 0.0 || pkg.body_w <= 0.0 || pkg.body_t <= 0.0)
    return "body dimensions must be positive";
  if (pkg.is_ic() && pkg.bolt_offsets.empty())
    return "IC package must pre-allocate bolt holes";
  if (!pkg.is_ic() && !pkg.bolt_offsets.empty())
    return "bolt offsets are only allowed on IC packages";
  if (pkg.raised_pad_required && pkg.cls != PackageClass::IcBottomPad)
    return "raised-pad flag is only valid for bottom-pad ICs";
  if (pkg.cls == PackageClass::TwoTerminal && pkg.pads.size() != 2)
    return "two-terminal package must have exactly 2 pads";
  if (pkg.cls == PackageClass::IcExtendedPin && pkg.pads.empty())
    return "extended-pin IC must list its pin-row rectangles";
  if (pkg.cls == PackageClass::IcBottomPad && pkg.pads.empty())
    return "bottom-pad IC must list its pads";
  for (const auto& pad : pkg.pads) {
    if (pad.rect.w <= 0.0 || pad.rect.h <= 0.0) return "pad '" + pad.name + "' has non-positive size";
    if (pad.name.empty()) return "pad with empty name";
  }
  for (std::size_t i = 0; i < pkg.pads.size(); ++i) {
    for (std::size_t j = i + 1; j < pkg.pads.size(); ++j) {
      if (pkg.pads[i].name == pkg.pads[j].name)
        return "duplicate pad name '" + pkg.pads[i].name + "'";
    }
  }
  for (const auto& prism : pkg.cavity_prisms) {
    if (pkg.cls != PackageClass::Custom) return "cavity prisms are only valid for custom packages";
    if (prism.plan.size() < 3) return "cavity prism needs at least 3 vertices";
    if (ring_signed_area(prism.plan) <= 0.0) return "cavity prism plan must be counter-clockwise";
    if (!prism.through && prism.depth <= 0.0) return "cavity prism depth must be positive";
  }
  for (std::size_t i = 0; i < pkg.cavity_prisms.size(); ++i) {
    for (std::size_t j = i + 1; j < pkg.cavity_prisms.size(); ++j) {
      Polygon2 a{pkg.cavity_prisms[i].plan, {}};
      Polygon2 b{pkg.cavity_prisms[j].plan, {}};
      if (polygons_overlap(a, b)) return "cavity prisms overlap";
    }
  }
  return std::nullopt;
}

const ComponentInstance* BoardDesign::find(const std::string& ref_des) const {
  for (const auto& comp : components) {
    if (comp.ref_des == ref_des) return &comp;
  }
  return nullptr;
}

const char* material_kind_name(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::Resin: return "resin";
    case MaterialKind::FdmPla: return "fdm-pla";
    case MaterialKind::CncMdf: return "cnc-mdf";
  }
  return "?";
}

std::optional<MaterialKind> material_kind_from_name(const std::string& name) {
  if (name == "resin") return MaterialKind::Resin;
  if (name == "fdm-pla") return MaterialKind::FdmPla;
  if (name == "cnc-mdf") return MaterialKind::CncMdf;
  return std::nullopt;
}

MaterialProfile MaterialProfile::resin() { return {MaterialKind::Resin, true, 0.8}; }
MaterialProfile MaterialProfile::fdm_pla() { return {MaterialKind::FdmPla, false, 1.2}; }
MaterialProfile MaterialProfile::cnc_mdf() { return {MaterialKind::CncMdf, false, 2.0}; }

MaterialProfile MaterialProfile::from_kind(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::Resin: return resin();
    case MaterialKind::FdmPla: return fdm_pla();
    case MaterialKind::CncMdf: return cnc_mdf();
  }
  return resin();
}

std::vector<std::vector<Point2>> component_pad_rings(const PackageSpec& pkg,
                                                     const ComponentInstance& comp) {
  std::vector<std::vector<Point2>> rings;
  rings.reserve(pkg.pads.size());
  for (const auto& pad : pkg.pads) {
    rings.push_back(rect_ring(pad.rect, comp.placement.position, comp.placement.rotation));
  }
  return rings;
}

std::vector<Point2> component_body_ring(const PackageSpec& pkg,
                                        const ComponentInstance& comp) {
  return transform_points(pkg.body_ring_local(), comp.placement.position,
                          comp.placement.rotation);
}

}  // namespace hf
