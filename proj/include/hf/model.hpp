#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hf/geometry.hpp"

namespace hf {

enum class PackageClass { TwoTerminal, IcExtendedPin, IcBottomPad, Custom };

const char* package_class_name(PackageClass cls);
std::optional<PackageClass> package_class_from_name(const std::string& name);

/// Contact rectangle in the package-local frame. For two-terminal packages
/// these are the two terminal lands; for extended-pin ICs each entry is a
/// whole pin-row rectangle; for bottom-pad ICs each entry is one pad.
struct PadRect {
  std::string name;
  Rect rect;

  friend bool operator==(const PadRect&, const PadRect&) = default;
};

/// One explicit cavity prism of a custom package, extruded upward from the
/// board plane. depth >= housing thickness means a through cutout.
struct CavityPrism {
  bool through = false;
  double depth = 0.0;  // ignored when through
  std::vector<Point2> plan;  // CCW, package-local frame

  friend bool operator==(const CavityPrism&, const CavityPrism&) = default;
};

struct PackageSpec {
  std::string name;
  PackageClass cls = PackageClass::TwoTerminal;
  // Rated body dimensions: length, width, thickness.
  double body_l = 0.0;
  double body_w = 0.0;
  double body_t = 0.0;
  std::vector<PadRect> pads;
  std::vector<Point2> bolt_offsets;  // pre-allocated holes, IC classes only
  bool raised_pad_required = false;  // bottom-pad ICs only
  double pin_pitch = 0.0;            // 0 = not applicable
  std::vector<CavityPrism> cavity_prisms;  // custom class only

  bool is_ic() const {
    return cls == PackageClass::IcExtendedPin || cls == PackageClass::IcBottomPad;
  }

  /// Rated body footprint as a local CCW rectangle ring.
  std::vector<Point2> body_ring_local() const;

  friend bool operator==(const PackageSpec&, const PackageSpec&) = default;
};

/// Returns a reason when the entry violates an invariant, nullopt when valid.
std::optional<std::string> validate_package(const PackageSpec& pkg);

struct Placement {
  Point2 position;        // component center, board frame
  double rotation = 0.0;  // CCW degrees; quarter turns are exact

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct ComponentInstance {
  std::string ref_des;
  std::string package;  // resolved against the library by name
  Placement placement;
  std::string part_number;
  std::map<std::string, std::string> nets_by_pad;

  friend bool operator==(const ComponentInstance&, const ComponentInstance&) = default;
};

struct FreePad {
  Rect rect;  // board frame
  std::string net;

  friend bool operator==(const FreePad&, const FreePad&) = default;
};

struct BoardDesign {
  std::string name;
  Polygon2 outline;
  double thickness = 1.6;  // FR-4 substrate thickness
  std::vector<ComponentInstance> components;
  std::vector<FreePad> free_pads;

  const ComponentInstance* find(const std::string& ref_des) const;

  friend bool operator==(const BoardDesign&, const BoardDesign&) = default;
};

enum class MaterialKind { Resin, FdmPla, CncMdf };

const char* material_kind_name(MaterialKind kind);
std::optional<MaterialKind> material_kind_from_name(const std::string& name);

/// Fabrication capabilities per process. Sub-millimeter tab features print
/// only in resin.
struct MaterialProfile {
  MaterialKind kind = MaterialKind::Resin;
  bool tabs_supported = true;
  double min_wall = 0.8;

  static MaterialProfile resin();
  static MaterialProfile fdm_pla();
  static MaterialProfile cnc_mdf();
  static MaterialProfile from_kind(MaterialKind kind);
};

/// Pad rectangles of a component in the board frame (as CCW rings).
std::vector<std::vector<Point2>> component_pad_rings(const PackageSpec& pkg,
                                                     const ComponentInstance& comp);

/// Rated body footprint in the board frame.
std::vector<Point2> component_body_ring(const PackageSpec& pkg,
                                        const ComponentInstance& comp);

}  // namespace hf
