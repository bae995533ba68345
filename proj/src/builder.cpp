#include "hf/builder.hpp"

#include <algorithm>
#include <cmath>

#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWallEps = 1e-3;  // features must clear the outline by this

std::vector<Point2> circle_ring(Point2 center, double radius, int segments) {
  std::vector<Point2> ring;
  ring.reserve(segments);
  for (int k = 0; k < segments; ++k) {
    double a = 2.0 * kPi * k / segments;
    ring.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return ring;
}

bool ring_inside_polygon(const std::vector<Point2>& ring, const Polygon2& poly,
                         double margin) {
  for (const auto& p : ring) {
    if (!polygon_contains(poly, p)) return false;
    if (polygon_boundary_distance(poly, p) < margin) return false;
  }
  // No boundary crossings either.
  const auto& outer = poly.outer;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    for (std::size_t j = 0; j < outer.size(); ++j) {
      if (segments_intersect(ring[i], ring[(i + 1) % ring.size()], outer[j],
                             outer[(j + 1) % outer.size()]))
        return false;
    }
  }
  return true;
}

struct PlanFeature {
  const CavitySolid* solid = nullptr;
  const CavityPocket* pocket = nullptr;
  Polygon2 poly;
};

}  // namespace

void validate_config(const HousingConfig& cfg) {
  if (cfg.thickness < kMinHousingThickness || cfg.thickness > kMaxHousingThickness)
    raise(ErrorCode::InvalidArgument,
          "housing thickness " + format_double(cfg.thickness) +
              " outside the calibrated 1..5 mm range");
  if (cfg.bolt_diameter < 1.0)
    raise(ErrorCode::InvalidArgument, "bolt diameter must be at least 1 mm");
  if (cfg.circle_segments < 8)
    raise(ErrorCode::InvalidArgument, "circle tessellation needs at least 8 segments");
}

std::vector<CavitySolid> board_cavities(const BoardDesign& board,
                                        const LibraryFile& lib,
                                        const MaterialProfile& profile,
                                        bool lenient) {
  std::vector<CavitySolid> solids;
  for (const auto& comp : board.components) {
    const PackageSpec* pkg = lib.find(comp.package);
    if (pkg == nullptr)
      raise(ErrorCode::UnknownPackage,
            "component '" + comp.ref_des + "' references unknown package '" +
                comp.package + "'");
    try {
      solids.push_back(cavity_for(comp, *pkg, profile));
    } catch (const Error& err) {
      if (!lenient || (err.code() != ErrorCode::PackageTooSmall &&
                       err.code() != ErrorCode::UnsupportedOnProfile))
        throw;
      // Plain clearance pocket stand-in; the DRC reports the rule violation.
      CavitySolid fallback;
      fallback.kind = CavityKind::TwoTerminalCavity;
      fallback.ref_des = comp.ref_des;
      CavityPocket pocket;
      pocket.plan = rect_ring(cavity_footprint_local(*pkg), comp.placement.position,
                              comp.placement.rotation);
      pocket.ceiling_z = pkg->body_t + kFitClearance;
      solids.push_back(std::move(fallback));
      solids.back().pockets.push_back(std::move(pocket));
    }
  }
  return solids;
}

TriMesh build_housing(const BoardDesign& board, const BoltPlan& plan,
                      const LibraryFile& lib, const HousingConfig& cfg) {
  auto cavities = board_cavities(board, lib, cfg.profile, /*lenient=*/false);
  return build_housing_with_cavities(board, plan, cavities, cfg);
}

TriMesh build_housing_with_cavities(const BoardDesign& board, const BoltPlan& plan,
                                    const std::vector<CavitySolid>& cavities,
                                    const HousingConfig& cfg) {
  validate_config(cfg);
  if (auto reason = validate_polygon(board.outline))
    raise(ErrorCode::BooleanFailure, "board outline: " + *reason);
  const double T = cfg.thickness;

  // Assemble plan-level features and run the disjointness prechecks that make
  // the per-feature construction sound.
  std::vector<PlanFeature> pockets;
  std::vector<const CavitySolid*> grooves;
  for (const auto& solid : cavities) {
    for (const auto& pocket : solid.pockets) {
      PlanFeature f;
      f.solid = &solid;
      f.pocket = &pocket;
      f.poly.outer = pocket.plan;
      pockets.push_back(std::move(f));
    }
    if (solid.groove) grooves.push_back(&solid);
  }

  for (const auto& f : pockets) {
    if (!ring_inside_polygon(f.poly.outer, board.outline, kWallEps))
      raise(ErrorCode::BooleanFailure,
            "cavity of '" + f.solid->ref_des + "' crosses the board outline");
  }
  for (const CavitySolid* g : grooves) {
    if (!ring_inside_polygon(g->groove->outer, board.outline, kWallEps))
      raise(ErrorCode::BooleanFailure,
            "isolation groove of '" + g->ref_des + "' crosses the board outline");
  }
  for (std::size_t i = 0; i < pockets.size(); ++i) {
    for (std::size_t j = i + 1; j < pockets.size(); ++j) {
      if (pockets[i].solid == pockets[j].solid) continue;
      if (polygons_overlap(pockets[i].poly, pockets[j].poly))
        raise(ErrorCode::CavityOverlap, "cavities of '" + pockets[i].solid->ref_des +
                                            "' and '" + pockets[j].solid->ref_des +
                                            "' overlap");
    }
  }
  for (const CavitySolid* g : grooves) {
    Polygon2 outer{g->groove->outer, {}};
    for (const auto& f : pockets) {
      if (f.solid == g) continue;
      if (polygons_overlap(outer, f.poly))
        raise(ErrorCode::CavityOverlap, "isolation groove of '" + g->ref_des +
                                            "' overlaps cavity of '" +
                                            f.solid->ref_des + "'");
    }
    for (const CavitySolid* h : grooves) {
      if (h == g) continue;
      Polygon2 other{h->groove->outer, {}};
      if (polygons_overlap(outer, other))
        raise(ErrorCode::CavityOverlap, "isolation grooves of '" + g->ref_des +
                                            "' and '" + h->ref_des + "' overlap");
    }
  }

  // Bolt circles: classify against groove islands and reject any overlap with
  // pockets or groove rings.
  struct Shaft {
    std::vector<Point2> ring;  // CCW
    bool in_island = false;
    const CavitySolid* island = nullptr;
  };
  std::vector<Shaft> shafts;
  for (std::size_t h = 0; h < plan.holes.size(); ++h) {
    const BoltHole& hole = plan.holes[h];
    Shaft shaft;
    shaft.ring = circle_ring(hole.position, 0.5 * hole.diameter, cfg.circle_segments);
    if (!ring_inside_polygon(shaft.ring, board.outline, 0.0))
      raise(ErrorCode::BooleanFailure,
            "bolt hole " + std::to_string(h) + " leaves the board outline");
    Polygon2 disk{shaft.ring, {}};
    for (const auto& f : pockets) {
      if (polygons_overlap(disk, f.poly))
        raise(ErrorCode::BooleanFailure, "bolt hole " + std::to_string(h) +
                                             " intersects cavity of '" +
                                             f.solid->ref_des + "'");
    }
    for (const CavitySolid* g : grooves) {
      Polygon2 outer{g->groove->outer, {}};
      Polygon2 inner{g->groove->inner, {}};
      bool center_in_inner = point_in_ring(g->groove->inner, hole.position);
      if (center_in_inner) {
        if (!ring_inside_polygon(shaft.ring, inner, 0.0))
          raise(ErrorCode::BooleanFailure,
                "bolt hole " + std::to_string(h) + " crosses the groove of '" +
                    g->ref_des + "'");
        shaft.in_island = true;
        shaft.island = g;
      } else if (polygons_overlap(disk, outer)) {
        raise(ErrorCode::BooleanFailure,
              "bolt hole " + std::to_string(h) + " crosses the groove of '" +
                  g->ref_des + "'");
      }
    }
    for (std::size_t k = 0; k < shafts.size(); ++k) {
      if (polygons_overlap(disk, Polygon2{shafts[k].ring, {}}))
        raise(ErrorCode::BooleanFailure, "bolt holes " + std::to_string(k) + " and " +
                                             std::to_string(h) + " overlap");
    }
    shafts.push_back(std::move(shaft));
  }

  MeshBuilder mb;

  // Bottom face: outline minus every pocket opening and bolt shaft.
  {
    std::vector<std::vector<Point2>> holes;
    for (const auto& f : pockets) holes.push_back(reversed(f.poly.outer));
    for (const auto& s : shafts) holes.push_back(reversed(s.ring));
    mb.horizontal_face(board.outline.outer, holes, 0.0, /*normal_up=*/false);
  }

  // Top face: outline minus groove outers, through pockets, and bolt shafts
  // outside islands.
  {
    std::vector<std::vector<Point2>> holes;
    for (const CavitySolid* g : grooves) holes.push_back(reversed(g->groove->outer));
    for (const auto& f : pockets) {
      bool through = f.pocket->through || f.pocket->ceiling_z >= T - 1e-9;
      if (through) holes.push_back(reversed(f.poly.outer));
    }
    for (const auto& s : shafts) {
      if (!s.in_island) holes.push_back(reversed(s.ring));
    }
    mb.horizontal_face(board.outline.outer, holes, T, /*normal_up=*/true);
  }

  // Island top faces.
  for (const CavitySolid* g : grooves) {
    std::vector<std::vector<Point2>> holes;
    for (const auto& s : shafts) {
      if (s.island == g) holes.push_back(reversed(s.ring));
    }
    mb.horizontal_face(g->groove->inner, holes, T, /*normal_up=*/true);
  }

  // Groove floors and walls.
  for (const CavitySolid* g : grooves) {
    const GrooveRing& ring = *g->groove;
    mb.horizontal_face(ring.outer, {reversed(ring.inner)}, ring.web, /*normal_up=*/true);
    mb.wall_band(reversed(ring.outer), ring.web, T);  // solid outside the ring
    mb.wall_band(ring.inner, ring.web, T);            // island solid inside
  }

  // Outline side wall.
  mb.wall_band(board.outline.outer, 0.0, T);

  // Bolt shafts.
  for (const auto& s : shafts) {
    mb.wall_band(reversed(s.ring), 0.0, T);
  }

  // Pockets with their ceilings, press bars and tab wedges.
  for (const auto& f : pockets) {
    bool through = f.pocket->through || f.pocket->ceiling_z >= T - 1e-9;
    double ceiling = through ? T : f.pocket->ceiling_z;
    if (!through && ceiling <= 0.0)
      raise(ErrorCode::BooleanFailure,
            "cavity of '" + f.solid->ref_des + "' has a non-positive ceiling");
    mb.wall_band(reversed(f.poly.outer), 0.0, ceiling);
    if (through) continue;

    std::vector<std::vector<Point2>> ceiling_holes;
    for (const auto& bar : f.solid->bars) ceiling_holes.push_back(reversed(bar.plan));
    for (const auto& tab : f.solid->tabs) {
      ceiling_holes.push_back(
          reversed(std::vector<Point2>{tab.hinge_a, tab.hinge_b, tab.tip_b, tab.tip_a}));
    }
    // Bars and tabs belong to exactly one pocket; emit them with that pocket.
    mb.horizontal_face(f.poly.outer, ceiling_holes, ceiling, /*normal_up=*/false);

    for (const auto& bar : f.solid->bars) {
      mb.wall_band(bar.plan, bar.bottom_z, ceiling);
      mb.horizontal_face(bar.plan, {}, bar.bottom_z, /*normal_up=*/false);
    }

    for (const auto& tab : f.solid->tabs) {
      Vec3 ha{tab.hinge_a.x, tab.hinge_a.y, tab.ceiling_z};
      Vec3 hb{tab.hinge_b.x, tab.hinge_b.y, tab.ceiling_z};
      Vec3 ta_top{tab.tip_a.x, tab.tip_a.y, tab.ceiling_z};
      Vec3 tb_top{tab.tip_b.x, tab.tip_b.y, tab.ceiling_z};
      Vec3 ta_low{tab.tip_a.x, tab.tip_a.y, tab.tip_z};
      Vec3 tb_low{tab.tip_b.x, tab.tip_b.y, tab.tip_z};
      auto oriented = [&](Vec3 a, Vec3 b, Vec3 c, Vec3 out_dir) {
        Vec3 u{b.x - a.x, b.y - a.y, b.z - a.z};
        Vec3 v{c.x - a.x, c.y - a.y, c.z - a.z};
        Vec3 n{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
        if (n.x * out_dir.x + n.y * out_dir.y + n.z * out_dir.z < 0.0) std::swap(b, c);
        mb.triangle(a, b, c);
      };
      // Wedge placement is rotated with the component, so outward directions
      // are computed, not assumed axis-aligned.
      Point2 hinge_mid = 0.5 * (tab.hinge_a + tab.hinge_b);
      Point2 tip_mid = 0.5 * (tab.tip_a + tab.tip_b);
      Point2 protrude = tip_mid - hinge_mid;
      Vec3 tip_dir{protrude.x, protrude.y, 0.0};
      Point2 side = tab.hinge_a - tab.hinge_b;
      Vec3 side_a_dir{side.x, side.y, 0.0};
      Vec3 side_b_dir{-side.x, -side.y, 0.0};
      Vec3 down{0.0, 0.0, -1.0};
      // Sloped underside (solid above it), vertical tip face, two side walls.
      oriented(ha, hb, tb_low, down);
      oriented(ha, tb_low, ta_low, down);
      oriented(ta_low, tb_low, tb_top, tip_dir);
      oriented(ta_low, tb_top, ta_top, tip_dir);
      oriented(ha, ta_top, ta_low, side_a_dir);
      oriented(hb, tb_low, tb_top, side_b_dir);
    }
  }

  TriMesh mesh = mb.take();
  MeshDiagnostics diag = mesh_diagnostics(mesh);
  if (!diag.watertight || diag.components != 1 || diag.volume <= 0.0) {
    raise(ErrorCode::BooleanFailure,
          "housing construction produced an invalid solid (boundary edges " +
              std::to_string(diag.boundary_edges) + ", nonmanifold " +
              std::to_string(diag.nonmanifold_edges) + ", components " +
              std::to_string(diag.components) + ")");
  }
  return mesh;
}

}  // namespace hf
