#include "hf/cavity.hpp"

#include <algorithm>
#include <cmath>

#include "hf/errors.hpp"

namespace hf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double tab_slope_run() {
  // Horizontal run of the wedge underside between ceiling and apex.
  double drop = 2.0 * kTabInterference;  // ceiling (t+0.1) down to apex (t-0.1)
  return drop / std::tan(30.0 * kPi / 180.0);
}

Rect bar_rect_local(const PadRect& row) {
  // Grow away from the body so the bar presses pins, never the enclosure,
  // plus a small margin along the row.
  Rect r = row.rect;
  double dx = r.center.x, dy = r.center.y;
  bool along_x = r.w >= r.h;  // row runs along x, offset from body in y
  if (along_x) {
    r.w += 2.0 * kBarSideMargin;
    r.h += kBarOverhang;
    r.center.y += (dy >= 0.0 ? 0.5 : -0.5) * kBarOverhang;
  } else {
    r.h += 2.0 * kBarSideMargin;
    r.w += kBarOverhang;
    r.center.x += (dx >= 0.0 ? 0.5 : -0.5) * kBarOverhang;
  }
  return r;
}

Rect hull_rect(const std::vector<Rect>& rects) {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const Rect& r : rects) {
    x0 = std::min(x0, r.center.x - 0.5 * r.w);
    y0 = std::min(y0, r.center.y - 0.5 * r.h);
    x1 = std::max(x1, r.center.x + 0.5 * r.w);
    y1 = std::max(y1, r.center.y + 0.5 * r.h);
  }
  return Rect{{0.5 * (x0 + x1), 0.5 * (y0 + y1)}, x1 - x0, y1 - y0};
}

Rect inflate(Rect r, double d) {
  r.w += 2.0 * d;
  r.h += 2.0 * d;
  return r;
}

}  // namespace

TabSpec tab_dims(const PackageSpec& pkg) {
  if (pkg.cls != PackageClass::TwoTerminal)
    raise(ErrorCode::InvalidArgument,
          "tab dimensions are defined for two-terminal packages only");
  constexpr double kDimEps = 1e-9;
  if (pkg.body_l < kMinTabLength - kDimEps || pkg.body_w < kMinTabWidth - kDimEps)
    raise(ErrorCode::PackageTooSmall,
          "package '" + pkg.name + "' is below the smallest printable tab size");
  TabSpec spec;
  spec.thickness = pkg.body_t;
  spec.slope_deg = 30.0;
  spec.width = 0.6 * pkg.body_w;
  spec.length = 0.45 * pkg.body_l;
  spec.height = pkg.body_t + kTabInterference;
  return spec;
}

Rect cavity_footprint_local(const PackageSpec& pkg) {
  switch (pkg.cls) {
    case PackageClass::TwoTerminal:
    case PackageClass::IcBottomPad:
      return inflate(Rect{{0.0, 0.0}, pkg.body_l, pkg.body_w}, kFitClearance);
    case PackageClass::IcExtendedPin: {
      std::vector<Rect> rects{Rect{{0.0, 0.0}, pkg.body_l, pkg.body_w}};
      for (const auto& row : pkg.pads) {
        rects.push_back(row.rect);
        rects.push_back(bar_rect_local(row));
      }
      return inflate(hull_rect(rects), kFitClearance);
    }
    case PackageClass::Custom: {
      std::vector<Rect> rects;
      for (const auto& prism : pkg.cavity_prisms) {
        double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
        for (const auto& p : prism.plan) {
          x0 = std::min(x0, p.x);
          y0 = std::min(y0, p.y);
          x1 = std::max(x1, p.x);
          y1 = std::max(y1, p.y);
        }
        rects.push_back(Rect{{0.5 * (x0 + x1), 0.5 * (y0 + y1)}, x1 - x0, y1 - y0});
      }
      if (rects.empty()) return Rect{{0.0, 0.0}, pkg.body_l, pkg.body_w};
      return hull_rect(rects);
    }
  }
  return Rect{};
}

std::optional<GrooveRectsLocal> groove_rects_local(const PackageSpec& pkg) {
  if (!pkg.is_ic()) return std::nullopt;
  // The isolated island must carry the pocket and the package's bolts.
  Rect pocket = cavity_footprint_local(pkg);
  std::vector<Rect> items{pocket};
  for (Point2 b : pkg.bolt_offsets) {
    items.push_back(Rect{b, 1.0, 1.0});  // bolt disk bounding box at 1 mm scale
  }
  Rect inner = inflate(hull_rect(items), 1.3);  // printable wall around bolts/pocket
  Rect outer = inflate(inner, kGrooveWidth);
  return GrooveRectsLocal{inner, outer};
}

CavitySolid cavity_for(const ComponentInstance& comp, const PackageSpec& pkg,
                       const MaterialProfile& profile) {
  CavitySolid solid;
  solid.ref_des = comp.ref_des;
  const Point2 pos = comp.placement.position;
  const double rot = comp.placement.rotation;

  auto pocket_from_rect = [&](const Rect& r, double ceiling, bool through) {
    CavityPocket pocket;
    pocket.plan = rect_ring(r, pos, rot);
    pocket.ceiling_z = ceiling;
    pocket.through = through;
    return pocket;
  };

  switch (pkg.cls) {
    case PackageClass::TwoTerminal: {
      if (!profile.tabs_supported)
        raise(ErrorCode::UnsupportedOnProfile,
              "component '" + comp.ref_des + "': flexible tabs require the resin profile (" +
                  std::string(material_kind_name(profile.kind)) + " cannot print them)");
      TabSpec spec = tab_dims(pkg);
      solid.kind = CavityKind::TwoTerminalCavity;
      solid.tab_spec = spec;
      Rect pocket = cavity_footprint_local(pkg);
      solid.pockets.push_back(pocket_from_rect(pocket, spec.height, false));

      // One wedge per end wall, hanging from the ceiling, apex at t - 0.1.
      const double wall_x = 0.5 * pkg.body_l + kFitClearance;
      const double run = tab_slope_run();
      const double tip_z = pkg.body_t - kTabInterference;
      const double half_w = 0.5 * spec.width;
      for (int side = 0; side < 2; ++side) {
        double sgn = side == 0 ? -1.0 : 1.0;
        double x_tip = sgn * (wall_x - spec.length);  // protrudes L from the wall
        double x_hinge = sgn * (wall_x - spec.length + run);
        std::vector<Point2> local = {{x_hinge, -half_w}, {x_hinge, half_w},
                                     {x_tip, -half_w}, {x_tip, half_w}};
        auto pts = transform_points(local, pos, rot);
        TabWedge wedge;
        wedge.hinge_a = pts[0];
        wedge.hinge_b = pts[1];
        wedge.tip_a = pts[2];
        wedge.tip_b = pts[3];
        wedge.ceiling_z = spec.height;
        wedge.tip_z = tip_z;
        solid.tabs.push_back(wedge);
      }
      break;
    }
    case PackageClass::IcExtendedPin: {
      solid.kind = CavityKind::PressBarCavity;
      Rect pocket = cavity_footprint_local(pkg);
      solid.pockets.push_back(pocket_from_rect(pocket, pkg.body_t + kFitClearance, false));
      for (const auto& row : pkg.pads) {
        PressBar bar;
        bar.plan = rect_ring(bar_rect_local(row), pos, rot);
        bar.bottom_z = kPinPressHeight;
        solid.bars.push_back(std::move(bar));
      }
      auto rects = groove_rects_local(pkg);
      GrooveRing ring;
      ring.inner = rect_ring(rects->inner, pos, rot);
      ring.outer = rect_ring(rects->outer, pos, rot);
      solid.groove = std::move(ring);
      break;
    }
    case PackageClass::IcBottomPad: {
      solid.kind = CavityKind::NegativePocket;
      solid.raised_pad_required = pkg.raised_pad_required;
      // Exact negative volume: ceiling presses the rated body top.
      Rect pocket = cavity_footprint_local(pkg);
      solid.pockets.push_back(pocket_from_rect(pocket, pkg.body_t, false));
      auto rects = groove_rects_local(pkg);
      GrooveRing ring;
      ring.inner = rect_ring(rects->inner, pos, rot);
      ring.outer = rect_ring(rects->outer, pos, rot);
      solid.groove = std::move(ring);
      break;
    }
    case PackageClass::Custom: {
      if (pkg.cavity_prisms.empty())
        raise(ErrorCode::MissingCavityModel,
              "component '" + comp.ref_des + "': custom package '" + pkg.name +
                  "' has no cavity model");
      solid.kind = CavityKind::CustomSolid;
      for (const auto& prism : pkg.cavity_prisms) {
        CavityPocket pocket;
        pocket.plan = transform_points(prism.plan, pos, rot);
        if (ring_signed_area(pocket.plan) < 0.0)
          std::reverse(pocket.plan.begin(), pocket.plan.end());
        pocket.ceiling_z = prism.depth;
        pocket.through = prism.through;
        solid.pockets.push_back(std::move(pocket));
      }
      break;
    }
  }
  return solid;
}

}  // namespace hf
