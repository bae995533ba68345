#include "hf/planner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "hf/cavity.hpp"
#include "hf/errors.hpp"
#include "hf/textio.hpp"

namespace hf {

namespace {

constexpr double kEps = 1e-9;

struct Obstacle {
  Polygon2 poly;
  bool annulus = false;     // groove ring: illegal between outer and inner
  Polygon2 annulus_inner;   // valid when annulus
};

/// Everything the planner needs to test a candidate hole position.
struct Legality {
  const Polygon2* outline = nullptr;
  std::vector<Obstacle> obstacles;
  double radius = 0.5;

  bool strictly_inside(const Polygon2& poly, Point2 p) const {
    if (!point_in_ring(poly.outer, p)) return false;
    return polygon_boundary_distance(poly, p) > kEps;
  }

  bool ok(Point2 p, const std::vector<BoltHole>& holes, double spacing) const {
    if (!polygon_contains(*outline, p)) return false;
    if (polygon_boundary_distance(*outline, p) < radius - kEps) return false;
    for (const auto& obs : obstacles) {
      if (obs.annulus) {
        if (strictly_inside(obs.poly, p) && !strictly_inside(obs.annulus_inner, p) &&
            !(point_in_ring(obs.annulus_inner.outer, p)))
          return false;
      } else if (strictly_inside(obs.poly, p)) {
        return false;
      }
    }
    for (const auto& hole : holes) {
      if (distance(hole.position, p) < spacing - kEps) return false;
    }
    return true;
  }
};

struct Interval {
  double lo, hi;
};

/// Sorted disjoint closed intervals minus a set of open intervals.
std::vector<Interval> subtract_open(const std::vector<Interval>& base,
                                    const std::vector<Interval>& cuts) {
  std::vector<Interval> result = base;
  for (const auto& cut : cuts) {
    std::vector<Interval> next;
    for (const auto& iv : result) {
      if (cut.hi <= iv.lo + kEps || cut.lo >= iv.hi - kEps) {
        next.push_back(iv);
        continue;
      }
      // Cuts are open: their endpoints stay legal (an obstacle edge is still
      // a legal center).
      if (cut.lo > iv.lo) next.push_back({iv.lo, std::min(cut.lo, iv.hi)});
      if (cut.hi < iv.hi) next.push_back({std::max(cut.hi, iv.lo), iv.hi});
    }
    result = std::move(next);
  }
  std::sort(result.begin(), result.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return result;
}

struct TwoTerminalComp {
  const ComponentInstance* comp = nullptr;
  Point2 center;
  Point2 axis;  // unit direction of the length axis
};

bool pair_covers(Point2 center, Point2 a, Point2 b, double span_limit) {
  if (distance(a, b) > span_limit + kEps) return false;
  return point_segment_distance(center, a, b) <= kCoverageRadius + kEps;
}

bool is_covered(Point2 center, const std::vector<BoltHole>& holes, double span_limit) {
  for (std::size_t i = 0; i < holes.size(); ++i) {
    for (std::size_t j = i + 1; j < holes.size(); ++j) {
      if (pair_covers(center, holes[i].position, holes[j].position, span_limit))
        return true;
    }
  }
  return false;
}

/// Legal windows along the line origin + t*dir for hole centers, accounting
/// for the outline margin, obstacle interiors and spacing to placed holes.
std::vector<Interval> line_windows(const Legality& ctx, Point2 origin, Point2 dir,
                                   const std::vector<BoltHole>& holes,
                                   double spacing) {
  std::vector<Interval> base;
  for (auto [lo, hi] : line_polygon_intervals(*ctx.outline, origin, dir)) {
    lo += ctx.radius;
    hi -= ctx.radius;
    if (hi > lo) base.push_back({lo, hi});
  }
  std::vector<Interval> cuts;
  for (const auto& obs : ctx.obstacles) {
    if (obs.annulus) {
      auto outer = line_polygon_intervals(obs.poly, origin, dir);
      auto inner = line_polygon_intervals(obs.annulus_inner, origin, dir);
      // Illegal where inside outer but not inside inner.
      std::vector<Interval> ring;
      for (auto [lo, hi] : outer) ring.push_back({lo, hi});
      std::vector<Interval> hole_iv;
      for (auto [lo, hi] : inner) hole_iv.push_back({lo, hi});
      for (const auto& iv : subtract_open(ring, hole_iv)) cuts.push_back(iv);
    } else {
      for (auto [lo, hi] : line_polygon_intervals(obs.poly, origin, dir))
        cuts.push_back({lo, hi});
    }
  }
  for (const auto& hole : holes) {
    Point2 rel = hole.position - origin;
    double along = dot(rel, dir);
    double perp = cross(dir, rel);
    if (std::abs(perp) < spacing) {
      double half = std::sqrt(spacing * spacing - perp * perp);
      cuts.push_back({along - half, along + half});
    }
  }
  return subtract_open(base, cuts);
}

/// Rightmost window point <= x that passes the exact predicate, or nullopt.
std::optional<double> rightmost_legal(const std::vector<Interval>& windows,
                                      double x, const Legality& ctx, Point2 origin,
                                      Point2 dir, const std::vector<BoltHole>& holes,
                                      double spacing, double above) {
  for (auto it = windows.rbegin(); it != windows.rend(); ++it) {
    if (it->lo > x) continue;
    double t = std::min(it->hi, x);
    while (t >= it->lo - kEps) {
      if (t <= above) return std::nullopt;  // windows are descending from here on
      Point2 p = origin + t * dir;
      if (ctx.ok(p, holes, spacing)) return t;
      // Window math should already agree with the predicate; nudge left a
      // touch to escape boundary rounding, then give up on this window.
      double t2 = t - 1e-6;
      if (t2 < it->lo) break;
      Point2 p2 = origin + t2 * dir;
      if (ctx.ok(p2, holes, spacing)) return t2;
      break;
    }
  }
  return std::nullopt;
}

std::optional<double> leftmost_legal(const std::vector<Interval>& windows,
                                     double x_min, double x_max, const Legality& ctx,
                                     Point2 origin, Point2 dir,
                                     const std::vector<BoltHole>& holes,
                                     double spacing) {
  for (const auto& iv : windows) {
    if (iv.hi < x_min) continue;
    double t = std::max(iv.lo, x_min);
    if (t > x_max) return std::nullopt;
    Point2 p = origin + t * dir;
    if (ctx.ok(p, holes, spacing)) return t;
    double t2 = t + 1e-6;
    if (t2 <= iv.hi && t2 <= x_max) {
      Point2 p2 = origin + t2 * dir;
      if (ctx.ok(p2, holes, spacing)) return t2;
    }
  }
  return std::nullopt;
}

struct Cluster {
  Point2 dir;     // unit axis
  Point2 origin;  // point on the cluster line
  std::vector<std::size_t> members;  // indices into the two-terminal list
};

}  // namespace

BoltPlan plan_bolts_seeded(const BoardDesign& board, const LibraryFile& lib,
                           double thickness, const SpanCalibration& cal,
                           double bolt_diameter,
                           const std::vector<BoltHole>& seed_holes) {
  const double span_limit = max_span(thickness, cal);
  const double radius = 0.5 * bolt_diameter;
  const double spacing = bolt_diameter + kMinWall;

  BoltPlan plan;
  plan.bolt_diameter = bolt_diameter;
  plan.max_span_allowed = span_limit;

  // Legality context: hole centers may not fall strictly inside cavity
  // footprints, pads, or groove rings, and the full disk stays on the board.
  Legality ctx;
  ctx.outline = &board.outline;
  ctx.radius = radius;
  std::vector<TwoTerminalComp> chips;
  for (const auto& comp : board.components) {
    const PackageSpec* pkg = lib.find(comp.package);
    if (pkg == nullptr)
      raise(ErrorCode::UnknownPackage,
            "component '" + comp.ref_des + "' references unknown package '" +
                comp.package + "'");
    Obstacle pocket;
    pocket.poly.outer = rect_ring(cavity_footprint_local(*pkg), comp.placement.position,
                                  comp.placement.rotation);
    ctx.obstacles.push_back(std::move(pocket));
    for (auto& ring : component_pad_rings(*pkg, comp)) {
      Obstacle pad;
      pad.poly.outer = std::move(ring);
      ctx.obstacles.push_back(std::move(pad));
    }
    if (auto groove = groove_rects_local(*pkg)) {
      Obstacle ring;
      ring.annulus = true;
      ring.poly.outer = rect_ring(groove->outer, comp.placement.position,
                                  comp.placement.rotation);
      ring.annulus_inner.outer = rect_ring(groove->inner, comp.placement.position,
                                           comp.placement.rotation);
      ctx.obstacles.push_back(std::move(ring));
    }
    if (pkg->cls == PackageClass::TwoTerminal) {
      Rotation rot(comp.placement.rotation);
      chips.push_back({&comp, comp.placement.position, rot.apply({1.0, 0.0})});
    }
  }
  for (const auto& pad : board.free_pads) {
    Obstacle obs;
    obs.poly.outer = pad.rect.corners();
    ctx.obstacles.push_back(std::move(obs));
  }

  // IC pre-allocated holes come in verbatim, transformed with the placement.
  for (const auto& comp : board.components) {
    const PackageSpec* pkg = lib.find(comp.package);
    if (!pkg->is_ic()) continue;
    auto pts = transform_points(pkg->bolt_offsets, comp.placement.position,
                                comp.placement.rotation);
    for (Point2 p : pts) {
      plan.holes.push_back({p, bolt_diameter, HoleOrigin::IcPreallocated, comp.ref_des});
    }
  }
  for (const auto& seed : seed_holes) {
    if (seed.origin == HoleOrigin::Shared) plan.holes.push_back(seed);
  }

  // Cluster two-terminal components by axis direction and line offset.
  std::vector<std::size_t> order(chips.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return chips[a].comp->ref_des < chips[b].comp->ref_des;
  });

  std::vector<Cluster> clusters;
  for (std::size_t idx : order) {
    Point2 axis = chips[idx].axis;
    if (axis.x < -kEps || (std::abs(axis.x) <= kEps && axis.y < 0.0)) {
      axis = {-axis.x, -axis.y};  // canonical sign
    }
    Point2 n{-axis.y, axis.x};
    double perp = dot(chips[idx].center, n);
    bool placed = false;
    for (auto& cluster : clusters) {
      if (std::abs(cluster.dir.x - axis.x) > 1e-9 ||
          std::abs(cluster.dir.y - axis.y) > 1e-9)
        continue;
      double cluster_perp = dot(cluster.origin, n);
      if (std::abs(cluster_perp - perp) <= 0.75) {
        cluster.members.push_back(idx);
        placed = true;
        break;
      }
    }
    if (!placed) {
      Cluster cluster;
      cluster.dir = axis;
      cluster.origin = perp * n;
      cluster.members.push_back(idx);
      clusters.push_back(std::move(cluster));
    }
  }

  // Greedy chain per cluster: stretch right up to the span limit, then slide
  // holes left as far as constraints allow. Deterministic throughout.
  for (auto& cluster : clusters) {
    std::sort(cluster.members.begin(), cluster.members.end(),
              [&](std::size_t a, std::size_t b) {
                return dot(chips[a].center, cluster.dir) < dot(chips[b].center, cluster.dir);
              });
    auto windows = [&]() {
      return line_windows(ctx, cluster.origin, cluster.dir, plan.holes, spacing);
    };

    std::vector<std::size_t> chain;  // indices into plan.holes
    double chain_last = -1e300;
    bool has_chain = false;

    auto first_uncovered = [&]() -> std::optional<std::size_t> {
      for (std::size_t idx : cluster.members) {
        if (!is_covered(chips[idx].center, plan.holes, span_limit)) return idx;
      }
      return std::nullopt;
    };

    int guard = 0;
    while (auto uncovered = first_uncovered()) {
      if (++guard > 10000)
        raise(ErrorCode::Infeasible,
              "component '" + chips[*uncovered].comp->ref_des +
                  "': bolt search did not converge");
      double u = dot(chips[*uncovered].center, cluster.dir);
      auto win = windows();
      bool restart = !has_chain || chain_last + span_limit < u - kCoverageRadius;
      std::optional<double> t;
      if (restart) {
        t = rightmost_legal(win, u + kCoverageRadius, ctx, cluster.origin, cluster.dir,
                            plan.holes, spacing, has_chain ? chain_last : -1e300);
      } else {
        t = rightmost_legal(win, chain_last + span_limit, ctx, cluster.origin,
                            cluster.dir, plan.holes, spacing, chain_last);
      }
      if (!t) {
        raise(ErrorCode::Infeasible,
              "component '" + chips[*uncovered].comp->ref_des +
                  "': no legal bolt position satisfies the span rule");
      }
      Point2 p = cluster.origin + *t * cluster.dir;
      plan.holes.push_back({p, bolt_diameter, HoleOrigin::Shared, {}});
      chain.push_back(plan.holes.size() - 1);
      chain_last = *t;
      has_chain = true;
    }

    // Slide pass: move each chain hole to the leftmost legal spot that keeps
    // spans within limit and every component covered.
    for (std::size_t ci = 0; ci < chain.size(); ++ci) {
      std::size_t hole_idx = chain[ci];
      BoltHole saved = plan.holes[hole_idx];
      double t_cur = dot(saved.position - cluster.origin, cluster.dir);
      double lo = -1e300;
      if (ci + 1 < chain.size()) {
        double t_next = dot(plan.holes[chain[ci + 1]].position - cluster.origin,
                            cluster.dir);
        lo = std::max(lo, t_next - span_limit);
      }
      if (ci + 1 == chain.size() && !cluster.members.empty()) {
        double t_max = dot(chips[cluster.members.back()].center, cluster.dir);
        lo = std::max(lo, t_max - kCoverageRadius);
      }
      if (ci > 0) {
        double t_prev = dot(plan.holes[chain[ci - 1]].position - cluster.origin,
                            cluster.dir);
        lo = std::max(lo, t_prev + spacing);
      }
      if (lo >= t_cur) continue;
      std::vector<BoltHole> others = plan.holes;
      others.erase(others.begin() + static_cast<long>(hole_idx));
      auto win = line_windows(ctx, cluster.origin, cluster.dir, others, spacing);
      auto t_new = leftmost_legal(win, lo, t_cur, ctx, cluster.origin, cluster.dir,
                                  others, spacing);
      if (!t_new || *t_new >= t_cur - kEps) continue;
      plan.holes[hole_idx].position = cluster.origin + *t_new * cluster.dir;
      bool still_covered = true;
      for (const auto& chip : chips) {
        if (!is_covered(chip.center, plan.holes, span_limit)) {
          still_covered = false;
          break;
        }
      }
      if (!still_covered) plan.holes[hole_idx] = saved;
    }
  }

  // Local minimality: drop any shared hole whose removal keeps full coverage.
  bool removed = true;
  while (removed) {
    removed = false;
    std::vector<std::size_t> shared;
    for (std::size_t i = 0; i < plan.holes.size(); ++i) {
      if (plan.holes[i].origin == HoleOrigin::Shared) shared.push_back(i);
    }
    std::sort(shared.begin(), shared.end(), [&](std::size_t a, std::size_t b) {
      const Point2 pa = plan.holes[a].position, pb = plan.holes[b].position;
      return pa.x != pb.x ? pa.x > pb.x : pa.y > pb.y;
    });
    for (std::size_t idx : shared) {
      std::vector<BoltHole> trial = plan.holes;
      trial.erase(trial.begin() + static_cast<long>(idx));
      bool all_covered = true;
      for (const auto& chip : chips) {
        if (!is_covered(chip.center, trial, span_limit)) {
          all_covered = false;
          break;
        }
      }
      if (all_covered) {
        plan.holes = std::move(trial);
        removed = true;
        break;
      }
    }
  }

  // Certificates: per component, the pair with the closest segment, then the
  // shortest span, then lowest indices.
  std::vector<const TwoTerminalComp*> sorted_chips;
  for (const auto& chip : chips) sorted_chips.push_back(&chip);
  std::sort(sorted_chips.begin(), sorted_chips.end(),
            [](const TwoTerminalComp* a, const TwoTerminalComp* b) {
              return a->comp->ref_des < b->comp->ref_des;
            });
  for (const TwoTerminalComp* chip : sorted_chips) {
    std::optional<CoverageCert> best;
    for (std::size_t i = 0; i < plan.holes.size(); ++i) {
      for (std::size_t j = i + 1; j < plan.holes.size(); ++j) {
        Point2 a = plan.holes[i].position, b = plan.holes[j].position;
        double span = distance(a, b);
        if (span > span_limit + kEps) continue;
        double d = point_segment_distance(chip->center, a, b);
        if (d > kCoverageRadius + kEps) continue;
        CoverageCert cert{chip->comp->ref_des, i, j, span, d};
        if (!best || d < best->center_distance - kEps ||
            (std::abs(d - best->center_distance) <= kEps && span < best->span - kEps)) {
          best = cert;
        }
      }
    }
    if (!best) {
      raise(ErrorCode::Infeasible,
            "component '" + chip->comp->ref_des + "': uncovered after planning");
    }
    plan.coverage.push_back(*best);
    plan.max_span_used = std::max(plan.max_span_used, best->span);
  }
  return plan;
}

BoltPlan plan_bolts(const BoardDesign& board, const LibraryFile& lib,
                    double thickness, const SpanCalibration& cal,
                    double bolt_diameter) {
  return plan_bolts_seeded(board, lib, thickness, cal, bolt_diameter, {});
}

std::vector<PlanViolation> verify_plan(const BoardDesign& board,
                                       const LibraryFile& lib, const BoltPlan& plan,
                                       double thickness, const SpanCalibration& cal) {
  std::vector<PlanViolation> out;
  const double span_limit = max_span(thickness, cal);
  const double spacing = plan.bolt_diameter + kMinWall;
  const double radius = 0.5 * plan.bolt_diameter;

  // Coverage, checked from scratch against all hole pairs.
  for (const auto& comp : board.components) {
    const PackageSpec* pkg = lib.find(comp.package);
    if (pkg == nullptr || pkg->cls != PackageClass::TwoTerminal) continue;
    bool covered = false;
    for (std::size_t i = 0; i < plan.holes.size() && !covered; ++i) {
      for (std::size_t j = i + 1; j < plan.holes.size() && !covered; ++j) {
        Point2 a = plan.holes[i].position, b = plan.holes[j].position;
        if (distance(a, b) > span_limit + kEps) continue;
        if (point_segment_distance(comp.placement.position, a, b) <=
            kCoverageRadius + kEps)
          covered = true;
      }
    }
    if (!covered) {
      out.push_back({"coverage", comp.ref_des,
                     "no hole pair within span and coverage radius", 0.0, span_limit});
    }
  }

  for (std::size_t i = 0; i < plan.holes.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.holes.size(); ++j) {
      double d = distance(plan.holes[i].position, plan.holes[j].position);
      if (d < spacing - kEps) {
        out.push_back({"spacing", "hole " + std::to_string(i) + "/" + std::to_string(j),
                       "holes closer than diameter + minimum wall", d, spacing});
      }
    }
  }

  for (std::size_t i = 0; i < plan.holes.size(); ++i) {
    Point2 p = plan.holes[i].position;
    const std::string subject = "hole " + std::to_string(i);
    if (!polygon_contains(board.outline, p) ||
        polygon_boundary_distance(board.outline, p) < radius - kEps) {
      out.push_back({"containment", subject, "hole leaves the board outline",
                     polygon_boundary_distance(board.outline, p), radius});
      continue;
    }
    for (const auto& comp : board.components) {
      const PackageSpec* pkg = lib.find(comp.package);
      if (pkg == nullptr) continue;
      Polygon2 pocket{rect_ring(cavity_footprint_local(*pkg), comp.placement.position,
                                comp.placement.rotation),
                      {}};
      auto strictly_inside = [&](const Polygon2& poly) {
        return point_in_ring(poly.outer, p) && polygon_boundary_distance(poly, p) > kEps;
      };
      if (strictly_inside(pocket)) {
        out.push_back({"containment", subject,
                       "hole center inside cavity footprint of " + comp.ref_des, 0.0, 0.0});
      }
      for (const auto& ring : component_pad_rings(*pkg, comp)) {
        Polygon2 pad{ring, {}};
        if (strictly_inside(pad)) {
          out.push_back({"containment", subject,
                         "hole center inside a pad of " + comp.ref_des, 0.0, 0.0});
        }
      }
      if (auto groove = groove_rects_local(*pkg)) {
        Polygon2 outer{rect_ring(groove->outer, comp.placement.position,
                                 comp.placement.rotation),
                       {}};
        Polygon2 inner{rect_ring(groove->inner, comp.placement.position,
                                 comp.placement.rotation),
                       {}};
        if (strictly_inside(outer) && !point_in_ring(inner.outer, p)) {
          out.push_back({"containment", subject,
                         "hole center inside isolation groove of " + comp.ref_des, 0.0,
                         0.0});
        }
      }
    }
    for (const auto& pad : board.free_pads) {
      Polygon2 poly{pad.rect.corners(), {}};
      if (point_in_ring(poly.outer, p) && polygon_boundary_distance(poly, p) > kEps) {
        out.push_back({"containment", subject, "hole center inside a free pad", 0.0, 0.0});
      }
    }
  }

  for (const auto& cert : plan.coverage) {
    if (cert.hole_a >= plan.holes.size() || cert.hole_b >= plan.holes.size()) {
      out.push_back({"certificate", cert.ref_des, "certificate references missing hole",
                     0.0, 0.0});
      continue;
    }
    const ComponentInstance* comp = board.find(cert.ref_des);
    if (comp == nullptr) {
      out.push_back({"certificate", cert.ref_des, "certificate for unknown component",
                     0.0, 0.0});
      continue;
    }
    Point2 a = plan.holes[cert.hole_a].position;
    Point2 b = plan.holes[cert.hole_b].position;
    double span = distance(a, b);
    if (span > span_limit + kEps) {
      out.push_back({"certificate", cert.ref_des, "certified span exceeds limit", span,
                     span_limit});
    }
    if (point_segment_distance(comp->placement.position, a, b) > kCoverageRadius + kEps) {
      out.push_back({"certificate", cert.ref_des,
                     "certified pair misses the component center",
                     point_segment_distance(comp->placement.position, a, b),
                     kCoverageRadius});
    }
  }

  std::sort(out.begin(), out.end(), [](const PlanViolation& a, const PlanViolation& b) {
    return a.rule != b.rule ? a.rule < b.rule : a.subject < b.subject;
  });
  return out;
}

std::string plan_to_text(const BoltPlan& plan, const SpanCalibration& cal) {
  std::ostringstream out;
  out << "boltplan v1\n";
  out << "calibration " << (cal.is_default ? "UNCALIBRATED-default" : "CALIBRATED") << '\n';
  out << "max-span-allowed " << format_double(plan.max_span_allowed) << '\n';
  out << "max-span-used " << format_double(plan.max_span_used) << '\n';
  out << "holes " << plan.holes.size() << '\n';
  for (const auto& hole : plan.holes) {
    out << "hole " << format_double(hole.position.x) << ' '
        << format_double(hole.position.y) << ' ' << format_double(hole.diameter) << ' ';
    if (hole.origin == HoleOrigin::IcPreallocated) {
      out << "ic:" << hole.ref_des;
    } else {
      out << "shared";
    }
    out << '\n';
  }
  for (const auto& cert : plan.coverage) {
    out << "cover " << cert.ref_des << ' ' << cert.hole_a << ' ' << cert.hole_b
        << " span " << format_double(cert.span) << '\n';
  }
  return out.str();
}

}  // namespace hf
