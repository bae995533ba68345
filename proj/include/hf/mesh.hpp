#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hf/geometry.hpp"

namespace hf {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

/// Indexed triangle mesh. Valid meshes are watertight: every undirected edge
/// is shared by exactly two triangles with opposite direction, no degenerate
/// triangles, positive enclosed volume.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

struct MeshDiagnostics {
  bool watertight = false;
  std::size_t boundary_edges = 0;     // edges used by exactly one triangle
  std::size_t nonmanifold_edges = 0;  // edges used more than twice or misoriented
  int components = 0;
  double volume = 0.0;  // signed, from the divergence theorem
  double bbox_min[3] = {0, 0, 0};
  double bbox_max[3] = {0, 0, 0};
  std::size_t degenerate_triangles = 0;
};

MeshDiagnostics mesh_diagnostics(const TriMesh& mesh);

std::string mesh_diagnostics_text(const MeshDiagnostics& diag);

/// STL bytes. Binary layout: 80-byte header, little-endian uint32 triangle
/// count, then 50 bytes per triangle (normal, 3 vertices as float32, 2-byte
/// attribute = 0). Emission is deterministic and bit-exact across runs.
std::string emit_stl(const TriMesh& mesh, bool ascii);

void write_stl_file(const TriMesh& mesh, const std::string& path, bool ascii);

/// Incremental mesh assembly with vertex welding (1e-6 mm grid) so patches
/// built from the same coordinates share vertices exactly.
class MeshBuilder {
 public:
  std::uint32_t vertex(Vec3 p);
  void triangle(Vec3 a, Vec3 b, Vec3 c);

  /// Planar z = const face from a polygon with holes; triangles oriented so
  /// the normal points up (+z) or down.
  void horizontal_face(const std::vector<Point2>& outer,
                       const std::vector<std::vector<Point2>>& holes, double z,
                       bool normal_up);

  /// Vertical band between z0 < z1 along a ring. Outward normals point to the
  /// right of the traversal direction: pass solid-enclosing rings CCW and
  /// cavity/hole rings CW.
  void wall_band(const std::vector<Point2>& ring, double z0, double z1);

  TriMesh take();

 private:
  struct Key {
    std::int64_t x, y, z;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::uint32_t> index_;
  TriMesh mesh_;
};

}  // namespace hf
