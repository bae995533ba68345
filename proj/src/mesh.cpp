#include "hf/mesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "earcut.hpp"
#include "hf/errors.hpp"

namespace mapbox {
namespace util {
template <>
struct nth<0, hf::Point2> {
  static double get(const hf::Point2& p) { return p.x; }
};
template <>
struct nth<1, hf::Point2> {
  static double get(const hf::Point2& p) { return p.y; }
};
}  // namespace util
}  // namespace mapbox

namespace hf {

namespace {
constexpr double kWeldGrid = 1e-6;
constexpr double kDegenerateArea = 1e-12;

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Vec3 sub3(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

double dot3(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double tri_area2(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = cross3(sub3(b, a), sub3(c, a));
  return std::sqrt(dot3(n, n));
}
}  // namespace

std::uint32_t MeshBuilder::vertex(Vec3 p) {
  Key key{static_cast<std::int64_t>(std::llround(p.x / kWeldGrid)),
          static_cast<std::int64_t>(std::llround(p.y / kWeldGrid)),
          static_cast<std::int64_t>(std::llround(p.z / kWeldGrid))};
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  std::uint32_t id = static_cast<std::uint32_t>(mesh_.vertices.size());
  mesh_.vertices.push_back(p);
  index_.emplace(key, id);
  return id;
}

void MeshBuilder::triangle(Vec3 a, Vec3 b, Vec3 c) {
  std::uint32_t ia = vertex(a), ib = vertex(b), ic = vertex(c);
  if (ia == ib || ib == ic || ia == ic) return;
  if (tri_area2(mesh_.vertices[ia], mesh_.vertices[ib], mesh_.vertices[ic]) <
      kDegenerateArea)
    return;
  mesh_.triangles.push_back({ia, ib, ic});
}

void MeshBuilder::horizontal_face(const std::vector<Point2>& outer,
                                  const std::vector<std::vector<Point2>>& holes,
                                  double z, bool normal_up) {
  std::vector<std::vector<Point2>> rings;
  rings.push_back(outer);
  for (const auto& hole : holes) rings.push_back(hole);
  std::vector<std::uint32_t> indices = mapbox::earcut<std::uint32_t>(rings);

  std::vector<Point2> flat;
  for (const auto& ring : rings) flat.insert(flat.end(), ring.begin(), ring.end());

  for (std::size_t i = 0; i + 2 < indices.size(); i += 3) {
    Point2 a = flat[indices[i]], b = flat[indices[i + 1]], c = flat[indices[i + 2]];
    double signed2 = cross(b - a, c - a);
    if ((signed2 > 0.0) != normal_up) std::swap(b, c);
    triangle({a.x, a.y, z}, {b.x, b.y, z}, {c.x, c.y, z});
  }
}

void MeshBuilder::wall_band(const std::vector<Point2>& ring, double z0, double z1) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = ring[i];
    Point2 b = ring[(i + 1) % n];
    Vec3 a0{a.x, a.y, z0}, b0{b.x, b.y, z0}, b1{b.x, b.y, z1}, a1{a.x, a.y, z1};
    triangle(a0, b0, b1);
    triangle(a0, b1, a1);
  }
}

TriMesh MeshBuilder::take() { return std::move(mesh_); }

MeshDiagnostics mesh_diagnostics(const TriMesh& mesh) {
  MeshDiagnostics diag;

  struct EdgeInfo {
    int count = 0;
    int orientation = 0;  // +1 for (lo -> hi), -1 for (hi -> lo)
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, EdgeInfo> edges;

  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    if (tri_area2(a, b, c) < kDegenerateArea) ++diag.degenerate_triangles;
    for (int e = 0; e < 3; ++e) {
      std::uint32_t u = tri[e], v = tri[(e + 1) % 3];
      auto key = std::minmax(u, v);
      EdgeInfo& info = edges[{key.first, key.second}];
      ++info.count;
      info.orientation += (u < v) ? 1 : -1;
    }
  }

  for (const auto& [key, info] : edges) {
    if (info.count == 1) {
      ++diag.boundary_edges;
    } else if (info.count != 2 || info.orientation != 0) {
      ++diag.nonmanifold_edges;
    }
  }

  // Connected components over vertices used by triangles.
  std::vector<std::uint32_t> parent(mesh.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> used(mesh.vertices.size(), false);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) used[tri[e]] = true;
    std::uint32_t r0 = find(tri[0]);
    std::uint32_t r1 = find(tri[1]);
    std::uint32_t r2 = find(tri[2]);
    parent[r1] = r0;
    parent[find(r2)] = find(r0);
  }
  std::vector<std::uint32_t> roots;
  for (std::uint32_t i = 0; i < mesh.vertices.size(); ++i) {
    if (used[i]) roots.push_back(find(i));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  diag.components = static_cast<int>(roots.size());

  double volume6 = 0.0;
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    volume6 += dot3(a, cross3(b, c));
  }
  diag.volume = volume6 / 6.0;

  if (!mesh.vertices.empty()) {
    diag.bbox_min[0] = diag.bbox_max[0] = mesh.vertices[0].x;
    diag.bbox_min[1] = diag.bbox_max[1] = mesh.vertices[0].y;
    diag.bbox_min[2] = diag.bbox_max[2] = mesh.vertices[0].z;
    for (const auto& v : mesh.vertices) {
      diag.bbox_min[0] = std::min(diag.bbox_min[0], v.x);
      diag.bbox_min[1] = std::min(diag.bbox_min[1], v.y);
      diag.bbox_min[2] = std::min(diag.bbox_min[2], v.z);
      diag.bbox_max[0] = std::max(diag.bbox_max[0], v.x);
      diag.bbox_max[1] = std::max(diag.bbox_max[1], v.y);
      diag.bbox_max[2] = std::max(diag.bbox_max[2], v.z);
    }
  }

  diag.watertight = diag.boundary_edges == 0 && diag.nonmanifold_edges == 0 &&
                    diag.degenerate_triangles == 0 && !mesh.triangles.empty();
  return diag;
}

std::string mesh_diagnostics_text(const MeshDiagnostics& diag) {
  std::ostringstream out;
  char buf[128];
  out << "watertight " << (diag.watertight ? "yes" : "no") << '\n';
  out << "components " << diag.components << '\n';
  out << "boundary-edges " << diag.boundary_edges << '\n';
  out << "nonmanifold-edges " << diag.nonmanifold_edges << '\n';
  std::snprintf(buf, sizeof(buf), "volume %.6f\n", diag.volume);
  out << buf;
  std::snprintf(buf, sizeof(buf), "bbox %.6f %.6f %.6f %.6f %.6f %.6f\n",
                diag.bbox_min[0], diag.bbox_min[1], diag.bbox_min[2],
                diag.bbox_max[0], diag.bbox_max[1], diag.bbox_max[2]);
  out << buf;
  return out.str();
}

namespace {

void append_f32(std::string& out, float v) {
  static_assert(sizeof(float) == 4);
  static_assert(std::endian::native == std::endian::little,
                "binary STL writer assumes a little-endian host");
  char bytes[4];
  std::memcpy(bytes, &v, 4);
  out.append(bytes, 4);
}

void append_u32(std::string& out, std::uint32_t v) {
  char bytes[4];
  bytes[0] = static_cast<char>(v & 0xff);
  bytes[1] = static_cast<char>((v >> 8) & 0xff);
  bytes[2] = static_cast<char>((v >> 16) & 0xff);
  bytes[3] = static_cast<char>((v >> 24) & 0xff);
  out.append(bytes, 4);
}

Vec3 face_normal(const Vec3& a, const Vec3& b, const Vec3& c) {
  Vec3 n = cross3(sub3(b, a), sub3(c, a));
  double len = std::sqrt(dot3(n, n));
  if (len <= 0.0) return {0.0, 0.0, 0.0};
  return {n.x / len, n.y / len, n.z / len};
}

}  // namespace

std::string emit_stl(const TriMesh& mesh, bool ascii) {
  if (ascii) {
    std::ostringstream out;
    out << "solid housing\n";
    char buf[256];
    for (const auto& tri : mesh.triangles) {
      const Vec3& a = mesh.vertices[tri[0]];
      const Vec3& b = mesh.vertices[tri[1]];
      const Vec3& c = mesh.vertices[tri[2]];
      Vec3 n = face_normal(a, b, c);
      std::snprintf(buf, sizeof(buf), "  facet normal %.9g %.9g %.9g\n", n.x, n.y, n.z);
      out << buf << "    outer loop\n";
      for (const Vec3* v : {&a, &b, &c}) {
        std::snprintf(buf, sizeof(buf), "      vertex %.9g %.9g %.9g\n", v->x, v->y, v->z);
        out << buf;
      }
      out << "    endloop\n  endfacet\n";
    }
    out << "endsolid housing\n";
    return out.str();
  }

  std::string out;
  out.reserve(84 + mesh.triangles.size() * 50);
  std::string header = "housingforge binary stl";
  header.resize(80, '\0');
  out += header;
  append_u32(out, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    Vec3 n = face_normal(a, b, c);
    for (double v : {n.x, n.y, n.z, a.x, a.y, a.z, b.x, b.y, b.z, c.x, c.y, c.z}) {
      append_f32(out, static_cast<float>(v));
    }
    out.push_back('\0');
    out.push_back('\0');
  }
  return out;
}

void write_stl_file(const TriMesh& mesh, const std::string& path, bool ascii) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::Io, "cannot write STL file '" + path + "'");
  std::string bytes = emit_stl(mesh, ascii);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace hf
