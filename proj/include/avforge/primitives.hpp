#pragma once

#include <map>

#include "avforge/core.hpp"
#include "avforge/mesh.hpp"

namespace avforge {

// UV sphere with outward CCW winding.
inline TriMesh make_uv_sphere(const Vec3& center, const Vec3& radii, int stacks, int slices) {
  TriMesh m;
  for (int i = 0; i <= stacks; ++i) {
    const double phi = M_PI * i / stacks;  // 0 at +y pole
    for (int j = 0; j < slices; ++j) {
      const double theta = 2.0 * M_PI * j / slices;
      const Vec3 d(std::sin(phi) * std::sin(theta), std::cos(phi), std::sin(phi) * std::cos(theta));
      m.vertices.push_back(center + radii.cwiseProduct(d));
      if (i == 0 || i == stacks) break;  // poles collapse to one vertex
    }
  }
  auto index = [&](int i, int j) -> int {
    if (i == 0) return 0;
    if (i == stacks) return 1 + (stacks - 1) * slices;
    return 1 + (i - 1) * slices + (j % slices);
  };
  for (int i = 0; i < stacks; ++i)
    for (int j = 0; j < slices; ++j) {
      const int a = index(i, j), b = index(i + 1, j), c = index(i + 1, j + 1), d = index(i, j + 1);
      if (i != 0) m.faces.push_back({a, b, d});
      if (i != stacks - 1) m.faces.push_back({b, c, d});
    }
  return m;
}

// Icosphere: subdivided icosahedron projected to the sphere.
inline TriMesh make_icosphere(const Vec3& center, double radius, int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                         {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                         {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3& p : v) p.normalize();
  std::vector<Face> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      v.push_back(((v[a] + v[b]) * 0.5).normalized());
      int idx = static_cast<int>(v.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<Face> next;
    next.reserve(f.size() * 4);
    for (const Face& tri : f) {
      const int ab = mid(tri[0], tri[1]), bc = mid(tri[1], tri[2]), ca = mid(tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f.swap(next);
  }
  TriMesh m;
  m.faces = std::move(f);
  m.vertices.reserve(v.size());
  for (const Vec3& p : v) m.vertices.push_back(center + radius * p);
  return m;
}

inline TriMesh make_box(const Vec3& center, const Vec3& half_extent) {
  TriMesh m;
  for (int i = 0; i < 8; ++i)
    m.vertices.push_back(center + Vec3((i & 1) ? half_extent.x() : -half_extent.x(),
                                       (i & 2) ? half_extent.y() : -half_extent.y(),
                                       (i & 4) ? half_extent.z() : -half_extent.z()));
  // Outward-facing quads split into triangles.
  const int quads[6][4] = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4},
                           {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  for (const auto& q : quads) {
    m.faces.push_back({q[0], q[1], q[2]});
    m.faces.push_back({q[0], q[2], q[3]});
  }
  return m;
}

// Open tube (no caps) along y between y0 and y1, linearly interpolated radius.
inline TriMesh make_tube(double y0, double y1, double r0, double r1, int rings, int slices) {
  TriMesh m;
  for (int i = 0; i <= rings; ++i) {
    const double u = static_cast<double>(i) / rings;
    const double y = y0 + (y1 - y0) * u;
    const double r = r0 + (r1 - r0) * u;
    for (int j = 0; j < slices; ++j) {
      const double a = 2.0 * M_PI * j / slices;
      m.vertices.push_back(Vec3(r * std::sin(a), y, r * std::cos(a)));
    }
  }
  for (int i = 0; i < rings; ++i)
    for (int j = 0; j < slices; ++j) {
      const int a = i * slices + j, b = i * slices + (j + 1) % slices;
      const int c = (i + 1) * slices + j, d = (i + 1) * slices + (j + 1) % slices;
      m.faces.push_back({a, c, b});
      m.faces.push_back({b, c, d});
    }
  return m;
}

inline TriMesh merge_meshes(const std::vector<TriMesh>& parts) {
  TriMesh out;
  for (const TriMesh& p : parts) {
    const int base = static_cast<int>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), p.vertices.begin(), p.vertices.end());
    for (const Face& f : p.faces) out.faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
  return out;
}

}  // namespace avforge
