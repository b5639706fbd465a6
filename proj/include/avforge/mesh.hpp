#pragma once

#include <map>
#include <set>
#include <unordered_map>

#include "avforge/core.hpp"

namespace avforge {

// Per-face semantic labels produced by the segmentation pass.
enum class FaceLabel : int { Unlabeled = 0, FaceSkin = 1, Hair = 2, Clothing = 3 };

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<FaceLabel> face_labels;  // empty or one per face

  bool has_labels() const { return face_labels.size() == faces.size(); }
};

inline Vec3 face_normal_raw(const std::vector<Vec3>& v, const Face& f) {
  return (v[f[1]] - v[f[0]]).cross(v[f[2]] - v[f[0]]);
}

inline double face_area(const std::vector<Vec3>& v, const Face& f) {
  return 0.5 * face_normal_raw(v, f).norm();
}

inline double mesh_area(const TriMesh& m) {
  double a = 0;
  for (const Face& f : m.faces) a += face_area(m.vertices, f);
  return a;
}

inline void bounding_box(const std::vector<Vec3>& vertices, Vec3& lo, Vec3& hi) {
  lo = Vec3::Constant(std::numeric_limits<double>::max());
  hi = Vec3::Constant(std::numeric_limits<double>::lowest());
  for (const Vec3& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
}

inline void validate_mesh(const TriMesh& m, double min_area = 1e-12) {
  const int nv = static_cast<int>(m.vertices.size());
  for (size_t i = 0; i < m.faces.size(); ++i) {
    const Face& f = m.faces[i];
    for (int k = 0; k < 3; ++k)
      if (f[k] < 0 || f[k] >= nv)
        throw DataError("mesh: face " + std::to_string(i) + " index out of range");
    if (face_area(m.vertices, f) <= min_area)
      throw DataError("mesh: degenerate face " + std::to_string(i));
  }
}

// Vertex 1-ring neighborhoods from the edge graph.
inline std::vector<std::vector<int>> vertex_neighbors(const TriMesh& m) {
  std::vector<std::set<int>> nb(m.vertices.size());
  for (const Face& f : m.faces) {
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      nb[a].insert(b);
      nb[b].insert(a);
    }
  }
  std::vector<std::vector<int>> out(nb.size());
  for (size_t i = 0; i < nb.size(); ++i) out[i].assign(nb[i].begin(), nb[i].end());
  return out;
}

// Edge-adjacent face pairs (j < k), ordered; used by the consistency loss.
inline std::vector<std::pair<int, int>> adjacent_face_pairs(const TriMesh& m) {
  std::map<std::pair<int, int>, std::vector<int>> edge_faces;
  for (size_t fi = 0; fi < m.faces.size(); ++fi) {
    const Face& f = m.faces[fi];
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edge_faces[{a, b}].push_back(static_cast<int>(fi));
    }
  }
  std::set<std::pair<int, int>> pairs;
  for (const auto& [edge, fs] : edge_faces) {
    for (size_t i = 0; i < fs.size(); ++i)
      for (size_t j = i + 1; j < fs.size(); ++j)
        pairs.insert({std::min(fs[i], fs[j]), std::max(fs[i], fs[j])});
  }
  return {pairs.begin(), pairs.end()};
}

// Connected components over shared vertices; returns per-face component id.
inline std::vector<int> face_components(const TriMesh& m, int* count_out = nullptr) {
  std::vector<int> parent(m.vertices.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Face& f : m.faces) {
    int a = find(f[0]);
    parent[find(f[1])] = a;
    parent[find(f[2])] = find(a);
  }
  std::map<int, int> remap;
  std::vector<int> comp(m.faces.size());
  for (size_t i = 0; i < m.faces.size(); ++i) {
    int root = find(m.faces[i][0]);
    auto it = remap.find(root);
    if (it == remap.end()) it = remap.insert({root, static_cast<int>(remap.size())}).first;
    comp[i] = it->second;
  }
  if (count_out) *count_out = static_cast<int>(remap.size());
  return comp;
}

// Closest point on triangle (a, b, c) to p. Ericson, Real-Time Collision
// Detection, 5.1.5.
inline Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                      const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + ab * (d1 / (d1 - d3));
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + ac * (d2 / (d2 - d6));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
    return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

inline double point_triangle_distance(const Vec3& p, const Vec3& a, const Vec3& b,
                                      const Vec3& c) {
  return (p - closest_point_on_triangle(p, a, b, c)).norm();
}

}  // namespace avforge
