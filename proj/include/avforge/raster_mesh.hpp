#pragma once

#include "avforge/camera.hpp"
#include "avforge/core.hpp"
#include "avforge/mesh.hpp"

namespace avforge {

// Nearest-face rasterization result for one pixel.
struct RasterHit {
  int face = -1;
  double depth = std::numeric_limits<double>::infinity();
  Vec3 bary = Vec3::Zero();  // perspective-correct barycentrics
};

struct HitMap {
  int width = 0, height = 0;
  std::vector<RasterHit> hits;

  HitMap() = default;
  HitMap(int w, int h) : width(w), height(h), hits(static_cast<size_t>(w) * h) {}
  RasterHit& at(int y, int x) { return hits[static_cast<size_t>(y) * width + x]; }
  const RasterHit& at(int y, int x) const { return hits[static_cast<size_t>(y) * width + x]; }
};

namespace detail {

struct ProjectedTri {
  Vec2 p[3];
  double z[3];
  bool in_front = false;
};

inline ProjectedTri project_triangle(const std::vector<Vec3>& verts, const Face& f,
                                     const Camera& cam) {
  ProjectedTri t;
  t.in_front = true;
  for (int k = 0; k < 3; ++k) {
    const Vec3 pc = cam.to_camera(verts[f[k]]);
    if (pc.z() <= 1e-9) {
      t.in_front = false;  // triangles crossing the camera plane are skipped
      return t;
    }
    t.p[k] = Vec2(cam.fx * pc.x() / pc.z() + cam.cx, cam.fy * pc.y() / pc.z() + cam.cy);
    t.z[k] = pc.z();
  }
  return t;
}

}  // namespace detail

// Z-buffered rasterization over faces: for each pixel center, the nearest
// covering face wins; equal depths keep the lower face index. Two-sided (no
// backface culling), no anti-aliasing. Deterministic for any row-parallel
// split because candidate faces are scanned in index order per pixel row.
inline HitMap rasterize_mesh(const std::vector<Vec3>& verts, const std::vector<Face>& faces,
                             const Camera& cam, int width, int height) {
  require_valid(cam);
  HitMap map(width, height);
  // Precompute projections once.
  std::vector<detail::ProjectedTri> proj(faces.size());
  for (size_t i = 0; i < faces.size(); ++i) proj[i] = detail::project_triangle(verts, faces[i], cam);

  // Bucket faces by row span so each row only scans overlapping faces.
  std::vector<std::vector<int>> row_faces(height);
  for (size_t i = 0; i < faces.size(); ++i) {
    if (!proj[i].in_front) continue;
    double ymin = std::min({proj[i].p[0].y(), proj[i].p[1].y(), proj[i].p[2].y()});
    double ymax = std::max({proj[i].p[0].y(), proj[i].p[1].y(), proj[i].p[2].y()});
    int y0 = std::max(0, static_cast<int>(std::floor(ymin - 0.5)));
    int y1 = std::min(height - 1, static_cast<int>(std::ceil(ymax - 0.5)));
    for (int y = y0; y <= y1; ++y) row_faces[y].push_back(static_cast<int>(i));
  }

  parallel_rows(height, [&](int y_lo, int y_hi) {
    for (int y = y_lo; y < y_hi; ++y) {
      const double py = y + 0.5;
      for (int fi : row_faces[y]) {
        const detail::ProjectedTri& t = proj[fi];
        const Vec2 &a = t.p[0], &b = t.p[1], &c = t.p[2];
        const double area = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
        if (area == 0.0) continue;
        double xmin = std::min({a.x(), b.x(), c.x()});
        double xmax = std::max({a.x(), b.x(), c.x()});
        int x0 = std::max(0, static_cast<int>(std::floor(xmin - 0.5)));
        int x1 = std::min(width - 1, static_cast<int>(std::ceil(xmax - 0.5)));
        for (int x = x0; x <= x1; ++x) {
          const double px = x + 0.5;
          const double w0 = ((b.x() - px) * (c.y() - py) - (b.y() - py) * (c.x() - px)) / area;
          const double w1 = ((c.x() - px) * (a.y() - py) - (c.y() - py) * (a.x() - px)) / area;
          const double w2 = 1.0 - w0 - w1;
          if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0) continue;
          // Perspective-correct depth and barycentrics.
          const double inv_z = w0 / t.z[0] + w1 / t.z[1] + w2 / t.z[2];
          const double depth = 1.0 / inv_z;
          RasterHit& hit = map.at(y, x);
          if (depth < hit.depth) {
            hit.depth = depth;
            hit.face = fi;
            hit.bary = Vec3(w0 / t.z[0], w1 / t.z[1], w2 / t.z[2]) * depth;
          }
        }
      }
    }
  });
  return map;
}

// World-space surface point of a hit.
inline Vec3 hit_point(const std::vector<Vec3>& verts, const std::vector<Face>& faces,
                      const RasterHit& h) {
  const Face& f = faces[h.face];
  return h.bary.x() * verts[f[0]] + h.bary.y() * verts[f[1]] + h.bary.z() * verts[f[2]];
}

}  // namespace avforge
