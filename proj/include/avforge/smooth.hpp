#pragma once

#include "avforge/mesh.hpp"

namespace avforge {

// Uniform Laplacian smoothing: per iteration every vertex moves by
// lambda * (mean of 1-ring neighbors - vertex), all vertices updated
// simultaneously. Connectivity and labels are untouched.
inline TriMesh laplacian_smooth(const TriMesh& mesh, int iterations, double lambda) {
  if (iterations < 0) throw ParamError("laplacian_smooth: iterations must be >= 0");
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ParamError("laplacian_smooth: lambda must be in (0, 1]");
  TriMesh out = mesh;
  if (iterations == 0 || mesh.vertices.empty()) return out;
  const auto neighbors = vertex_neighbors(mesh);
  std::vector<Vec3> next(out.vertices.size());
  for (int it = 0; it < iterations; ++it) {
    for (size_t i = 0; i < out.vertices.size(); ++i) {
      const auto& nb = neighbors[i];
      if (nb.empty()) {
        next[i] = out.vertices[i];
        continue;
      }
      Vec3 avg = Vec3::Zero();
      for (int j : nb) avg += out.vertices[j];
      avg /= static_cast<double>(nb.size());
      next[i] = out.vertices[i] + lambda * (avg - out.vertices[i]);
    }
    out.vertices.swap(next);
  }
  return out;
}

}  // namespace avforge
