#pragma once

#include <map>
#include <set>
#include <string>

#include "avforge/camera.hpp"
#include "avforge/core.hpp"
#include "avforge/mesh.hpp"
#include "avforge/raster_mesh.hpp"

namespace avforge {

// Fixed partition label ids used by segmentation renders. 0 is background;
// faces outside every requested partition render as kPartitionUnassigned.
inline const std::map<std::string, int>& partition_label_ids() {
  static const std::map<std::string, int> ids = {
      {"face", 1},      {"scalp", 2},          {"body", 3},
      {"jaw", 4},       {"eyeball_l", 5},      {"eyeball_r", 6},
      {"eyelid_region", 7}, {"teeth_upper", 8}, {"teeth_lower", 9},
  };
  return ids;
}
constexpr int kPartitionBackground = 0;
constexpr int kPartitionUnassigned = 255;

// Parametric head rig: template mesh, blend bases, a small joint tree and
// linear blend skinning weights. The two eyelid blendshapes are stored
// separately from the expression basis and are driven by the [0,1] eyelid
// scalars of RigParams.
struct BlendshapeRig {
  std::vector<Vec3> template_vertices;
  std::vector<Face> faces;
  std::vector<std::vector<Vec3>> shape_basis;       // [S][vertex]
  std::vector<std::vector<Vec3>> expression_basis;  // [E][vertex]
  std::vector<std::vector<Vec3>> eyelid_basis;      // [2][vertex]
  std::vector<Vec3> joint_rest;
  std::vector<int> joint_parent;                    // parent[0] == -1 (root)
  std::map<std::string, int> named_joints;          // head, jaw, eye_l, eye_r
  std::vector<std::vector<double>> skinning_weights;  // [vertex][joint]
  std::map<std::string, std::set<int>> partitions;  // name -> face indices

  int vertex_count() const { return static_cast<int>(template_vertices.size()); }
  int joint_count() const { return static_cast<int>(joint_rest.size()); }
  int shape_dim() const { return static_cast<int>(shape_basis.size()); }
  int expression_dim() const { return static_cast<int>(expression_basis.size()); }

  int joint(const std::string& name) const {
    auto it = named_joints.find(name);
    if (it == named_joints.end()) throw ParamError("rig: no joint named '" + name + "'");
    return it->second;
  }
};

inline void validate_rig(const BlendshapeRig& rig) {
  const int nv = rig.vertex_count();
  const int nj = rig.joint_count();
  if (static_cast<int>(rig.skinning_weights.size()) != nv)
    throw DataError("rig: skinning weight rows != vertex count");
  for (int i = 0; i < nv; ++i) {
    const auto& row = rig.skinning_weights[i];
    if (static_cast<int>(row.size()) != nj) throw DataError("rig: weight row width != joints");
    double s = 0;
    for (double w : row) {
      if (w < -1e-9) throw DataError("rig: negative skinning weight");
      s += w;
    }
    if (std::abs(s - 1.0) > 1e-6)
      throw DataError("rig: weight row " + std::to_string(i) + " sums to " + std::to_string(s));
  }
  for (const Face& f : rig.faces)
    for (int k = 0; k < 3; ++k)
      if (f[k] < 0 || f[k] >= nv) throw DataError("rig: face index out of range");
  if (nj < 1 || rig.joint_parent.size() != rig.joint_rest.size())
    throw DataError("rig: malformed joint arrays");
  if (rig.joint_parent[0] != -1) throw DataError("rig: joint 0 must be the root");
  for (int j = 1; j < nj; ++j)
    if (rig.joint_parent[j] < 0 || rig.joint_parent[j] >= j)
      throw DataError("rig: joint parents must form a tree in topological order");
  // Partitions must not overlap.
  std::set<int> seen;
  for (const auto& [name, fset] : rig.partitions) {
    for (int fi : fset) {
      if (fi < 0 || fi >= static_cast<int>(rig.faces.size()))
        throw DataError("rig: partition '" + name + "' has out-of-range face");
      if (!seen.insert(fi).second)
        throw DataError("rig: partitions overlap at face " + std::to_string(fi));
    }
  }
}

struct RigParams {
  std::vector<double> shape;
  std::vector<double> expression;
  std::vector<Quat> joint_rotations;  // one per joint, identity-extended if empty
  Quat jaw = Quat::Identity();
  std::array<double, 2> eyelids = {0.0, 0.0};          // [left, right] in [0,1]
  std::array<Quat, 2> eye_gaze = {Quat::Identity(), Quat::Identity()};
  Mat4 global_transform = Mat4::Identity();

  static RigParams neutral(const BlendshapeRig& rig) {
    RigParams p;
    p.shape.assign(rig.shape_dim(), 0.0);
    p.expression.assign(rig.expression_dim(), 0.0);
    p.joint_rotations.assign(rig.joint_count(), Quat::Identity());
    return p;
  }
};

inline void validate_params(const BlendshapeRig& rig, const RigParams& p) {
  if (static_cast<int>(p.shape.size()) != rig.shape_dim())
    throw ParamError("rig params: shape coefficient count mismatch");
  if (static_cast<int>(p.expression.size()) != rig.expression_dim())
    throw ParamError("rig params: expression coefficient count mismatch");
  if (!p.joint_rotations.empty() &&
      static_cast<int>(p.joint_rotations.size()) != rig.joint_count())
    throw ParamError("rig params: joint rotation count mismatch");
  auto check_unit = [](const Quat& q, const char* what) {
    if (std::abs(q.norm() - 1.0) > 1e-6)
      throw ParamError(std::string("rig params: non-unit quaternion in ") + what);
  };
  for (const Quat& q : p.joint_rotations) check_unit(q, "joint_rotations");
  check_unit(p.jaw, "jaw");
  check_unit(p.eye_gaze[0], "eye_gaze");
  check_unit(p.eye_gaze[1], "eye_gaze");
}

struct PosedMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<Vec3> per_vertex_normals;
};

// Rest-to-posed linear blend skinning. Blend offsets are applied in rest
// pose, joints chain in rest coordinates, then the rigid global transform.
inline PosedMesh deform(const BlendshapeRig& rig, const RigParams& params_in) {
  RigParams params = params_in;
  if (params.joint_rotations.empty())
    params.joint_rotations.assign(rig.joint_count(), Quat::Identity());
  validate_params(rig, params);

  const int nv = rig.vertex_count();
  const int nj = rig.joint_count();

  // Blend shapes in rest pose.
  std::vector<Vec3> shaped = rig.template_vertices;
  for (int s = 0; s < rig.shape_dim(); ++s) {
    if (params.shape[s] == 0.0) continue;
    for (int i = 0; i < nv; ++i) shaped[i] += params.shape[s] * rig.shape_basis[s][i];
  }
  for (int e = 0; e < rig.expression_dim(); ++e) {
    if (params.expression[e] == 0.0) continue;
    for (int i = 0; i < nv; ++i) shaped[i] += params.expression[e] * rig.expression_basis[e][i];
  }
  for (int lid = 0; lid < 2 && lid < static_cast<int>(rig.eyelid_basis.size()); ++lid) {
    const double c = clamp01(params.eyelids[lid]);
    if (c == 0.0) continue;
    for (int i = 0; i < nv; ++i) shaped[i] += c * rig.eyelid_basis[lid][i];
  }

  // Per-joint local rotations; named joints compose the dedicated controls.
  std::vector<Mat3> local_rot(nj);
  for (int j = 0; j < nj; ++j) local_rot[j] = quat_to_mat(params.joint_rotations[j]);
  auto compose = [&](const char* name, const Quat& extra) {
    auto it = rig.named_joints.find(name);
    if (it != rig.named_joints.end()) local_rot[it->second] *= quat_to_mat(extra);
  };
  compose("jaw", params.jaw);
  compose("eye_l", params.eye_gaze[0]);
  compose("eye_r", params.eye_gaze[1]);

  // Global joint transforms: G_j = G_parent * T(rest_j - rest_parent) * R_j.
  std::vector<Mat3> g_rot(nj);
  std::vector<Vec3> g_pos(nj);
  for (int j = 0; j < nj; ++j) {
    const int p = rig.joint_parent[j];
    if (p < 0) {
      g_rot[j] = local_rot[j];
      g_pos[j] = rig.joint_rest[j];
    } else {
      const Vec3 offset = rig.joint_rest[j] - rig.joint_rest[p];
      g_rot[j] = g_rot[p] * local_rot[j];
      g_pos[j] = g_rot[p] * offset + g_pos[p];
    }
  }

  const Mat3 g_r = params.global_transform.topLeftCorner<3, 3>();
  const Vec3 g_t = params.global_transform.topRightCorner<3, 1>();

  PosedMesh out;
  out.faces = rig.faces;
  out.vertices.resize(nv);
  for (int i = 0; i < nv; ++i) {
    const Vec3& v = shaped[i];
    Vec3 acc = Vec3::Zero();
    for (int j = 0; j < nj; ++j) {
      const double w = rig.skinning_weights[i][j];
      if (w == 0.0) continue;
      acc += w * (g_rot[j] * (v - rig.joint_rest[j]) + g_pos[j]);
    }
    out.vertices[i] = g_r * acc + g_t;
  }

  // Area-weighted vertex normals.
  out.per_vertex_normals.assign(nv, Vec3::Zero());
  for (const Face& f : out.faces) {
    const Vec3 n = face_normal_raw(out.vertices, f);
    for (int k = 0; k < 3; ++k) out.per_vertex_normals[f[k]] += n;
  }
  for (Vec3& n : out.per_vertex_normals) {
    const double len = n.norm();
    n = len > 1e-14 ? Vec3(n / len) : Vec3(0, 0, 1);
  }
  return out;
}

// View-frame normal image of the nearest face per pixel (flat shading);
// background pixels hold the zero vector.
inline Image render_normal_map(const PosedMesh& mesh, const Camera& cam, int width,
                               int height) {
  require_valid(cam);
  Image img(width, height, 3, 0.0);
  if (mesh.faces.empty()) return img;
  const HitMap hits = rasterize_mesh(mesh.vertices, mesh.faces, cam, width, height);
  std::vector<Vec3> face_n(mesh.faces.size());
  for (size_t i = 0; i < mesh.faces.size(); ++i) {
    Vec3 n = face_normal_raw(mesh.vertices, mesh.faces[i]);
    const double len = n.norm();
    face_n[i] = len > 1e-14 ? Vec3(cam.normal_to_view(n / len)) : Vec3::Zero();
  }
  parallel_rows(height, [&](int y_lo, int y_hi) {
    for (int y = y_lo; y < y_hi; ++y)
      for (int x = 0; x < width; ++x) {
        const RasterHit& h = hits.at(y, x);
        if (h.face < 0) continue;
        const Vec3& n = face_n[h.face];
        img.at(y, x, 0) = n.x();
        img.at(y, x, 1) = n.y();
        img.at(y, x, 2) = n.z();
      }
  });
  return img;
}

// Per-pixel partition label of the nearest face (see partition_label_ids()).
inline LabelImage render_segmentation_map(const PosedMesh& mesh,
                                          const std::map<std::string, std::set<int>>& partitions,
                                          const Camera& cam, int width, int height) {
  require_valid(cam);
  const auto& ids = partition_label_ids();
  std::vector<int> face_label;
  if (!mesh.faces.empty()) {
    face_label.assign(mesh.faces.size(), kPartitionUnassigned);
    for (const auto& [name, fset] : partitions) {
      auto it = ids.find(name);
      if (it == ids.end()) throw ParamError("segmentation: unknown partition '" + name + "'");
      for (int fi : fset) {
        if (fi < 0 || fi >= static_cast<int>(mesh.faces.size()))
          throw ParamError("segmentation: partition face out of range");
        face_label[fi] = it->second;
      }
    }
  }
  LabelImage img(width, height, kPartitionBackground);
  if (mesh.faces.empty()) return img;
  const HitMap hits = rasterize_mesh(mesh.vertices, mesh.faces, cam, width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const RasterHit& h = hits.at(y, x);
      if (h.face >= 0) img.at(y, x) = face_label[h.face];
    }
  return img;
}

// Appends a teeth mesh to the rig: the upper component is skinned rigidly to
// the head joint and the lower one to the jaw joint. Components are taken
// from connectivity; "upper" is the component with the higher centroid (+y).
inline BlendshapeRig attach_teeth(const BlendshapeRig& rig, const TriMesh& teeth) {
  validate_mesh(teeth);
  int ncomp = 0;
  const std::vector<int> comp = face_components(teeth, &ncomp);
  if (ncomp != 2)
    throw ParamError("attach_teeth: expected exactly 2 connected components, got " +
                     std::to_string(ncomp));
  Vec3 centroid[2] = {Vec3::Zero(), Vec3::Zero()};
  int counts[2] = {0, 0};
  for (size_t i = 0; i < teeth.faces.size(); ++i) {
    const Face& f = teeth.faces[i];
    centroid[comp[i]] += teeth.vertices[f[0]] + teeth.vertices[f[1]] + teeth.vertices[f[2]];
    counts[comp[i]] += 3;
  }
  for (int c = 0; c < 2; ++c) {
    if (counts[c] == 0) throw ParamError("attach_teeth: empty component");
    centroid[c] /= counts[c];
  }
  const int upper_comp = centroid[0].y() >= centroid[1].y() ? 0 : 1;

  const int head = rig.joint("head");
  const int jaw = rig.joint("jaw");

  BlendshapeRig out = rig;
  const int base_v = rig.vertex_count();
  const int base_f = static_cast<int>(rig.faces.size());
  const int nj = rig.joint_count();

  // Per-vertex component from incident faces.
  std::vector<int> vcomp(teeth.vertices.size(), -1);
  for (size_t i = 0; i < teeth.faces.size(); ++i)
    for (int k = 0; k < 3; ++k) vcomp[teeth.faces[i][k]] = comp[i];

  for (size_t i = 0; i < teeth.vertices.size(); ++i) {
    out.template_vertices.push_back(teeth.vertices[i]);
    std::vector<double> w(nj, 0.0);
    w[vcomp[i] == upper_comp ? head : jaw] = 1.0;
    out.skinning_weights.push_back(std::move(w));
  }
  for (auto& basis : out.shape_basis) basis.resize(out.template_vertices.size(), Vec3::Zero());
  for (auto& basis : out.expression_basis) basis.resize(out.template_vertices.size(), Vec3::Zero());
  for (auto& basis : out.eyelid_basis) basis.resize(out.template_vertices.size(), Vec3::Zero());

  for (size_t i = 0; i < teeth.faces.size(); ++i) {
    const Face& f = teeth.faces[i];
    out.faces.push_back({f[0] + base_v, f[1] + base_v, f[2] + base_v});
    const int fi = base_f + static_cast<int>(i);
    out.partitions[comp[i] == upper_comp ? "teeth_upper" : "teeth_lower"].insert(fi);
  }
  return out;
}

}  // namespace avforge
