#pragma once

#include "avforge/primitives.hpp"
#include "avforge/rig.hpp"

namespace avforge {

// Procedural license-free test head: ellipsoid shell + eyeballs + neck tube,
// a five-joint chain (root, head, jaw, eye_l, eye_r), two shape and four
// expression blendshapes, and dedicated eyelid blendshapes. Model units are
// meters; the avatar faces +z, +y is up, eye "_l" sits at +x.
//
// make_toy_teeth() returns a matching two-component teeth mesh for
// attach_teeth(); make_toy_avatar_rig() returns the rig with teeth attached.

namespace toyrig {
constexpr double kHeadRx = 0.095, kHeadRy = 0.120, kHeadRz = 0.105;
inline Vec3 eye_center(int side) {  // side +1 = left (+x), -1 = right
  return Vec3(side * 0.034, 0.020, 0.092);
}
constexpr double kEyeRadius = 0.018;
}  // namespace toyrig

inline TriMesh make_toy_teeth() {
  TriMesh upper = make_box(Vec3(0.0, -0.012, 0.052), Vec3(0.030, 0.0045, 0.010));
  TriMesh lower = make_box(Vec3(0.0, -0.032, 0.048), Vec3(0.028, 0.0045, 0.010));
  return merge_meshes({upper, lower});
}

inline BlendshapeRig make_toy_rig() {
  using namespace toyrig;
  const TriMesh head = make_uv_sphere(Vec3::Zero(), Vec3(kHeadRx, kHeadRy, kHeadRz), 26, 36);
  const TriMesh eye_l = make_uv_sphere(eye_center(+1), Vec3::Constant(kEyeRadius), 8, 10);
  const TriMesh eye_r = make_uv_sphere(eye_center(-1), Vec3::Constant(kEyeRadius), 8, 10);
  const TriMesh body = make_tube(-0.230, -0.100, 0.085, 0.055, 4, 24);

  const int nh_v = static_cast<int>(head.vertices.size());
  const int nel_v = static_cast<int>(eye_l.vertices.size());
  const int ner_v = static_cast<int>(eye_r.vertices.size());
  const int nh_f = static_cast<int>(head.faces.size());
  const int nel_f = static_cast<int>(eye_l.faces.size());
  const int ner_f = static_cast<int>(eye_r.faces.size());

  BlendshapeRig rig;
  const TriMesh merged = merge_meshes({head, eye_l, eye_r, body});
  rig.template_vertices = merged.vertices;
  rig.faces = merged.faces;

  // Joints: 0 root, 1 head, 2 jaw, 3 eye_l, 4 eye_r.
  rig.joint_rest = {Vec3(0, -0.150, 0), Vec3(0, -0.060, 0), Vec3(0, -0.010, 0.020),
                    eye_center(+1), eye_center(-1)};
  rig.joint_parent = {-1, 0, 1, 1, 1};
  rig.named_joints = {{"root", 0}, {"head", 1}, {"jaw", 2}, {"eye_l", 3}, {"eye_r", 4}};

  const int nv = rig.vertex_count();
  rig.skinning_weights.assign(nv, std::vector<double>(5, 0.0));
  auto vert_kind = [&](int i) {  // 0 head shell, 1 eye_l, 2 eye_r, 3 body
    if (i < nh_v) return 0;
    if (i < nh_v + nel_v) return 1;
    if (i < nh_v + nel_v + ner_v) return 2;
    return 3;
  };
  for (int i = 0; i < nv; ++i) {
    const Vec3& v = rig.template_vertices[i];
    auto& w = rig.skinning_weights[i];
    switch (vert_kind(i)) {
      case 0: {
        // Mouth region blends toward the jaw joint.
        const double wy = clamp01((-0.015 - v.y()) / 0.040) * clamp01((v.y() + 0.085) / 0.030);
        const double wz = clamp01((v.z() - 0.020) / 0.050);
        const double wj = wy * wz;
        w[2] = wj;
        w[1] = 1.0 - wj;
        break;
      }
      case 1: w[3] = 1.0; break;
      case 2: w[4] = 1.0; break;
      default: w[0] = 1.0; break;
    }
  }

  // Face partitions over the merged face list (head, eye_l, eye_r, body).
  auto centroid = [&](int fi) {
    const Face& f = rig.faces[fi];
    return Vec3((rig.template_vertices[f[0]] + rig.template_vertices[f[1]] +
                 rig.template_vertices[f[2]]) / 3.0);
  };
  for (int fi = 0; fi < nh_f; ++fi) {
    const Vec3 c = centroid(fi);
    const bool near_eye = (c - eye_center(+1)).norm() < 0.042 || (c - eye_center(-1)).norm() < 0.042;
    if (near_eye && c.z() > 0.050) {
      rig.partitions["eyelid_region"].insert(fi);
    } else if (c.y() > -0.075 && c.y() < -0.015 && c.z() > 0.055) {
      // Mouth band; doubles as the inner-mouth lining for appearance init.
      rig.partitions["jaw"].insert(fi);
    } else if (c.z() > 0.015 && c.y() > -0.095) {
      rig.partitions["face"].insert(fi);
    } else {
      rig.partitions["scalp"].insert(fi);
    }
  }
  for (int fi = nh_f; fi < nh_f + nel_f; ++fi) rig.partitions["eyeball_l"].insert(fi);
  for (int fi = nh_f + nel_f; fi < nh_f + nel_f + ner_f; ++fi) rig.partitions["eyeball_r"].insert(fi);
  for (int fi = nh_f + nel_f + ner_f; fi < static_cast<int>(rig.faces.size()); ++fi)
    rig.partitions["body"].insert(fi);

  // Shape basis: widen and elongate.
  rig.shape_basis.assign(2, std::vector<Vec3>(nv, Vec3::Zero()));
  for (int i = 0; i < nv; ++i) {
    const Vec3& v = rig.template_vertices[i];
    rig.shape_basis[0][i] = Vec3(0.08 * v.x(), 0, 0);
    rig.shape_basis[1][i] = Vec3(0, 0.08 * v.y(), 0);
  }

  // Expression basis: smile, frown, brow raise, lip stretch.
  rig.expression_basis.assign(4, std::vector<Vec3>(nv, Vec3::Zero()));
  auto bump = [](const Vec3& v, const Vec3& anchor, double sigma) {
    return std::exp(-(v - anchor).squaredNorm() / (2.0 * sigma * sigma));
  };
  const Vec3 corner_l(0.045, -0.040, 0.075), corner_r(-0.045, -0.040, 0.075);
  const Vec3 brow(0.0, 0.055, 0.085), lip(0.0, -0.050, 0.090);
  for (int i = 0; i < nh_v; ++i) {
    const Vec3& v = rig.template_vertices[i];
    const double mouth = bump(v, corner_l, 0.022) + bump(v, corner_r, 0.022);
    rig.expression_basis[0][i] = Vec3(0, 0.015 * mouth, 0);
    rig.expression_basis[1][i] = Vec3(0, -0.015 * mouth, 0);
    rig.expression_basis[2][i] = Vec3(0, 0.012, 0.002) * bump(Vec3(0, v.y(), v.z()), brow, 0.030);
    rig.expression_basis[3][i] = Vec3(0, -0.012, 0.004) * bump(v, lip, 0.025);
  }

  // Eyelid blendshapes: upper-lid shell vertices slide down and forward.
  rig.eyelid_basis.assign(2, std::vector<Vec3>(nv, Vec3::Zero()));
  for (int lid = 0; lid < 2; ++lid) {
    const Vec3 ec = eye_center(lid == 0 ? +1 : -1);
    for (int i = 0; i < nh_v; ++i) {  // head shell only, never the eyeball
      const Vec3& v = rig.template_vertices[i];
      if (v.z() < 0.040 || v.y() < ec.y() - 0.004) continue;
      const double d = (v - ec).norm();
      if (d > 0.048) continue;
      const double falloff = 0.5 * (1.0 + std::cos(M_PI * d / 0.048));
      rig.eyelid_basis[lid][i] = Vec3(0, -0.024, 0.005) * falloff;
    }
  }
  return rig;
}

inline BlendshapeRig make_toy_avatar_rig() {
  return attach_teeth(make_toy_rig(), make_toy_teeth());
}

// Jaw opening by `deg` degrees about +x (positive opens the mouth).
inline Quat jaw_open(double deg) {
  return Quat(Eigen::AngleAxisd(deg * M_PI / 180.0, Vec3::UnitX()));
}

}  // namespace avforge
