#pragma once

#include <nlohmann/json_fwd.hpp>

#include "avforge/core.hpp"

namespace avforge {

// Pinhole camera. Camera space follows the OpenCV convention: x right,
// y down, z forward into the scene; image coordinates u = fx*x/z + cx,
// v = fy*y/z + cy with pixel centers at half-integer coordinates.
//
// Normal maps are emitted in the view frame (x right, y up, z toward the
// viewer), i.e. diag(1,-1,-1) applied to camera-space vectors, so a surface
// facing the camera head-on reads (0,0,1).
struct Camera {
  double fx = 0, fy = 0, cx = 0, cy = 0;
  int width = 0, height = 0;
  Mat4 world_to_camera = Mat4::Identity();

  bool valid() const {
    if (!(fx > 0.0) || !(fy > 0.0)) return false;
    if (width <= 0 || height <= 0) return false;
    return world_to_camera.allFinite();
  }

  Mat3 rotation() const { return world_to_camera.topLeftCorner<3, 3>(); }
  Vec3 translation() const { return world_to_camera.topRightCorner<3, 1>(); }

  Vec3 to_camera(const Vec3& p_world) const {
    return rotation() * p_world + translation();
  }

  // Returns (u, v, z_cam); z <= 0 means behind the camera.
  Vec3 project(const Vec3& p_world) const {
    const Vec3 pc = to_camera(p_world);
    if (pc.z() <= 0.0) return Vec3(0.0, 0.0, pc.z());
    return Vec3(fx * pc.x() / pc.z() + cx, fy * pc.y() / pc.z() + cy, pc.z());
  }

  // Direction (in camera space, unnormalized, z = 1) of the ray through the
  // center of pixel (px, py).
  Vec3 pixel_ray_dir(double u, double v) const {
    return Vec3((u - cx) / fx, (v - cy) / fy, 1.0);
  }

  // Camera-space vector -> view-frame vector used for normal images.
  static Vec3 to_view_frame(const Vec3& n_cam) {
    return Vec3(n_cam.x(), -n_cam.y(), -n_cam.z());
  }

  Vec3 normal_to_view(const Vec3& n_world) const {
    return to_view_frame(rotation() * n_world);
  }
};

inline void require_valid(const Camera& cam) {
  if (!cam.valid()) throw ParamError("camera: degenerate intrinsics or non-finite pose");
}

// Orbit camera looking at `center` from yaw/pitch (degrees) at `radius`,
// with a vertical field of view `fov_deg`. Yaw 0 looks down -z onto the
// front of the head; pitch > 0 looks down from above.
inline Camera make_orbit_camera(const Vec3& center, double radius, double yaw_deg,
                                double pitch_deg, int width, int height,
                                double fov_deg = 40.0) {
  const double yaw = yaw_deg * M_PI / 180.0;
  const double pitch = pitch_deg * M_PI / 180.0;
  const Vec3 eye = center + radius * Vec3(std::sin(yaw) * std::cos(pitch),
                                          std::sin(pitch),
                                          std::cos(yaw) * std::cos(pitch));
  const Vec3 fwd = (center - eye).normalized();  // camera z
  Vec3 up_hint(0, 1, 0);
  if (std::abs(fwd.dot(up_hint)) > 0.999) up_hint = Vec3(0, 0, 1);
  const Vec3 x_axis = fwd.cross(up_hint).normalized();  // right
  const Vec3 y_axis = fwd.cross(x_axis);                // down
  Mat3 r_cw;  // rows are camera axes expressed in world
  r_cw.row(0) = x_axis.transpose();
  r_cw.row(1) = y_axis.transpose();
  r_cw.row(2) = fwd.transpose();

  Camera cam;
  cam.width = width;
  cam.height = height;
  cam.fy = 0.5 * height / std::tan(0.5 * fov_deg * M_PI / 180.0);
  cam.fx = cam.fy;
  cam.cx = 0.5 * width;
  cam.cy = 0.5 * height;
  cam.world_to_camera = Mat4::Identity();
  cam.world_to_camera.topLeftCorner<3, 3>() = r_cw;
  cam.world_to_camera.topRightCorner<3, 1>() = -r_cw * eye;
  return cam;
}

}  // namespace avforge
