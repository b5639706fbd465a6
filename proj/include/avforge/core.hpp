#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace avforge {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Quat = Eigen::Quaterniond;
using Face = std::array<int, 3>;

// Error taxonomy; the CLI maps these onto exit codes.
struct ParamError : std::runtime_error {
  explicit ParamError(const std::string& msg) : std::runtime_error(msg) {}
};
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};
struct TransportError : std::runtime_error {
  explicit TransportError(const std::string& msg) : std::runtime_error(msg) {}
};

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

inline double logit(double p) { return std::log(p / (1.0 - p)); }

// Skew-symmetric matrix such that skew(a) * b == a x b.
inline Mat3 skew(const Vec3& a) {
  Mat3 m;
  m << 0, -a.z(), a.y(), a.z(), 0, -a.x(), -a.y(), a.x(), 0;
  return m;
}

// Rotation matrix from an explicitly normalized quaternion. Kept by hand so
// the analytic derivative below stays in sync with the forward expression.
inline Mat3 quat_to_mat(const Quat& q_raw) {
  const double n = std::sqrt(q_raw.w() * q_raw.w() + q_raw.x() * q_raw.x() +
                             q_raw.y() * q_raw.y() + q_raw.z() * q_raw.z());
  if (!(n > 0.0)) throw NumericError("quat_to_mat: zero quaternion");
  const double w = q_raw.w() / n, x = q_raw.x() / n, y = q_raw.y() / n, z = q_raw.z() / n;
  Mat3 r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
      2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
      2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  return r;
}

// d(quat_to_mat)/dq as four 3x3 blocks, including the normalization chain,
// so finite differences on raw quaternion components agree.
inline std::array<Mat3, 4> quat_to_mat_jacobian(const Quat& q_raw) {
  const double n = std::sqrt(q_raw.w() * q_raw.w() + q_raw.x() * q_raw.x() +
                             q_raw.y() * q_raw.y() + q_raw.z() * q_raw.z());
  const double w = q_raw.w() / n, x = q_raw.x() / n, y = q_raw.y() / n, z = q_raw.z() / n;
  // dR/d(unit q) blocks, order (w, x, y, z).
  Mat3 dw, dx, dy, dz;
  dw << 0, -2 * z, 2 * y, 2 * z, 0, -2 * x, -2 * y, 2 * x, 0;
  dx << 0, 2 * y, 2 * z, 2 * y, -4 * x, -2 * w, 2 * z, 2 * w, -4 * x;
  dy << -4 * y, 2 * x, 2 * w, 2 * x, 0, 2 * z, -2 * w, 2 * z, -4 * y;
  dz << -4 * z, -2 * w, 2 * x, 2 * w, -4 * z, 2 * y, 2 * x, 2 * y, 0;
  const std::array<Mat3, 4> du = {dw, dx, dy, dz};
  // Chain through u = q / |q|: du_i/dq_j = (delta_ij - u_i u_j) / |q|.
  const std::array<double, 4> u = {w, x, y, z};
  std::array<Mat3, 4> out;
  for (int j = 0; j < 4; ++j) {
    Mat3 acc = Mat3::Zero();
    for (int i = 0; i < 4; ++i) {
      const double duidqj = ((i == j ? 1.0 : 0.0) - u[i] * u[j]) / n;
      acc += du[i] * duidqj;
    }
    out[j] = acc;
  }
  return out;
}

// Dense row-major image with `channels` interleaved doubles per pixel.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  Image() = default;
  Image(int w, int h, int c, double fill = 0.0)
      : width(w), height(h), channels(c), data(static_cast<size_t>(w) * h * c, fill) {}

  double& at(int y, int x, int c) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  double at(int y, int x, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  bool same_shape(const Image& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }
  size_t size() const { return data.size(); }
};

// Single-channel integer label image.
struct LabelImage {
  int width = 0;
  int height = 0;
  std::vector<int> labels;

  LabelImage() = default;
  LabelImage(int w, int h, int fill = 0)
      : width(w), height(h), labels(static_cast<size_t>(w) * h, fill) {}

  int& at(int y, int x) { return labels[static_cast<size_t>(y) * width + x]; }
  int at(int y, int x) const { return labels[static_cast<size_t>(y) * width + x]; }
};

// Shape-carrying flat tensor used on the guidance side.
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<int> s, double fill = 0.0) : shape(std::move(s)) {
    size_t n = 1;
    for (int d : shape) n *= static_cast<size_t>(d);
    data.assign(n, fill);
  }
  size_t size() const { return data.size(); }
  bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

inline Tensor image_to_tensor(const Image& img) {
  Tensor t;
  t.shape = {img.height, img.width, img.channels};
  t.data = img.data;
  return t;
}

inline Image tensor_to_image(const Tensor& t) {
  if (t.shape.size() != 3) throw ParamError("tensor_to_image: expected rank-3 tensor");
  Image img(t.shape[1], t.shape[0], t.shape[2]);
  img.data = t.data;
  return img;
}

inline int env_thread_cap() {
  if (const char* v = std::getenv("AVFORGE_THREADS")) {
    int n = std::atoi(v);
    if (n > 0) return n;
  }
  return 0;
}

// Row-parallel helper. Each worker owns a contiguous row range and must only
// write rows it owns, which keeps output bit-identical for any thread count.
inline void parallel_rows(int rows, const std::function<void(int, int)>& fn,
                          int thread_override = 0) {
  int threads = thread_override;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
    int cap = env_thread_cap();
    if (cap > 0 && cap < threads) threads = cap;
  }
  if (threads > rows) threads = rows < 1 ? 1 : rows;
  if (threads <= 1) {
    fn(0, rows);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (rows + threads - 1) / threads;
  for (int i = 0; i < threads; ++i) {
    const int lo = i * chunk;
    const int hi = std::min(rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi);
  }
  for (auto& th : pool) th.join();
}

// Deterministic 64-bit RNG wrapper: every consumer draws through these
// helpers so sequences are stable across platforms and runs.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return (engine_() >> 11) * (1.0 / 9007199254740992.0);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(uniform() * (static_cast<double>(hi) - lo + 1.0));
  }
  double normal() {
    // Box-Muller; draws two uniforms per call for a fixed consumption rate.
    double u1 = uniform(), u2 = uniform();
    if (u1 <= 0.0) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  uint64_t raw() { return engine_(); }

  // Stable stream derivation for nested consumers.
  Rng fork(uint64_t salt) const {
    std::mt19937_64 probe = engine_;
    return Rng(probe() ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545F4914F6CDD1DULL));
  }

 private:
  std::mt19937_64 engine_;
};

inline uint64_t fnv1a64(const void* bytes, size_t n, uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(bytes);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace avforge
