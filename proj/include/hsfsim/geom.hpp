// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace hsfsim {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(b - a); }

/// Unit vector along `a`. Throws GeometryError for a zero vector.
Vec3 normalized(const Vec3& a);

/// Planar rectangle spanned by two orthogonal edges from a corner. The
/// normal is normalize(edge_u x edge_v); the panel reflects on that side
/// and blocks rays from both sides.
class RectPanel {
 public:
  /// Throws GeometryError for zero-area or non-rectangular input.
  RectPanel(const Vec3& origin, const Vec3& edge_u, const Vec3& edge_v);

  const Vec3& origin() const { return origin_; }
  const Vec3& edge_u() const { return edge_u_; }
  const Vec3& edge_v() const { return edge_v_; }
  const Vec3& normal() const { return normal_; }
  Vec3 center() const { return origin_ + 0.5 * (edge_u_ + edge_v_); }
  double width() const { return norm(edge_u_); }
  double height() const { return norm(edge_v_); }
  double area() const { return width() * height(); }

  /// Signed distance of `p` from the panel plane, positive on the normal side.
  double signed_distance(const Vec3& p) const { return dot(p - origin_, normal_); }

  /// Rectangle coordinates (a, b) of the projection of `p`, each in [0, 1]
  /// inside the panel.
  std::pair<double, double> local_coords(const Vec3& p) const;

  /// True when `p`, assumed on the plane, lies within the rectangle grown by `tol` meters.
  bool contains(const Vec3& p, double tol = 1e-9) const;

  /// Parameter t of the crossing of segment a->b with the panel rectangle,
  /// restricted to the open interval (0, 1). Parallel segments never cross.
  std::optional<double> crossing(const Vec3& a, const Vec3& b) const;

  friend bool operator==(const RectPanel& l, const RectPanel& r) {
    return l.origin_ == r.origin_ && l.edge_u_ == r.edge_u_ && l.edge_v_ == r.edge_v_;
  }

 private:
  Vec3 origin_;
  Vec3 edge_u_;
  Vec3 edge_v_;
  Vec3 normal_;
};

struct GeometricPath {
  std::vector<Vec3> vertices;  // tx, bounce points..., rx
  std::vector<double> segment_lengths;
  double total_length = 0.0;
  std::vector<double> incidence_angles;  // rad, one per bounce, from the panel normal

  std::size_t bounce_count() const { return vertices.size() < 2 ? 0 : vertices.size() - 2; }

  /// Builds a path through the given vertices; `panels[k]` hosts vertex k+1.
  static GeometricPath through(std::vector<Vec3> vertices, std::span<const RectPanel* const> panels);
};

/// Reflection of `p` across the infinite plane containing `panel`.
Vec3 mirror_point(const Vec3& p, const RectPanel& panel);

/// Specular path tx -> panels[0] -> ... -> rx by the image method, or
/// nullopt when a bounce point misses its rectangle or either neighbour of a
/// bounce sits behind the reflecting side.
std::optional<GeometricPath> trace_image_path(const Vec3& tx, const Vec3& rx,
                                              std::span<const RectPanel* const> panels);
std::optional<GeometricPath> trace_image_path(const Vec3& tx, const Vec3& rx,
                                              std::span<const RectPanel> panels);

/// Angle in [0, pi/2] between a propagation direction and the panel normal.
double incidence_angle(const Vec3& direction, const RectPanel& panel);

/// True iff the open segment (a, b) crosses any blocker rectangle.
bool is_occluded(const Vec3& a, const Vec3& b, std::span<const RectPanel> blockers);

}  // namespace hsfsim
