// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/geom.hpp"

#include <algorithm>

#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

constexpr double kSegmentEps = 1e-9;  // open-segment margin, in segment parameter
constexpr double kSideEps = 1e-9;     // m

}  // namespace

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw GeometryError("cannot normalize a zero-length vector");
  }
  return a / n;
}

RectPanel::RectPanel(const Vec3& origin, const Vec3& edge_u, const Vec3& edge_v)
    : origin_(origin), edge_u_(edge_u), edge_v_(edge_v) {
  const double wu = norm(edge_u);
  const double wv = norm(edge_v);
  if (!(wu > 0.0) || !(wv > 0.0)) {
    throw GeometryError("panel has zero area");
  }
  if (std::abs(dot(edge_u, edge_v)) > 1e-9 * wu * wv) {
    throw GeometryError("panel edges are not orthogonal");
  }
  normal_ = normalized(cross(edge_u, edge_v));
}

std::pair<double, double> RectPanel::local_coords(const Vec3& p) const {
  const Vec3 d = p - origin_;
  return {dot(d, edge_u_) / dot(edge_u_, edge_u_), dot(d, edge_v_) / dot(edge_v_, edge_v_)};
}

bool RectPanel::contains(const Vec3& p, double tol) const {
  const auto [a, b] = local_coords(p);
  const double ta = tol / width();
  const double tb = tol / height();
  return a >= -ta && a <= 1.0 + ta && b >= -tb && b <= 1.0 + tb;
}

std::optional<double> RectPanel::crossing(const Vec3& a, const Vec3& b) const {
  const Vec3 d = b - a;
  const double denom = dot(d, normal_);
  if (std::abs(denom) <= 1e-15 * norm(d)) {
    return std::nullopt;
  }
  const double t = dot(origin_ - a, normal_) / denom;
  if (t <= kSegmentEps || t >= 1.0 - kSegmentEps) {
    return std::nullopt;
  }
  if (!contains(a + t * d)) {
    return std::nullopt;
  }
  return t;
}

GeometricPath GeometricPath::through(std::vector<Vec3> vertices,
                                     std::span<const RectPanel* const> panels) {
  GeometricPath path;
  path.vertices = std::move(vertices);
  const auto& v = path.vertices;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double len = distance(v[k - 1], v[k]);
    path.segment_lengths.push_back(len);
    path.total_length += len;
  }
  for (std::size_t k = 1; k + 1 < v.size() && k - 1 < panels.size(); ++k) {
    path.incidence_angles.push_back(incidence_angle(v[k] - v[k - 1], *panels[k - 1]));
  }
  return path;
}

Vec3 mirror_point(const Vec3& p, const RectPanel& panel) {
  return p - 2.0 * panel.signed_distance(p) * panel.normal();
}

std::optional<GeometricPath> trace_image_path(const Vec3& tx, const Vec3& rx,
                                              std::span<const RectPanel* const> panels) {
  const std::size_t n = panels.size();
  std::vector<Vec3> images;
  images.reserve(n + 1);
  images.push_back(tx);
  for (const RectPanel* panel : panels) {
    images.push_back(mirror_point(images.back(), *panel));
  }

  // Walk back from the receiver, intersecting each image ray with its panel.
  std::vector<Vec3> vertices(n + 2);
  vertices.front() = tx;
  vertices.back() = rx;
  Vec3 target = rx;
  for (std::size_t k = n; k >= 1; --k) {
    const auto t = panels[k - 1]->crossing(target, images[k]);
    if (!t) {
      return std::nullopt;
    }
    target = target + *t * (images[k] - target);
    vertices[k] = target;
  }

  for (std::size_t k = 1; k <= n; ++k) {
    const RectPanel& panel = *panels[k - 1];
    if (panel.signed_distance(vertices[k - 1]) <= kSideEps ||
        panel.signed_distance(vertices[k + 1]) <= kSideEps) {
      return std::nullopt;
    }
  }
  return GeometricPath::through(std::move(vertices), panels);
}

std::optional<GeometricPath> trace_image_path(const Vec3& tx, const Vec3& rx,
                                              std::span<const RectPanel> panels) {
  std::vector<const RectPanel*> ptrs;
  ptrs.reserve(panels.size());
  for (const auto& p : panels) {
    ptrs.push_back(&p);
  }
  return trace_image_path(tx, rx, std::span<const RectPanel* const>(ptrs));
}

double incidence_angle(const Vec3& direction, const RectPanel& panel) {
  const Vec3 d = normalized(direction);
  const double c = std::clamp(std::abs(dot(d, panel.normal())), 0.0, 1.0);
  return std::acos(c);
}

bool is_occluded(const Vec3& a, const Vec3& b, std::span<const RectPanel> blockers) {
  return std::any_of(blockers.begin(), blockers.end(),
                     [&](const RectPanel& p) { return p.crossing(a, b).has_value(); });
}

}  // namespace hsfsim
