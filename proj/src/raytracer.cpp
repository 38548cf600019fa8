// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/raytracer.hpp"

#include <algorithm>
#include <cmath>

#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

bool same_vertices(const GeometricPath& a, const GeometricPath& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (std::size_t k = 0; k < a.vertices.size(); ++k) {
    if (distance(a.vertices[k], b.vertices[k]) > 1e-9) return false;
  }
  return true;
}

class Enumerator {
 public:
  Enumerator(const Scene& scene, const Vec3& tx, const Vec3& rx)
      : scene_(scene), blockers_(scene.blockers()), tx_(tx), rx_(rx) {}

  std::vector<TracedPath> run(int max_order) {
    if (!is_occluded(tx_, rx_, blockers_)) {
      found_.push_back({GeometricPath::through({tx_, rx_}, {}), {}});
    }
    std::vector<Vec3> images{tx_};
    for (int order = 1; order <= max_order; ++order) {
      extend(order, images);
    }
    return std::move(found_);
  }

 private:
  // Depth-first over surface sequences of exactly `order` bounces.
  void extend(int order, std::vector<Vec3>& images) {
    if (static_cast<int>(seq_.size()) == order) {
      try_sequence();
      return;
    }
    for (std::size_t s = 0; s < scene_.surfaces.size(); ++s) {
      if (!seq_.empty() && seq_.back() == s) continue;
      const RectPanel& panel = scene_.surfaces[s].panel;
      // A virtual source behind the reflecting side cannot produce a bounce.
      if (panel.signed_distance(images.back()) <= 1e-9) continue;
      seq_.push_back(s);
      images.push_back(mirror_point(images.back(), panel));
      extend(order, images);
      images.pop_back();
      seq_.pop_back();
    }
  }

  void try_sequence() {
    std::vector<const RectPanel*> panels;
    panels.reserve(seq_.size());
    for (std::size_t s : seq_) panels.push_back(&scene_.surfaces[s].panel);
    auto path = trace_image_path(tx_, rx_, panels);
    if (!path) return;
    const auto& v = path->vertices;
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (is_occluded(v[k - 1], v[k], blockers_)) return;
    }
    // Adjacent coplanar surfaces can both claim a bounce that lands on their shared edge.
    for (const auto& f : found_) {
      if (same_vertices(f.geometry, *path)) return;
    }
    found_.push_back({std::move(*path), seq_});
  }

  const Scene& scene_;
  std::vector<RectPanel> blockers_;
  Vec3 tx_;
  Vec3 rx_;
  std::vector<std::size_t> seq_;
  std::vector<TracedPath> found_;
};

}  // namespace

std::vector<TracedPath> enumerate_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                        const TraceBudget& budget) {
  if (budget.max_order < 0) throw DomainError("max reflection order must be non-negative");
  auto paths = Enumerator(scene, tx, rx).run(budget.max_order);
  auto ids = [&](const TracedPath& p) {
    std::vector<std::string_view> out;
    for (std::size_t s : p.surfaces) out.push_back(scene.surfaces[s].id);
    return out;
  };
  std::stable_sort(paths.begin(), paths.end(), [&](const TracedPath& a, const TracedPath& b) {
    if (a.surfaces.size() != b.surfaces.size()) return a.surfaces.size() < b.surfaces.size();
    return ids(a) < ids(b);
  });
  return paths;
}

PathComponent plain_path_component(const TracedPath& path, const Scene& scene, double frequency_hz,
                                   std::optional<Polarization> pol) {
  const auto& g = path.geometry;
  std::complex<double> factor = spreading_gain(frequency_hz, g.total_length);
  std::vector<std::string> via;
  for (std::size_t k = 0; k < path.surfaces.size(); ++k) {
    const Surface& s = scene.surfaces.at(path.surfaces[k]);
    if (s.role == SurfaceRole::HsfWall) {
      throw DomainError("surface '" + s.id + "' is HSF-coated; plain paths need uncoated surfaces");
    }
    const double theta = incidence_angle(g.vertices[k + 1] - g.vertices[k], s.panel);
    factor *= reflection_factor(complex_permittivity(s.material, frequency_hz), theta, pol);
    via.push_back(s.id);
  }

  const PathKind kind = path.surfaces.empty() ? PathKind::Los : PathKind::PlainReflected;
  return make_component(kind, g, factor, frequency_hz, std::move(via));
}

ChannelResponse plain_response(const Scene& scene, const Vec3& tx, const Vec3& rx, const TraceBudget& budget,
                               std::optional<Polarization> pol) {
  const Scene plain = scene.uncoated();
  ChannelResponse cr;
  cr.frequency = scene.frequency;
  for (const auto& p : enumerate_paths(plain, tx, rx, budget)) {
    auto c = plain_path_component(p, plain, scene.frequency, pol);
    if (20.0 * std::log10(std::abs(c.gain)) >= budget.min_path_gain_db) {
      cr.components.push_back(std::move(c));
    }
  }
  cr.sort();
  return cr;
}

double plain_received_power(const Scene& scene, const Vec3& tx, const Vec3& rx, double tx_power_dbmw,
                            double frequency_hz, const TraceBudget& budget, Aggregation mode,
                            std::optional<Polarization> pol) {
  Scene s = scene;
  s.frequency = frequency_hz;
  return received_power(plain_response(s, tx, rx, budget, pol), tx_power_dbmw, mode);
}

}  // namespace hsfsim
