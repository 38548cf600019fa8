// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/cir.hpp"

#include <algorithm>
#include <cmath>

#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

class ChainSearch {
 public:
  ChainSearch(const Scene& scene, const Vec3& tx, const Vec3& rx, std::span<const Tile* const> candidates,
              const CoeffTable& table, const CirOptions& options)
      : scene_(scene), blockers_(scene.blockers()), tx_(tx), rx_(rx), candidates_(candidates), table_(table),
        opt_(options) {}

  std::vector<PathComponent> run() {
    for (const Tile* t : candidates_) {
      if (t->config.mode != TileMode::Reflect) continue;
      if (!visible(tx_, *t)) continue;
      chain_.push_back(t);
      hop(tx_);
      chain_.pop_back();
    }
    return std::move(out_);
  }

 private:
  bool visible(const Vec3& from, const Tile& t) const {
    return t.panel.signed_distance(from) > 1e-9 && !is_occluded(from, t.panel.center(), blockers_);
  }

  // Current chain ends at chain_.back(), entered from `prev`.
  void hop(const Vec3& prev) {
    const Tile& t = *chain_.back();
    const Vec3 c = t.panel.center();
    const auto s = steer(c - prev, steering_target(t.config, t.panel), t.panel, wavelength(scene_.frequency),
                         opt_.unit_cell_pitch, opt_.rounding);
    if (!s) return;
    auto reaches = [&](const Vec3& next) {
      const Vec3 d = next - c;
      if (!(dot(d, t.panel.normal()) > 1e-9)) return false;
      const double err = std::acos(std::clamp(dot(normalized(d), s->direction), -1.0, 1.0));
      return err <= opt_.beam_tolerance && !is_occluded(c, next, blockers_);
    };

    if (reaches(rx_)) emit();
    if (static_cast<int>(chain_.size()) >= opt_.max_hsf_bounces) return;
    for (const Tile* n : candidates_) {
      if (n->config.mode != TileMode::Reflect || n == &t) continue;
      if (std::find(chain_.begin(), chain_.end(), n) != chain_.end()) continue;
      if (n->panel.signed_distance(c) <= 1e-9) continue;
      if (!reaches(n->panel.center())) continue;
      chain_.push_back(n);
      hop(c);
      chain_.pop_back();
    }
  }

  void emit() {
    std::vector<Vec3> v{tx_};
    std::vector<const RectPanel*> panels;
    for (const Tile* t : chain_) {
      v.push_back(t->panel.center());
      panels.push_back(&t->panel);
    }
    v.push_back(rx_);
    auto path = GeometricPath::through(std::move(v), panels);
    out_.push_back(hsf_reflect_component(path, chain_, table_, scene_.frequency, opt_.hsf));
  }

  const Scene& scene_;
  std::vector<RectPanel> blockers_;
  Vec3 tx_;
  Vec3 rx_;
  std::span<const Tile* const> candidates_;
  const CoeffTable& table_;
  const CirOptions& opt_;
  std::vector<const Tile*> chain_;
  std::vector<PathComponent> out_;
};

bool same_vertices(const GeometricPath& a, const GeometricPath& b) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (std::size_t k = 0; k < a.vertices.size(); ++k) {
    if (distance(a.vertices[k], b.vertices[k]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

bool tile_sees(const Scene& scene, const Tile& tile, const Vec3& to) {
  return tile.panel.signed_distance(to) > 1e-9 && !is_occluded(tile.panel.center(), to, scene.blockers());
}

std::vector<PathComponent> hsf_reflect_paths(const Scene& scene, const Vec3& tx, const Vec3& rx,
                                             std::span<const Tile* const> candidates, const CoeffTable& table,
                                             const CirOptions& options) {
  if (options.max_hsf_bounces < 0) throw DomainError("max HSF bounces must be non-negative");
  if (options.max_hsf_bounces == 0) return {};
  return ChainSearch(scene, tx, rx, candidates, table, options).run();
}

std::optional<PathComponent> tile_leakage(const Scene& scene, const Vec3& tx, const Vec3& rx, const Tile& tile,
                                          const CoeffTable& table, const HsfModel& model) {
  if (tile.config.mode != TileMode::Absorb || model.perfect_absorber) return std::nullopt;
  const RectPanel* panels[] = {&tile.panel};
  auto path = trace_image_path(tx, rx, panels);
  if (!path) return std::nullopt;
  const auto blockers = scene.blockers();
  if (is_occluded(path->vertices[0], path->vertices[1], blockers) ||
      is_occluded(path->vertices[1], path->vertices[2], blockers)) {
    return std::nullopt;
  }
  return hsf_leakage_component(*path, tile, table, scene.frequency, model);
}

ChannelResponse assemble_cir(const Scene& scene, const Vec3& tx, const Vec3& rx, const CoeffTable& table,
                             const CirOptions& options) {
  if (options.mode == CirMode::Plain) {
    return plain_response(scene, tx, rx, options.budget, options.pol);
  }

  ChannelResponse cr;
  cr.frequency = scene.frequency;
  const auto blockers = scene.blockers();
  if (auto los = los_component(tx, rx, scene.frequency, blockers)) cr.components.push_back(std::move(*los));

  std::vector<const Tile*> tiles;
  tiles.reserve(scene.tiles.size());
  for (const auto& t : scene.tiles) tiles.push_back(&t);
  for (auto& c : hsf_reflect_paths(scene, tx, rx, tiles, table, options)) cr.components.push_back(std::move(c));

  std::vector<PathComponent> leaks;
  for (const auto& t : scene.tiles) {
    auto c = tile_leakage(scene, tx, rx, t, table, options.hsf);
    if (!c) continue;
    // A bounce on a shared tile edge is claimed by both neighbours; keep the first.
    const bool dup = std::any_of(leaks.begin(), leaks.end(),
                                 [&](const PathComponent& l) { return same_vertices(l.path, c->path); });
    if (!dup) leaks.push_back(std::move(*c));
  }
  for (auto& c : leaks) cr.components.push_back(std::move(c));

  cr.sort();
  cr.validate();
  return cr;
}

}  // namespace hsfsim
