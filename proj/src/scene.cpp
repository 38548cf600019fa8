// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

constexpr double kAreaTol = 1e-6;

std::string fmt_half(double v) {
  const double r = std::round(v * 2.0) / 2.0 + 0.0;  // + 0.0 folds -0 into 0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", r);
  return buf;
}

std::string ptr(std::string_view base, std::size_t k) { return std::string(base) + "/" + std::to_string(k); }

// Overlap area of `b` with `a`, both on the same plane, in `a`'s frame.
double coplanar_overlap(const RectPanel& a, const RectPanel& b) {
  const Vec3 u = normalized(a.edge_u());
  const Vec3 v = normalized(a.edge_v());
  double bu0 = 1e300, bu1 = -1e300, bv0 = 1e300, bv1 = -1e300;
  for (const Vec3& c : {b.origin(), b.origin() + b.edge_u(), b.origin() + b.edge_v(),
                        b.origin() + b.edge_u() + b.edge_v()}) {
    const Vec3 d = c - a.origin();
    bu0 = std::min(bu0, dot(d, u));
    bu1 = std::max(bu1, dot(d, u));
    bv0 = std::min(bv0, dot(d, v));
    bv1 = std::max(bv1, dot(d, v));
  }
  const double ou = std::min(a.width(), bu1) - std::max(0.0, bu0);
  const double ov = std::min(a.height(), bv1) - std::max(0.0, bv0);
  return (ou > 0.0 && ov > 0.0) ? ou * ov : 0.0;
}

bool same_plane(const RectPanel& a, const RectPanel& b) {
  return dot(a.normal(), b.normal()) > 1.0 - 1e-12 && std::abs(a.signed_distance(b.origin())) < 1e-9;
}

}  // namespace

std::string_view to_string(SurfaceRole role) {
  switch (role) {
    case SurfaceRole::PlainWall: return "plain_wall";
    case SurfaceRole::Floor: return "floor";
    case SurfaceRole::Ceiling: return "ceiling";
    case SurfaceRole::HsfWall: return "hsf_wall";
  }
  return "?";
}

std::optional<SurfaceRole> parse_role(std::string_view s) {
  for (auto r : {SurfaceRole::PlainWall, SurfaceRole::Floor, SurfaceRole::Ceiling, SurfaceRole::HsfWall}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::vector<RectPanel> Scene::blockers() const {
  std::vector<RectPanel> out;
  out.reserve(surfaces.size());
  for (const auto& s : surfaces) out.push_back(s.panel);
  return out;
}

const Tile* Scene::find_tile(std::string_view id) const {
  const auto it = std::find_if(tiles.begin(), tiles.end(), [&](const Tile& t) { return t.id == id; });
  return it == tiles.end() ? nullptr : &*it;
}

Tile* Scene::find_tile(std::string_view id) {
  return const_cast<Tile*>(std::as_const(*this).find_tile(id));
}

const Surface* Scene::find_surface(std::string_view id) const {
  const auto it = std::find_if(surfaces.begin(), surfaces.end(), [&](const Surface& s) { return s.id == id; });
  return it == surfaces.end() ? nullptr : &*it;
}

Scene Scene::uncoated() const {
  Scene out = *this;
  for (auto& s : out.surfaces) {
    if (s.role == SurfaceRole::HsfWall) {
      s.role = SurfaceRole::PlainWall;
      s.tile_size = 0.0;
    }
  }
  out.tiles.clear();
  return out;
}

std::string tile_id_for(const Vec3& center) {
  return fmt_half(center.x) + "/" + fmt_half(center.y) + "/" + fmt_half(center.z);
}

std::vector<Tile> tessellate(const Surface& surface, const TileConfig& config) {
  const double s = surface.tile_size;
  if (!(s > 0.0)) {
    throw SceneError(SceneError::Kind::Tessellation, surface.id, "tile size must be positive");
  }
  const RectPanel& wall = surface.panel;
  auto count = [&](double len, const char* edge) {
    const double n = len / s;
    const double r = std::round(n);
    if (r < 1.0 || std::abs(n - r) > 1e-6 * std::max(1.0, n)) {
      throw SceneError(SceneError::Kind::Tessellation, surface.id,
                       std::string("wall ") + edge + " length is not a whole number of tiles");
    }
    return static_cast<int>(r);
  };
  const int nu = count(wall.width(), "edge_u");
  const int nv = count(wall.height(), "edge_v");
  const Vec3 du = wall.edge_u() / nu;
  const Vec3 dv = wall.edge_v() / nv;

  std::vector<Tile> tiles;
  tiles.reserve(static_cast<std::size_t>(nu * nv));
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) {
      RectPanel panel(wall.origin() + static_cast<double>(i) * du + static_cast<double>(j) * dv, du, dv);
      tiles.push_back(Tile{tile_id_for(panel.center()), panel, surface.id, config});
    }
  }
  return tiles;
}

void validate(const Scene& scene) {
  using K = SceneError::Kind;
  if (!(scene.frequency > 0.0) || !std::isfinite(scene.frequency)) {
    throw SceneError(K::Schema, "/frequency_ghz", "frequency must be positive");
  }
  if (!std::isfinite(scene.tx_power_dbmw)) {
    throw SceneError(K::Schema, "/power_dbmw", "transmit power must be finite");
  }
  if (scene.surfaces.empty()) throw SceneError(K::Schema, "/walls", "scene needs at least one wall");

  std::unordered_map<std::string, std::size_t> surface_index;
  for (std::size_t k = 0; k < scene.surfaces.size(); ++k) {
    const auto& s = scene.surfaces[k];
    if (!surface_index.emplace(s.id, k).second) {
      throw SceneError(K::DuplicateId, ptr("/walls", k) + "/id", "duplicate wall id '" + s.id + "'");
    }
    try {
      validate(s.material);
    } catch (const DomainError& e) {
      throw SceneError(K::Schema, ptr("/walls", k) + "/material", e.what());
    }
    if (s.role == SurfaceRole::HsfWall && !(s.tile_size > 0.0)) {
      throw SceneError(K::Schema, ptr("/walls", k) + "/hsf/tile_size_m", "tile size must be positive");
    }
  }

  std::map<std::string, double> covered;
  for (std::size_t k = 0; k < scene.tiles.size(); ++k) {
    const auto& t = scene.tiles[k];
    const auto it = surface_index.find(t.host);
    if (it == surface_index.end() || scene.surfaces[it->second].role != SurfaceRole::HsfWall) {
      throw SceneError(K::Tessellation, t.id, "tile host '" + t.host + "' is not an HSF wall");
    }
    const RectPanel& wall = scene.surfaces[it->second].panel;
    for (const Vec3& c : {t.panel.origin(), t.panel.origin() + t.panel.edge_u() + t.panel.edge_v()}) {
      if (std::abs(wall.signed_distance(c)) > 1e-9 || !wall.contains(c, 1e-6)) {
        throw SceneError(K::Tessellation, t.id, "tile extends beyond its host wall '" + t.host + "'");
      }
    }
    covered[t.host] += t.panel.area();
    try {
      validate(t.config);
    } catch (const DomainError& e) {
      throw SceneError(K::Schema, t.id, e.what());
    }
  }

  for (std::size_t a = 0; a < scene.tiles.size(); ++a) {
    for (std::size_t b = a + 1; b < scene.tiles.size(); ++b) {
      const auto& ta = scene.tiles[a];
      const auto& tb = scene.tiles[b];
      if (!same_plane(ta.panel, tb.panel)) continue;
      if (coplanar_overlap(ta.panel, tb.panel) > kAreaTol) {
        throw SceneError(K::Tessellation, ta.id + "," + tb.id,
                         "tiles '" + ta.id + "' (" + ta.host + ") and '" + tb.id + "' (" + tb.host + ") overlap");
      }
    }
  }

  for (const auto& s : scene.surfaces) {
    if (s.role != SurfaceRole::HsfWall) continue;
    const double area = s.panel.area();
    if (std::abs(covered[s.id] - area) > kAreaTol * area) {
      throw SceneError(K::Tessellation, s.id, "tiles do not cover the HSF wall");
    }
  }

  std::unordered_map<std::string, std::size_t> tile_index;
  for (std::size_t k = 0; k < scene.tiles.size(); ++k) {
    if (!tile_index.emplace(scene.tiles[k].id, k).second) {
      throw SceneError(K::DuplicateId, scene.tiles[k].id, "duplicate tile id");
    }
  }

  Vec3 lo{1e300, 1e300, 1e300};
  Vec3 hi{-1e300, -1e300, -1e300};
  for (const auto& s : scene.surfaces) {
    const auto& p = s.panel;
    for (const Vec3& c : {p.origin(), p.origin() + p.edge_u(), p.origin() + p.edge_v(),
                          p.origin() + p.edge_u() + p.edge_v()}) {
      lo = {std::min(lo.x, c.x), std::min(lo.y, c.y), std::min(lo.z, c.z)};
      hi = {std::max(hi.x, c.x), std::max(hi.y, c.y), std::max(hi.z, c.z)};
    }
  }
  // An axis the walls do not span (a lone wall seen along its normal) bounds nothing.
  auto within = [](double p, double a, double b) {
    constexpr double tol = 1e-9;
    return b - a < tol || (p >= a - tol && p <= b + tol);
  };
  auto inside = [&](const Vec3& p) {
    return within(p.x, lo.x, hi.x) && within(p.y, lo.y, hi.y) && within(p.z, lo.z, hi.z);
  };
  if (!inside(scene.tx)) throw SceneError(K::OutOfRoom, "/tx", "transmitter outside the room");
  for (std::size_t k = 0; k < scene.rx.size(); ++k) {
    if (!inside(scene.rx[k])) throw SceneError(K::OutOfRoom, ptr("/rx", k), "receiver outside the room");
    if (scene.rx[k] == scene.tx) throw SceneError(K::Schema, ptr("/rx", k), "receiver coincides with transmitter");
  }
}

}  // namespace hsfsim
