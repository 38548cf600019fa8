// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "hsfsim/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"

namespace hsfsim {

namespace {

using nlohmann::json;
using K = SceneError::Kind;

constexpr const char* kFormat = "hsfsim-scene";
constexpr int kVersion = 1;

std::string at(const std::string& base, std::string_view key) { return base + "/" + std::string(key); }
std::string at(const std::string& base, std::size_t k) { return base + "/" + std::to_string(k); }

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> keys) {
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (auto key : keys) known = known || key == k;
    if (!known) throw SceneError(K::Schema, at(where, k), "unknown key");
  }
}

const json& member(const json& obj, std::string_view key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SceneError(K::Schema, at(where, key), "missing required key");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw SceneError(K::Schema, where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SceneError(K::Schema, where, "expected a finite number");
  return v;
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw SceneError(K::Schema, where, "expected a string");
  return j.get<std::string>();
}

Vec3 vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw SceneError(K::Schema, where, "expected [x, y, z]");
  return {number(j[0], at(where, 0)), number(j[1], at(where, 1)), number(j[2], at(where, 2))};
}

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

void check_units(const json& doc) {
  const auto it = doc.find("units");
  if (it == doc.end()) throw SceneError(K::Units, "/units", "scene files must declare units");
  if (!it->is_object()) throw SceneError(K::Units, "/units", "expected an object");
  reject_unknown(*it, "/units", {"length", "frequency", "power", "angle"});
  const std::pair<const char*, const char*> expected[] = {
      {"length", "m"}, {"frequency", "GHz"}, {"power", "dBmW"}, {"angle", "deg"}};
  for (const auto& [key, unit] : expected) {
    const std::string where = at("/units", key);
    const auto u = it->find(key);
    if (u == it->end()) throw SceneError(K::Units, where, std::string("missing unit, expected \"") + unit + "\"");
    if (text(*u, where) != unit) {
      throw SceneError(K::Units, where, std::string("unsupported unit, expected \"") + unit + "\"");
    }
  }
}

MaterialSpec parse_material(const json& j, const std::string& where) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (auto m = builtin_material(name)) return *m;
    throw SceneError(K::Schema, where, "unknown material '" + name + "'");
  }
  if (!j.is_object()) throw SceneError(K::Schema, where, "expected a material name or object");
  reject_unknown(j, where, {"name", "eps_r", "sigma_coeff", "sigma_exp"});
  MaterialSpec m;
  m.name = text(member(j, "name", where), at(where, "name"));
  m.real_permittivity = number(member(j, "eps_r", where), at(where, "eps_r"));
  m.conductivity_coeff = number(member(j, "sigma_coeff", where), at(where, "sigma_coeff"));
  m.conductivity_exponent = number(member(j, "sigma_exp", where), at(where, "sigma_exp"));
  return m;
}

json material_json(const MaterialSpec& m) {
  if (auto b = builtin_material(m.name); b && *b == m) return m.name;
  return {{"name", m.name},
          {"eps_r", m.real_permittivity},
          {"sigma_coeff", m.conductivity_coeff},
          {"sigma_exp", m.conductivity_exponent}};
}

std::optional<TileMode> parse_mode(std::string_view s) {
  if (s == "reflect") return TileMode::Reflect;
  if (s == "absorb") return TileMode::Absorb;
  if (s == "inert") return TileMode::Inert;
  return std::nullopt;
}

std::string_view mode_name(TileMode m) {
  switch (m) {
    case TileMode::Reflect: return "reflect";
    case TileMode::Absorb: return "absorb";
    case TileMode::Inert: return "inert";
  }
  return "?";
}

Surface parse_wall(const json& j, const std::string& where) {
  if (!j.is_object()) throw SceneError(K::Schema, where, "expected an object");
  reject_unknown(j, where, {"id", "corner", "edge_u", "edge_v", "role", "material", "hsf"});
  const std::string id = text(member(j, "id", where), at(where, "id"));
  const Vec3 corner = vec3(member(j, "corner", where), at(where, "corner"));
  const Vec3 eu = vec3(member(j, "edge_u", where), at(where, "edge_u"));
  const Vec3 ev = vec3(member(j, "edge_v", where), at(where, "edge_v"));
  std::optional<RectPanel> panel;
  try {
    panel.emplace(corner, eu, ev);
  } catch (const GeometryError& e) {
    throw SceneError(K::Schema, where, e.what());
  }

  const std::string role_s = text(member(j, "role", where), at(where, "role"));
  const auto role = parse_role(role_s);
  if (!role) throw SceneError(K::Schema, at(where, "role"), "unknown role '" + role_s + "'");

  Surface s{id, *panel, *role, concrete(), 0.0};
  if (const auto m = j.find("material"); m != j.end()) s.material = parse_material(*m, at(where, "material"));

  const auto h = j.find("hsf");
  if (*role == SurfaceRole::HsfWall) {
    if (h == j.end()) throw SceneError(K::Schema, at(where, "hsf"), "hsf_wall needs an hsf block");
    if (!h->is_object()) throw SceneError(K::Schema, at(where, "hsf"), "expected an object");
    reject_unknown(*h, at(where, "hsf"), {"tile_size_m"});
    s.tile_size = number(member(*h, "tile_size_m", at(where, "hsf")), at(where, "hsf/tile_size_m"));
    if (!(s.tile_size > 0.0)) throw SceneError(K::Schema, at(where, "hsf/tile_size_m"), "tile size must be positive");
  } else if (h != j.end()) {
    throw SceneError(K::Schema, at(where, "hsf"), "only hsf_wall surfaces take an hsf block");
  }
  return s;
}

TileConfig parse_override(const json& j, const std::string& where) {
  const std::string mode_s = text(member(j, "mode", where), at(where, "mode"));
  const auto mode = parse_mode(mode_s);
  if (!mode) throw SceneError(K::Schema, at(where, "mode"), "unknown tile mode '" + mode_s + "'");
  TileConfig c;
  c.mode = *mode;
  if (*mode == TileMode::Reflect) {
    c.steer_theta = deg2rad(number(member(j, "theta_r_deg", where), at(where, "theta_r_deg")));
    if (const auto a = j.find("azimuth_deg"); a != j.end()) c.steer_azimuth = deg2rad(number(*a, at(where, "azimuth_deg")));
    if (const auto col = j.find("collimate"); col != j.end()) {
      if (!col->is_boolean()) throw SceneError(K::Schema, at(where, "collimate"), "expected a boolean");
      c.collimate = col->get<bool>();
    }
  } else {
    for (const char* key : {"theta_r_deg", "azimuth_deg", "collimate"}) {
      if (j.contains(key)) throw SceneError(K::Schema, at(where, key), "only reflect tiles take steering fields");
    }
  }
  try {
    validate(c);
  } catch (const DomainError& e) {
    throw SceneError(K::Schema, where, e.what());
  }
  return c;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
bool near(const Vec3& a, const Vec3& b, double tol) { return distance(a, b) <= tol; }
bool near(const RectPanel& a, const RectPanel& b, double tol) {
  return near(a.origin(), b.origin(), tol) && near(a.edge_u(), b.edge_u(), tol) && near(a.edge_v(), b.edge_v(), tol);
}
bool near(const TileConfig& a, const TileConfig& b, double tol) {
  return a.mode == b.mode && a.collimate == b.collimate && near(a.steer_theta, b.steer_theta, tol) &&
         near(std::remainder(a.steer_azimuth - b.steer_azimuth, 2.0 * kPi), 0.0, tol);
}

}  // namespace

Scene parse_scene(const std::string& input) {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw SceneError(K::Schema, "", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SceneError(K::Schema, "", "scene document must be an object");
  reject_unknown(doc, "", {"format", "version", "units", "frequency_ghz", "power_dbmw", "tx", "rx",
                           "default_tile_mode", "walls", "tile_overrides"});
  if (const auto f = doc.find("format"); f != doc.end() && text(*f, "/format") != kFormat) {
    throw SceneError(K::Schema, "/format", std::string("expected \"") + kFormat + "\"");
  }
  if (const auto v = doc.find("version"); v != doc.end() && (!v->is_number_integer() || v->get<int>() != kVersion)) {
    throw SceneError(K::Schema, "/version", "unsupported version");
  }
  check_units(doc);

  Scene scene;
  scene.frequency = number(member(doc, "frequency_ghz", ""), "/frequency_ghz") * 1e9;
  scene.tx_power_dbmw = number(member(doc, "power_dbmw", ""), "/power_dbmw");
  scene.tx = vec3(member(doc, "tx", ""), "/tx");
  const json& rx = member(doc, "rx", "");
  if (!rx.is_array()) throw SceneError(K::Schema, "/rx", "expected a list of positions");
  for (std::size_t k = 0; k < rx.size(); ++k) scene.rx.push_back(vec3(rx[k], at("/rx", k)));

  if (const auto d = doc.find("default_tile_mode"); d != doc.end()) {
    const std::string s = text(*d, "/default_tile_mode");
    const auto mode = parse_mode(s);
    if (!mode || *mode == TileMode::Reflect) {
      throw SceneError(K::Schema, "/default_tile_mode", "default tile mode must be absorb or inert");
    }
    scene.default_tile_config.mode = *mode;
  }

  const json& walls = member(doc, "walls", "");
  if (!walls.is_array()) throw SceneError(K::Schema, "/walls", "expected a list");
  for (std::size_t k = 0; k < walls.size(); ++k) scene.surfaces.push_back(parse_wall(walls[k], at("/walls", k)));
  for (std::size_t k = 0; k < scene.surfaces.size(); ++k) {
    const auto& s = scene.surfaces[k];
    if (s.role != SurfaceRole::HsfWall) continue;
    try {
      for (auto& t : tessellate(s, scene.default_tile_config)) scene.tiles.push_back(std::move(t));
    } catch (const SceneError& e) {
      throw SceneError(e.kind(), at(at("/walls", k), "hsf/tile_size_m"), e.what());
    }
  }

  if (const auto ov = doc.find("tile_overrides"); ov != doc.end()) {
    if (!ov->is_array()) throw SceneError(K::Schema, "/tile_overrides", "expected a list");
    std::set<std::string> seen;
    for (std::size_t k = 0; k < ov->size(); ++k) {
      const std::string where = at("/tile_overrides", k);
      const json& o = (*ov)[k];
      if (!o.is_object()) throw SceneError(K::Schema, where, "expected an object");
      reject_unknown(o, where, {"id", "mode", "theta_r_deg", "azimuth_deg", "collimate"});
      const std::string id = text(member(o, "id", where), at(where, "id"));
      if (!seen.insert(id).second) throw SceneError(K::DuplicateId, at(where, "id"), "tile '" + id + "' overridden twice");
      Tile* t = scene.find_tile(id);
      if (!t) throw SceneError(K::UnknownTile, at(where, "id"), "no tile '" + id + "'");
      t->config = parse_override(o, where);
    }
  }

  validate(scene);
  return scene;
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SceneError(K::Io, path.string(), "cannot open scene file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scene(ss.str());
}

std::string serialize_scene(const Scene& scene) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["units"] = {{"length", "m"}, {"frequency", "GHz"}, {"power", "dBmW"}, {"angle", "deg"}};
  doc["frequency_ghz"] = scene.frequency / 1e9;
  doc["power_dbmw"] = scene.tx_power_dbmw;
  doc["tx"] = to_json(scene.tx);
  doc["rx"] = json::array();
  for (const auto& r : scene.rx) doc["rx"].push_back(to_json(r));
  doc["default_tile_mode"] = mode_name(scene.default_tile_config.mode);

  doc["walls"] = json::array();
  for (const auto& s : scene.surfaces) {
    json w = {{"id", s.id},
              {"corner", to_json(s.panel.origin())},
              {"edge_u", to_json(s.panel.edge_u())},
              {"edge_v", to_json(s.panel.edge_v())},
              {"role", to_string(s.role)},
              {"material", material_json(s.material)}};
    if (s.role == SurfaceRole::HsfWall) w["hsf"] = {{"tile_size_m", s.tile_size}};
    doc["walls"].push_back(std::move(w));
  }

  json overrides = json::array();
  for (const auto& t : scene.tiles) {
    if (t.config == scene.default_tile_config) continue;
    json o = {{"id", t.id}, {"mode", mode_name(t.config.mode)}};
    if (t.config.mode == TileMode::Reflect) {
      o["theta_r_deg"] = rad2deg(t.config.steer_theta);
      o["azimuth_deg"] = rad2deg(t.config.steer_azimuth);
      o["collimate"] = t.config.collimate;
    }
    overrides.push_back(std::move(o));
  }
  if (!overrides.empty()) doc["tile_overrides"] = std::move(overrides);
  return doc.dump(2) + "\n";
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw SceneError(K::Io, path.string(), "cannot write scene file");
  out << serialize_scene(scene);
  if (!out) throw SceneError(K::Io, path.string(), "write failed");
}

bool equivalent(const Scene& a, const Scene& b, double tol) {
  if (!near(a.frequency, b.frequency, tol * std::max(1.0, std::abs(a.frequency)))) return false;
  if (!near(a.tx_power_dbmw, b.tx_power_dbmw, tol) || !near(a.tx, b.tx, tol)) return false;
  if (!near(a.default_tile_config, b.default_tile_config, tol)) return false;
  if (a.rx.size() != b.rx.size() || a.surfaces.size() != b.surfaces.size() || a.tiles.size() != b.tiles.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.rx.size(); ++k) {
    if (!near(a.rx[k], b.rx[k], tol)) return false;
  }
  for (std::size_t k = 0; k < a.surfaces.size(); ++k) {
    const auto& x = a.surfaces[k];
    const auto& y = b.surfaces[k];
    if (x.id != y.id || x.role != y.role || x.material != y.material || !near(x.tile_size, y.tile_size, tol) ||
        !near(x.panel, y.panel, tol)) {
      return false;
    }
  }
  for (std::size_t k = 0; k < a.tiles.size(); ++k) {
    const auto& x = a.tiles[k];
    const auto& y = b.tiles[k];
    if (x.id != y.id || x.host != y.host || !near(x.panel, y.panel, tol) || !near(x.config, y.config, tol)) {
      return false;
    }
  }
  return true;
}

}  // namespace hsfsim
