// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "hsfsim/cir.hpp"
#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"
#include "hsfsim/scenario.hpp"
#include "hsfsim/scene_io.hpp"

using namespace hsfsim;
using nlohmann::json;

namespace {

json units() { return {{"length", "m"}, {"frequency", "GHz"}, {"power", "dBmW"}, {"angle", "deg"}}; }

json minimal_doc() {
  return {{"units", units()},
          {"frequency_ghz", 60},
          {"power_dbmw", 100},
          {"tx", {1, 1, 1}},
          {"rx", json::array({json::array({1, 2, 2})})},
          {"walls", json::array({{{"id", "w"},
                                  {"corner", {0, 0, 0}},
                                  {"edge_u", {0, 4, 0}},
                                  {"edge_v", {0, 0, 3}},
                                  {"role", "plain_wall"},
                                  {"material", "concrete"}}})}};
}

json hsf_wall(const std::string& id, double y0, double len) {
  return {{"id", id},
          {"corner", {0, y0, 0}},
          {"edge_u", {0, len, 0}},
          {"edge_v", {0, 0, 1}},
          {"role", "hsf_wall"},
          {"hsf", {{"tile_size_m", 1.0}}}};
}

SceneError::Kind error_kind(const json& doc) {
  try {
    parse_scene(doc.dump());
  } catch (const SceneError& e) {
    return e.kind();
  }
  FAIL("scene unexpectedly loaded");
  return SceneError::Kind::Io;
}

const CoeffTable& table() { return CoeffTable::builtin(); }

// Tile at (0, 0.5, 0.5) facing +x; a partition on y = 0.5 blocks the direct
// path while leaving both tile hops clear.
Scene one_tile_scene(const Vec3& rx) {
  Scene s;
  s.surfaces = {
      {"floor", RectPanel({-1, -2, 0}, {5, 0, 0}, {0, 5, 0}), SurfaceRole::Floor, concrete(), 0.0},
      {"hsf", RectPanel({0, 0, 0}, {0, 1, 0}, {0, 0, 1}), SurfaceRole::HsfWall, concrete(), 1.0},
      {"partition", RectPanel({1, 0.5, 0}, {2, 0, 0}, {0, 0, 1}), SurfaceRole::PlainWall, concrete(), 0.0},
  };
  s.tiles = tessellate(s.surfaces[1], s.default_tile_config);
  s.tx = {2, -1, 0.5};
  s.rx = {rx};
  s.tx_power_dbmw = 100.0;
  validate(s);
  return s;
}

}  // namespace

TEST_CASE("reference scene layout") {
  const Scene s = build_paper_scene();
  CHECK(s.tiles.size() == 222);
  CHECK(s.surfaces.size() == 15);
  CHECK(s.tx == Vec3{7.6, 11.4, 2.0});
  REQUIRE(s.rx.size() == 4);
  CHECK(s.rx[0] == Vec3{1.15, 0.6, 1.5});
  CHECK(s.rx[1] == Vec3{1.15, 3.1, 1.5});
  CHECK(s.rx[2] == Vec3{1.15, 5.6, 1.5});
  CHECK(s.rx[3] == Vec3{1.15, 8.1, 1.5});
  CHECK(s.frequency == 60e9);
  CHECK(s.tx_power_dbmw == 100.0);
  CHECK(s == build_paper_scene());

  std::set<std::string> ids;
  for (const auto& t : s.tiles) {
    ids.insert(t.id);
    CHECK(t.panel.area() == doctest::Approx(1.0));
    CHECK(t.config == TileConfig::absorb());
  }
  CHECK(ids.size() == 222);
  for (const auto& link : reference_links()) {
    for (const auto& id : link.chain) CHECK(ids.count(id) == 1);
  }

  double coated = 0.0;
  for (const auto& surf : s.surfaces) {
    if (surf.role == SurfaceRole::HsfWall) coated += surf.panel.area();
  }
  CHECK(coated == doctest::Approx(222.0));
  CHECK(s.find_surface("floor")->role == SurfaceRole::Floor);
  CHECK(s.find_surface("ceiling")->panel.center().z == doctest::Approx(4.0));
}

TEST_CASE("scene files round-trip") {
  const Scene s = build_paper_scene();
  const std::string text = serialize_scene(s);
  const Scene back = parse_scene(text);
  CHECK(equivalent(s, back));
  CHECK(serialize_scene(back) == text);

  Scene steered = s;
  configure_chain(steered, s.rx[1], reference_links()[1].chain, true);
  steered.find_tile("0/7.5/2.5")->config = TileConfig::inert();
  const Scene steered_back = parse_scene(serialize_scene(steered));
  CHECK(equivalent(steered, steered_back));
  CHECK_FALSE(equivalent(s, steered_back));

  const Scene fixture = load_scene(std::filesystem::path(HSFSIM_DATA_DIR) / "paper_fig6.json");
  CHECK(fixture == s);
}

TEST_CASE("minimal scene") {
  const Scene s = parse_scene(minimal_doc().dump());
  CHECK(s.surfaces.size() == 1);
  CHECK(s.tiles.empty());
  CHECK(s.rx.size() == 1);
  CHECK(s.frequency == 60e9);
}

TEST_CASE("scene file errors") {
  using K = SceneError::Kind;
  SUBCASE("units are mandatory") {
    json doc = minimal_doc();
    doc.erase("units");
    CHECK(error_kind(doc) == K::Units);
    doc["units"] = units();
    doc["units"]["length"] = "mm";
    CHECK(error_kind(doc) == K::Units);
  }
  SUBCASE("overlapping tiles name both ids") {
    json doc = minimal_doc();
    doc["walls"] = json::array({hsf_wall("a", 0.0, 2.0), hsf_wall("b", 1.5, 2.0)});
    doc["tx"] = {1, 0.5, 0.5};
    doc["rx"] = json::array({json::array({1, 3, 0.5})});
    try {
      parse_scene(doc.dump());
      FAIL("overlap accepted");
    } catch (const SceneError& e) {
      CHECK(e.kind() == K::Tessellation);
      const std::string msg = e.what();
      CHECK(msg.find("0/1.5/0.5") != std::string::npos);
      CHECK(msg.find("0/2/0.5") != std::string::npos);
    }
  }
  SUBCASE("tile size must divide the wall") {
    json doc = minimal_doc();
    doc["walls"][0] = hsf_wall("a", 0.0, 2.5);
    doc["tx"] = {1, 0.5, 0.5};
    doc["rx"] = json::array({json::array({1, 2, 0.5})});
    try {
      parse_scene(doc.dump());
      FAIL("bad tessellation accepted");
    } catch (const SceneError& e) {
      CHECK(e.kind() == K::Tessellation);
      CHECK(e.where() == "/walls/0/hsf/tile_size_m");
    }
  }
  SUBCASE("duplicate wall ids") {
    json doc = minimal_doc();
    doc["walls"].push_back(doc["walls"][0]);
    CHECK(error_kind(doc) == K::DuplicateId);
  }
  SUBCASE("antenna outside the room") {
    json doc = minimal_doc();
    doc["rx"] = json::array({json::array({1, 5, 1})});
    CHECK(error_kind(doc) == K::OutOfRoom);
  }
  SUBCASE("overrides must name existing tiles once") {
    json doc = minimal_doc();
    doc["walls"][0] = hsf_wall("a", 0.0, 2.0);
    doc["tx"] = {1, 0.5, 0.5};
    doc["rx"] = json::array({json::array({1, 1.5, 0.5})});
    doc["tile_overrides"] = json::array({{{"id", "0/9/0.5"}, {"mode", "inert"}}});
    CHECK(error_kind(doc) == K::UnknownTile);
    doc["tile_overrides"] = json::array({{{"id", "0/0.5/0.5"}, {"mode", "inert"}},
                                         {{"id", "0/0.5/0.5"}, {"mode", "absorb"}}});
    CHECK(error_kind(doc) == K::DuplicateId);
    doc["tile_overrides"] = json::array({{{"id", "0/0.5/0.5"}, {"mode", "reflect"}, {"theta_r_deg", 95}}});
    CHECK(error_kind(doc) == K::Schema);
  }
  SUBCASE("schema violations carry a location") {
    json doc = minimal_doc();
    doc["walls"][0]["colour"] = "red";
    try {
      parse_scene(doc.dump());
      FAIL("unknown key accepted");
    } catch (const SceneError& e) {
      CHECK(e.kind() == K::Schema);
      CHECK(e.where() == "/walls/0/colour");
    }
    doc = minimal_doc();
    doc["walls"][0]["hsf"] = {{"tile_size_m", 1.0}};
    CHECK(error_kind(doc) == K::Schema);
    doc = minimal_doc();
    doc["tx"] = {1, 1};
    CHECK(error_kind(doc) == K::Schema);
  }
  SUBCASE("malformed text and missing files") {
    CHECK_THROWS_AS(parse_scene("{"), SceneError);
    CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), SceneError);
  }
}

TEST_CASE("reference chains produce two-bounce arrivals through tile centers") {
  const Scene base = build_paper_scene();
  for (const auto& link : reference_links()) {
    CAPTURE(link.rx_index);
    Scene s = base;
    configure_chain(s, s.rx[link.rx_index], link.chain, true);
    const auto cr = assemble_cir(s, s.tx, s.rx[link.rx_index], table());
    const auto it = std::find_if(cr.components.begin(), cr.components.end(),
                                 [&](const PathComponent& c) { return c.via == link.chain; });
    REQUIRE(it != cr.components.end());
    CHECK(it->kind == PathKind::HsfReflected);
    CHECK(it->bounce_count == 2);
    CHECK(distance(it->path.vertices[1], s.find_tile(link.chain[0])->panel.center()) < 1e-12);
    CHECK(distance(it->path.vertices[2], s.find_tile(link.chain[1])->panel.center()) < 1e-12);
    for (const auto& c : cr.components) CHECK(c.kind != PathKind::Los);

    const double hsf = received_power(cr, s.tx_power_dbmw, Aggregation::Noncoherent);
    CHECK(std::abs(hsf - link.hsf_dbmw) <= 5.0);
  }
}

TEST_CASE("a perfect absorber with blocked sight leaves nothing") {
  const Scene s = build_paper_scene();
  CirOptions opt;
  opt.hsf.perfect_absorber = true;
  const auto cr = assemble_cir(s, s.tx, s.rx[0], table(), opt);
  CHECK(cr.components.empty());
  CHECK(std::isinf(received_power(cr, 100.0, Aggregation::Noncoherent)));
  opt.hsf.perfect_absorber = false;
  for (const auto& c : assemble_cir(s, s.tx, s.rx[0], table(), opt).components) {
    CHECK(c.kind == PathKind::HsfLeakage);
  }
}

TEST_CASE("tile selection on the reference scene") {
  const Scene s = build_paper_scene();
  const auto blockers = s.blockers();
  for (std::size_t r = 0; r < s.rx.size(); ++r) {
    CAPTURE(r);
    const TileAssignment a = select_tiles(s, r, table());
    REQUIRE(!a.chain.empty());
    REQUIRE(a.chain.size() <= 2);
    CHECK(a.configs.size() == a.chain.size());
    for (const auto& c : a.configs) CHECK(c.mode == TileMode::Reflect);

    const Scene applied = apply_assignment(s, a);
    const double p = received_power(assemble_cir(applied, s.tx, s.rx[r], table()), s.tx_power_dbmw,
                                    Aggregation::Noncoherent);
    CHECK(p == doctest::Approx(a.predicted_power).epsilon(1e-12));

    std::vector<Vec3> hops{s.tx};
    for (const auto& id : a.chain) hops.push_back(s.find_tile(id)->panel.center());
    hops.push_back(s.rx[r]);
    for (std::size_t k = 0; k + 1 < hops.size(); ++k) CHECK_FALSE(is_occluded(hops[k], hops[k + 1], blockers));

    // The reference chain is feasible, so the search can only match or beat it.
    Scene ref = s;
    configure_chain(ref, s.rx[r], reference_links()[r].chain, true);
    CHECK(a.predicted_power >=
          received_power(assemble_cir(ref, s.tx, s.rx[r], table()), s.tx_power_dbmw, Aggregation::Noncoherent) -
              1e-9);
  }
  CHECK_THROWS_AS(select_tiles(s, 4, table()), DomainError);
}

TEST_CASE("transmit power shifts every score equally") {
  Scene s = build_paper_scene();
  const TileAssignment a = select_tiles(s, 2, table());
  s.tx_power_dbmw = 70.0;
  const TileAssignment b = select_tiles(s, 2, table());
  CHECK(a.chain == b.chain);
  CHECK(b.predicted_power == doctest::Approx(a.predicted_power - 30.0).epsilon(1e-12));
}

TEST_CASE("a lone feasible tile is selected") {
  const Scene s = one_tile_scene({2.5, 2, 0.5});
  CHECK(is_occluded(s.tx, s.rx[0], s.blockers()));
  const TileAssignment a = select_tiles(s, 0, table());
  REQUIRE(a.chain.size() == 1);
  CHECK(a.chain[0] == "0/0.5/0.5");
  CHECK(std::isfinite(a.predicted_power));

  const Scene hidden = one_tile_scene({-0.5, 0.5, 0.5});
  CHECK_THROWS_AS(select_tiles(hidden, 0, table()), DomainError);
}
