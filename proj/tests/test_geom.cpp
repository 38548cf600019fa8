// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "hsfsim/constants.hpp"
#include "hsfsim/error.hpp"
#include "hsfsim/geom.hpp"
#include "oracles.hpp"

using namespace hsfsim;

namespace {

RectPanel floor_panel() { return RectPanel({0, 0, 0}, {4, 0, 0}, {0, 3, 0}); }

}  // namespace

TEST_CASE("vector algebra") {
  const Vec3 a{1, 2, 3};
  const Vec3 b{-2, 0.5, 4};
  CHECK(dot(a, b) == doctest::Approx(11.0));
  CHECK(cross(Vec3{1, 0, 0}, Vec3{0, 1, 0}) == Vec3{0, 0, 1});
  CHECK(dot(cross(a, b), a) == doctest::Approx(0.0));
  CHECK(norm(Vec3{3, 4, 12}) == doctest::Approx(13.0));
  CHECK(distance(a, a) == 0.0);
  CHECK(norm(normalized(b)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(normalized(Vec3{}), GeometryError);
}

TEST_CASE("panel construction and frame") {
  const RectPanel p = floor_panel();
  CHECK(p.normal() == Vec3{0, 0, 1});
  CHECK(p.center() == Vec3{2, 1.5, 0});
  CHECK(p.area() == doctest::Approx(12.0));
  CHECK(p.signed_distance({1, 1, 2}) == doctest::Approx(2.0));
  CHECK(p.contains({4, 3, 0}));
  CHECK_FALSE(p.contains({4.1, 1, 0}));
  CHECK(p.contains({4.1, 1, 0}, 0.2));

  CHECK_THROWS_AS(RectPanel({0, 0, 0}, {0, 0, 0}, {0, 1, 0}), GeometryError);
  CHECK_THROWS_AS(RectPanel({0, 0, 0}, {1, 0, 0}, {1, 1, 0}), GeometryError);
  CHECK_THROWS_AS(RectPanel({0, 0, 0}, {1, 0, 0}, {2, 0, 0}), GeometryError);
}

TEST_CASE("segment crossing is open at both ends") {
  const RectPanel p = floor_panel();
  CHECK(p.crossing({1, 1, 1}, {1, 1, -1}).value() == doctest::Approx(0.5));
  CHECK_FALSE(p.crossing({1, 1, 1}, {1, 1, 0}).has_value());   // ends on the panel
  CHECK_FALSE(p.crossing({1, 1, 0}, {1, 1, 1}).has_value());   // starts on it
  CHECK_FALSE(p.crossing({1, 1, 1}, {2, 2, 1}).has_value());   // parallel
  CHECK_FALSE(p.crossing({5, 1, 1}, {5, 1, -1}).has_value());  // outside the rectangle
}

TEST_CASE("mirror image is an involution") {
  std::mt19937_64 rng(7);
  const RectPanel tilted({1, -2, 0.5}, {1, 1, 0}, {-0.5, 0.5, 2});
  for (int k = 0; k < 200; ++k) {
    const Vec3 p = oracle::random_point(rng, {-5, -5, -5}, {5, 5, 5});
    const Vec3 m = mirror_point(p, tilted);
    CHECK(distance(mirror_point(m, tilted), p) < 1e-12);
    CHECK(tilted.signed_distance(m) == doctest::Approx(-tilted.signed_distance(p)).epsilon(1e-12));
  }
}

TEST_CASE("single-bounce image path matches a brute-force reflection point") {
  std::mt19937_64 rng(11);
  const RectPanel wall({0, 0, 0}, {0, 6, 0}, {0, 0, 3});  // x = 0, facing +x
  const oracle::Rect rect{wall.origin(), wall.edge_u(), wall.edge_v()};
  int interior = 0;
  for (int k = 0; k < 60; ++k) {
    const Vec3 tx = oracle::random_point(rng, {0.2, 0.0, 0.0}, {4, 6, 3});
    const Vec3 rx = oracle::random_point(rng, {0.2, 0.0, 0.0}, {4, 6, 3});
    const RectPanel* panels[] = {&wall};
    const auto path = trace_image_path(tx, rx, panels);
    const auto ref = oracle::brute_force_bounce(tx, rx, rect);
    REQUIRE(path.has_value() == ref.interior);
    if (!path) continue;
    ++interior;
    CHECK(path->total_length == doctest::Approx(ref.length).epsilon(1e-9));
    CHECK(distance(path->vertices[1], ref.point) < 1e-5);
    // Equal angles on both sides of the normal.
    const Vec3 in = normalized(path->vertices[1] - tx);
    const Vec3 out = normalized(rx - path->vertices[1]);
    CHECK(dot(in, wall.normal()) == doctest::Approx(-dot(out, wall.normal())).epsilon(1e-12));
  }
  CHECK(interior > 30);
}

TEST_CASE("image path rejects misses and back-side endpoints") {
  const RectPanel wall({0, 0, 0}, {0, 1, 0}, {0, 0, 1});
  const RectPanel* panels[] = {&wall};
  CHECK(trace_image_path({1, 0.5, 0.5}, {2, 0.5, 0.5}, panels).has_value());
  CHECK_FALSE(trace_image_path({1, 3, 0.5}, {1, 4, 0.5}, panels).has_value());
  CHECK_FALSE(trace_image_path({-1, 0.5, 0.5}, {-2, 0.5, 0.5}, panels).has_value());
  CHECK_FALSE(trace_image_path({1, 0.5, 0.5}, {-1, 0.5, 0.5}, panels).has_value());
}

TEST_CASE("two-bounce path in a corridor") {
  const RectPanel left({0, 0, 0}, {0, 10, 0}, {0, 0, 3});
  const RectPanel right({2, 10, 0}, {0, -10, 0}, {0, 0, 3});
  const RectPanel* panels[] = {&left, &right};
  const Vec3 tx{1, 1, 1.5};
  const Vec3 rx{1, 5, 1.5};
  const auto path = trace_image_path(tx, rx, panels);
  REQUIRE(path.has_value());
  CHECK(path->bounce_count() == 2);
  // Unfolded: image of tx through both walls sits 4 m further along x.
  CHECK(path->total_length == doctest::Approx(std::hypot(4.0, 4.0)).epsilon(1e-12));
  CHECK(path->incidence_angles[0] == doctest::Approx(std::atan2(4.0, 4.0)));
  CHECK(path->incidence_angles[1] == doctest::Approx(path->incidence_angles[0]));
}

TEST_CASE("incidence angle") {
  const RectPanel p = floor_panel();
  CHECK(incidence_angle({0, 0, -1}, p) == doctest::Approx(0.0));
  CHECK(incidence_angle({1, 0, -1}, p) == doctest::Approx(kPi / 4));
  CHECK(incidence_angle({1, 0, 1}, p) == doctest::Approx(kPi / 4));
  CHECK(incidence_angle({1, 0, 0}, p) == doctest::Approx(kPi / 2));
}

TEST_CASE("occlusion agrees with a sampled-segment oracle") {
  std::mt19937_64 rng(3);
  std::vector<RectPanel> blockers{
      RectPanel({1, 1, 0}, {2, 0, 0}, {0, 0, 2}),
      RectPanel({2.5, 0, 0.5}, {0, 2.5, 0}, {0, 0, 1.5}),
      RectPanel({0, 0, 1.2}, {1.5, 0, 0}, {0, 2, 0}),
  };
  int blocked = 0;
  for (int k = 0; k < 400; ++k) {
    const Vec3 a = oracle::random_point(rng, {-1, -1, -1}, {4, 4, 3});
    const Vec3 b = oracle::random_point(rng, {-1, -1, -1}, {4, 4, 3});
    bool expect = false;
    for (const auto& p : blockers) {
      expect = expect || oracle::sampled_crossing(a, b, {p.origin(), p.edge_u(), p.edge_v()});
    }
    CHECK(is_occluded(a, b, blockers) == expect);
    blocked += expect;
  }
  CHECK(blocked > 40);
  CHECK(blocked < 360);
}

TEST_CASE("path built through vertices") {
  const RectPanel p = floor_panel();
  const RectPanel* panels[] = {&p};
  const auto g = GeometricPath::through({{0, 0, 1}, {1, 0, 0}, {2, 0, 1}}, panels);
  CHECK(g.bounce_count() == 1);
  CHECK(g.segment_lengths.size() == 2);
  CHECK(g.total_length == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(g.incidence_angles.at(0) == doctest::Approx(kPi / 4));
}
