// Copyright 2026 The hsfsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "hsfsim/scene.hpp"

namespace hsfsim {

/// Parses a JSON scene document. Walls with role "hsf_wall" are
/// tessellated on their `hsf.tile_size_m` grid, every tile starts in
/// `default_tile_mode` and `tile_overrides` then reconfigure single tiles.
/// The result is validated. Throws SceneError with a JSON pointer location.
Scene parse_scene(const std::string& text);

/// parse_scene on a file; unreadable files raise SceneError::Io.
Scene load_scene(const std::filesystem::path& path);

/// JSON document that parse_scene maps back to an equivalent scene. Tiles
/// whose configuration differs from the default become overrides.
std::string serialize_scene(const Scene& scene);

void save_scene(const Scene& scene, const std::filesystem::path& path);

/// Structural equality with numeric fields compared to `tol` (angles in
/// rad, lengths in m, frequency relative).
bool equivalent(const Scene& a, const Scene& b, double tol = 1e-9);

}  // namespace hsfsim
