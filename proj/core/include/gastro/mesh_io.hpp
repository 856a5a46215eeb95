/*
 * Copyright 2026 The gastroshape authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software distributed under
 * the License is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS
 * OF ANY KIND, either express or implied. See the License for the specific language
 * governing permissions and limitations under the License.
 */
#pragma once

#include <string>
#include <vector>

#include "gastro/trimesh.hpp"

namespace gastro {

enum class MeshFormat {
    auto_detect,  ///< by extension: .obj -> OBJ, .ply -> binary PLY
    obj,
    ply_ascii,
    ply_binary,   ///< binary_little_endian
};

/// Load an OBJ or PLY mesh (format detected from content, not extension).
/// Quads are fan-triangulated as (v0,v1,v2),(v0,v2,v3) with a warning;
/// polygons with more than 4 sides are rejected.
/// Throws ParseError (with line/byte offset) on malformed input.
TriMesh load_mesh(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Save a mesh. Coordinates are written in full float64 precision in every
/// format, so load(save(m)) restores them bit-exactly.
void save_mesh(const TriMesh& mesh, const std::string& path,
               MeshFormat format = MeshFormat::auto_detect);

/// PLY variant carrying one extra per-vertex scalar property (e.g. a distance
/// channel for color-mapped reports).
void save_mesh_with_scalar(const TriMesh& mesh, const std::string& path,
                           const std::vector<double>& scalar,
                           const std::string& property_name = "quality",
                           MeshFormat format = MeshFormat::auto_detect);

/// Landmark JSON: {"binding": "vertex"|"point", "landmarks": {name: index|[x,y,z]}}.
LandmarkSet load_landmarks(const std::string& path);
void save_landmarks(const LandmarkSet& landmarks, const std::string& path);

} // namespace gastro
