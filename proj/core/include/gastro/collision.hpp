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

#include <vector>

#include "gastro/trimesh.hpp"

namespace gastro {

/// Triangle-triangle overlap test (Moller's interval method, with a small
/// tolerance so grazing contact does not count as interior intersection).
bool triangles_intersect(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                         const Vec3& u0, const Vec3& u1, const Vec3& u2);

/// All pairs (i < j) of non-adjacent triangles whose interiors intersect.
/// Adjacency means sharing at least one vertex index; such pairs are skipped
/// because skinned deformations routinely create near-touching neighbors.
/// Pairs are returned sorted, deterministically.
std::vector<std::array<std::int32_t, 2>> detect_self_intersections(const TriMesh& mesh);

} // namespace gastro
