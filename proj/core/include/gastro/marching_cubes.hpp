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

#include <array>
#include <vector>

#include "gastro/trimesh.hpp"

namespace gastro {

/// Classic marching cubes over a scalar field sampled on a regular lattice.
/// Sample (i,j,k) lives at origin + (i*sx, j*sy, k*sz). Vertices are placed at
/// linearly interpolated edge crossings and welded by lattice-edge identity,
/// so output is deterministic. Triangles are wound so that normals point away
/// from the region with values above `iso`.
TriMesh marching_cubes(const std::vector<double>& field, const std::array<int, 3>& dims,
                       const Vec3& origin, const Vec3& spacing, double iso);

} // namespace gastro
