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

#include "gastro/trimesh.hpp"

namespace gastro {

/// Axis-aligned box between lo and hi, 12 triangles, outward winding.
/// Face diagonals alternate so that every corner sees equal area from each
/// incident face (the normals of all 8 corners point along the space diagonal).
TriMesh make_box(const Vec3& lo, const Vec3& hi);

inline TriMesh make_unit_cube() { return make_box(Vec3::Zero(), Vec3::Ones()); }

/// Icosahedron subdivided `subdivisions` times, vertices pushed to `radius`.
TriMesh make_icosphere(double radius, int subdivisions, const Vec3& center = Vec3::Zero());

/// Rectangular grid of (nx+1)*(ny+1) vertices in the plane x = 0 spanning
/// [0,size_y] x [0,size_z]; open surface, used as a flat test target.
TriMesh make_plane_grid_x0(int ny, int nz, double size_y, double size_z);

} // namespace gastro
