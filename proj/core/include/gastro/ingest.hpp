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

#include <map>
#include <string>

#include "gastro/trimesh.hpp"
#include "gastro/volume_grid.hpp"

namespace gastro {

struct IsosurfaceOptions {
    double iso = 0.5;
    /// One pass of 6-neighbor box averaging on the binary indicator before
    /// extraction (reduces staircase artifacts on smooth anatomy).
    bool smooth = true;
};

struct IsosurfaceResult {
    TriMesh mesh;
    /// Set when the labeled region touches the volume boundary; the mesh is
    /// then open there.
    bool touches_boundary = false;
    int boundary_edge_count = 0;
};

/// Extract the surface of `target_label` from a labeled volume via marching
/// cubes on the binary indicator field. Throws Error when the label is absent.
IsosurfaceResult extract_isosurface(const LabelVolume& volume, std::int32_t target_label,
                                    const IsosurfaceOptions& options = {});

struct AttachResult {
    TriMesh mesh;   ///< input mesh with point-bound landmarks snapped to the surface
    std::map<std::string, double> snap_distance;  ///< per-landmark snap distance (mm)
};

/// Snap point-bound scan landmarks onto the mesh surface. A landmark farther
/// than `tolerance` mm from the surface raises LandmarkError naming it.
AttachResult attach_scan_landmarks(const TriMesh& mesh, const LandmarkSet& landmarks,
                                   double tolerance = 10.0);

} // namespace gastro
