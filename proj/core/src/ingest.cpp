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
#include "gastro/ingest.hpp"

#include <sstream>

#include "gastro/errors.hpp"
#include "gastro/marching_cubes.hpp"
#include "gastro/spatial_index.hpp"

namespace gastro {

IsosurfaceResult extract_isosurface(const LabelVolume& volume, std::int32_t target_label,
                                    const IsosurfaceOptions& options) {
    volume.check_valid();
    const int nx = volume.dims[0], ny = volume.dims[1], nz = volume.dims[2];

    bool label_present = false;
    bool touches_boundary = false;
    std::vector<double> field(volume.voxel_count(), 0.0);
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                if (volume.at(i, j, k) != target_label) continue;
                label_present = true;
                field[volume.index(i, j, k)] = 1.0;
                if (i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 || k == nz - 1)
                    touches_boundary = true;
            }
        }
    }
    if (!label_present) {
        std::ostringstream msg;
        msg << "label " << target_label << " not present in volume";
        throw Error(msg.str());
    }

    if (options.smooth) {
        // one pass of 6-neighbor box averaging; outside counts as empty
        std::vector<double> smoothed(field.size());
        for (int k = 0; k < nz; ++k) {
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    double sum = field[volume.index(i, j, k)];
                    if (i > 0) sum += field[volume.index(i - 1, j, k)];
                    if (i + 1 < nx) sum += field[volume.index(i + 1, j, k)];
                    if (j > 0) sum += field[volume.index(i, j - 1, k)];
                    if (j + 1 < ny) sum += field[volume.index(i, j + 1, k)];
                    if (k > 0) sum += field[volume.index(i, j, k - 1)];
                    if (k + 1 < nz) sum += field[volume.index(i, j, k + 1)];
                    smoothed[volume.index(i, j, k)] = sum / 7.0;
                }
            }
        }
        field = std::move(smoothed);
    }

    IsosurfaceResult result;
    result.mesh = marching_cubes(field, volume.dims, volume.origin, volume.spacing, options.iso);
    result.touches_boundary = touches_boundary;
    result.boundary_edge_count = boundary_edge_count(result.mesh);

    // orient outward when closed
    if (result.boundary_edge_count == 0 && !result.mesh.triangles.empty()) {
        double signed_volume = 0.0;
        for (const Triangle& t : result.mesh.triangles) {
            signed_volume += result.mesh.vertices[t[0]].dot(
                result.mesh.vertices[t[1]].cross(result.mesh.vertices[t[2]]));
        }
        if (signed_volume < 0.0)
            for (Triangle& t : result.mesh.triangles) std::swap(t[1], t[2]);
    }
    return result;
}

AttachResult attach_scan_landmarks(const TriMesh& mesh, const LandmarkSet& landmarks,
                                   double tolerance) {
    if (!landmarks.all_point_bound())
        throw Error("attach_scan_landmarks requires point-bound landmarks");
    if (mesh.triangles.empty()) throw Error("attach_scan_landmarks: mesh has no triangles");

    const SpatialIndex index(mesh);
    AttachResult result;
    result.mesh = mesh;
    LandmarkSet snapped;
    for (const auto& [name, value] : landmarks.entries()) {
        const Vec3 p = std::get<Vec3>(value);
        const auto hit = index.nearest(p);
        if (hit.distance > tolerance) {
            std::ostringstream msg;
            msg << name << " out of tolerance: " << hit.distance << " mm from surface (limit "
                << tolerance << " mm)";
            throw LandmarkError(msg.str(), name);
        }
        snapped.set_point(name, hit.point);
        result.snap_distance[name] = hit.distance;
    }
    result.mesh.landmark_bindings = snapped;
    return result;
}

} // namespace gastro
