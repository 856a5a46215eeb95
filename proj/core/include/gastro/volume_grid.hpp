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
#include <cstdint>
#include <string>
#include <vector>

#include "gastro/trimesh.hpp"

namespace gastro {

/// Dense labeled voxel volume. Sample (i,j,k) sits at
/// origin + (i*sx, j*sy, k*sz) in world millimeters (origin = center of the
/// first voxel).
struct LabelVolume {
    std::array<int, 3> dims{0, 0, 0};
    Vec3 spacing{1.0, 1.0, 1.0};   ///< mm per voxel, all components > 0
    Vec3 origin{0.0, 0.0, 0.0};
    std::vector<std::int32_t> voxels;  ///< x-fastest, size nx*ny*nz

    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(dims[1]) * k);
    }
    std::int32_t at(int i, int j, int k) const { return voxels[index(i, j, k)]; }
    std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }
    Vec3 world(int i, int j, int k) const {
        return origin + Vec3(i * spacing.x(), j * spacing.y(), k * spacing.z());
    }

    /// Throws Error if sizes or spacing are inconsistent.
    void check_valid() const;
};

/// Reads `<stem>.volhdr.json` + `<stem>.vol.raw` (dims/spacing/origin/dtype in
/// the JSON header, voxels little-endian in the raw file). Pass the header path.
LabelVolume load_volume(const std::string& header_path);
void save_volume(const LabelVolume& volume, const std::string& header_path,
                 const std::string& dtype = "int32");

} // namespace gastro
