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

#include <optional>
#include <vector>

#include "gastro/trimesh.hpp"

namespace gastro {

/// Exact closest point on one triangle (Ericson's region classification).
Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

/// Bounding-volume hierarchy over the triangles of a mesh. Queries are
/// read-only and safe to run concurrently; construction is single-threaded.
/// Distances are computed squared internally; the API reports true distances.
class SpatialIndex {
public:
    /// Throws Error if the mesh has no triangles.
    explicit SpatialIndex(const TriMesh& mesh);

    struct NearestResult {
        Vec3 point;        ///< closest point on the surface
        std::int32_t triangle = -1;
        double distance = 0.0;
    };

    NearestResult nearest(const Vec3& query) const;

    struct RayHit {
        double t = 0.0;    ///< parameter along the (unnormalized) direction
        std::int32_t triangle = -1;
        Vec3 point;
    };

    /// First intersection of the ray origin + t*dir, t >= 0, if any.
    std::optional<RayHit> ray_first_hit(const Vec3& origin, const Vec3& dir) const;

    /// Ids of triangles whose AABB (inflated by margin) overlaps the given box.
    void box_overlaps(const Vec3& lo, const Vec3& hi, double margin,
                      std::vector<std::int32_t>& out) const;

    int triangle_count() const { return static_cast<int>(tri_vertices_.size()); }

private:
    struct Node {
        Vec3 lo, hi;
        std::int32_t left = -1;   // internal: child index; leaf: first triangle slot
        std::int32_t right = -1;  // internal: child index; leaf: -1
        std::int32_t count = 0;   // leaf: number of triangles; internal: 0
    };

    std::int32_t build(std::vector<std::int32_t>& ids, std::int32_t begin, std::int32_t end,
                       const std::vector<Vec3>& centroids);

    std::vector<Node> nodes_;
    std::vector<std::int32_t> leaf_tris_;                  // triangle ids, leaf-ordered
    std::vector<std::array<Vec3, 3>> tri_vertices_;        // indexed by triangle id
};

} // namespace gastro
