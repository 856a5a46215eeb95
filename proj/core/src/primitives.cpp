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
#include "gastro/primitives.hpp"

#include <cstdint>
#include <map>

namespace gastro {

TriMesh make_box(const Vec3& lo, const Vec3& hi) {
    TriMesh mesh;
    mesh.vertices.reserve(8);
    for (int i = 0; i < 8; ++i) {
        const double x = (i & 1) ? hi.x() : lo.x();
        const double y = (i & 2) ? hi.y() : lo.y();
        const double z = (i & 4) ? hi.z() : lo.z();
        mesh.vertices.emplace_back(x, y, z);
    }
    // Diagonals all run between parity-even corners {0,3,5,6}.
    mesh.triangles = {
        {0, 2, 3}, {0, 3, 1},  // -z
        {4, 5, 6}, {5, 7, 6},  // +z
        {0, 6, 2}, {0, 4, 6},  // -x
        {1, 3, 5}, {3, 7, 5},  // +x
        {0, 1, 5}, {0, 5, 4},  // -y
        {2, 6, 3}, {3, 6, 7},  // +y
    };
    return mesh;
}

TriMesh make_icosphere(double radius, int subdivisions, const Vec3& center) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> verts = {
        {-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0},
        {0, -1, t}, {0, 1, t}, {0, -1, -t}, {0, 1, -t},
        {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
    std::vector<Triangle> faces = {
        {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> midpoint;
        auto mid = [&](std::int32_t a, std::int32_t b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find({key.first, key.second});
            if (it != midpoint.end()) return it->second;
            const auto idx = static_cast<std::int32_t>(verts.size());
            verts.push_back(0.5 * (verts[a] + verts[b]));
            midpoint[{key.first, key.second}] = idx;
            return idx;
        };
        std::vector<Triangle> next;
        next.reserve(faces.size() * 4);
        for (const Triangle& f : faces) {
            const std::int32_t ab = mid(f[0], f[1]);
            const std::int32_t bc = mid(f[1], f[2]);
            const std::int32_t ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }

    TriMesh mesh;
    mesh.vertices.reserve(verts.size());
    for (const Vec3& v : verts) mesh.vertices.push_back(center + radius * v.normalized());
    mesh.triangles = std::move(faces);
    return mesh;
}

TriMesh make_plane_grid_x0(int ny, int nz, double size_y, double size_z) {
    TriMesh mesh;
    mesh.vertices.reserve(static_cast<std::size_t>(ny + 1) * (nz + 1));
    for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
            mesh.vertices.emplace_back(0.0, size_y * j / ny, size_z * k / nz);
    auto at = [&](int j, int k) { return static_cast<std::int32_t>(k * (ny + 1) + j); };
    for (int k = 0; k < nz; ++k) {
        for (int j = 0; j < ny; ++j) {
            mesh.triangles.push_back({at(j, k), at(j + 1, k), at(j + 1, k + 1)});
            mesh.triangles.push_back({at(j, k), at(j + 1, k + 1), at(j, k + 1)});
        }
    }
    return mesh;
}

} // namespace gastro
