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
#include "gastro/marching_cubes.hpp"

#include <cstdint>
#include <unordered_map>

#include "gastro/errors.hpp"
#include "gastro/marching_cubes_tables.hpp"

namespace gastro {

namespace {

// cube corner offsets in Bourke's ordering
constexpr int kCorner[8][3] = {
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

// each cube edge as (lower lattice corner offset, axis), canonical orientation
struct EdgeDef {
    int base[3];
    int axis;
};
constexpr EdgeDef kEdge[12] = {
    {{0, 0, 0}, 0},  // 0: v0-v1
    {{1, 0, 0}, 1},  // 1: v1-v2
    {{0, 1, 0}, 0},  // 2: v3-v2
    {{0, 0, 0}, 1},  // 3: v0-v3
    {{0, 0, 1}, 0},  // 4: v4-v5
    {{1, 0, 1}, 1},  // 5: v5-v6
    {{0, 1, 1}, 0},  // 6: v7-v6
    {{0, 0, 1}, 1},  // 7: v4-v7
    {{0, 0, 0}, 2},  // 8: v0-v4
    {{1, 0, 0}, 2},  // 9: v1-v5
    {{1, 1, 0}, 2},  // 10: v2-v6
    {{0, 1, 0}, 2},  // 11: v3-v7
};

} // namespace

TriMesh marching_cubes(const std::vector<double>& field, const std::array<int, 3>& dims,
                       const Vec3& origin, const Vec3& spacing, double iso) {
    const int nx = dims[0], ny = dims[1], nz = dims[2];
    if (nx < 1 || ny < 1 || nz < 1) throw Error("marching_cubes: empty lattice");
    if (field.size() != static_cast<std::size_t>(nx) * ny * nz)
        throw Error("marching_cubes: field size does not match dims");

    auto value = [&](int i, int j, int k) -> double {
        return field[static_cast<std::size_t>(i) +
                     static_cast<std::size_t>(nx) * (static_cast<std::size_t>(j) +
                                                     static_cast<std::size_t>(ny) * k)];
    };
    auto world = [&](int i, int j, int k) -> Vec3 {
        return origin + Vec3(i * spacing.x(), j * spacing.y(), k * spacing.z());
    };

    TriMesh mesh;
    std::unordered_map<std::int64_t, std::int32_t> edge_vertex;
    edge_vertex.reserve(1024);

    auto edge_key = [&](int i, int j, int k, int axis) -> std::int64_t {
        return (static_cast<std::int64_t>(k) * ny + j) * nx * 3 + static_cast<std::int64_t>(i) * 3 +
               axis;
    };

    auto vertex_on_edge = [&](int ci, int cj, int ck, int edge) -> std::int32_t {
        const EdgeDef& def = kEdge[edge];
        const int bi = ci + def.base[0];
        const int bj = cj + def.base[1];
        const int bk = ck + def.base[2];
        const std::int64_t key = edge_key(bi, bj, bk, def.axis);
        auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;

        int ei = bi, ej = bj, ek = bk;
        (def.axis == 0 ? ei : def.axis == 1 ? ej : ek) += 1;
        const double v1 = value(bi, bj, bk);
        const double v2 = value(ei, ej, ek);
        const Vec3 p1 = world(bi, bj, bk);
        const Vec3 p2 = world(ei, ej, ek);
        double t;
        if (std::abs(iso - v1) < 1e-12) {
            t = 0.0;
        } else if (std::abs(iso - v2) < 1e-12 || std::abs(v1 - v2) < 1e-12) {
            t = 1.0;
        } else {
            t = (iso - v1) / (v2 - v1);
        }
        const auto idx = static_cast<std::int32_t>(mesh.vertices.size());
        mesh.vertices.push_back(p1 + t * (p2 - p1));
        edge_vertex.emplace(key, idx);
        return idx;
    };

    for (int k = 0; k + 1 < nz; ++k) {
        for (int j = 0; j + 1 < ny; ++j) {
            for (int i = 0; i + 1 < nx; ++i) {
                int cube_index = 0;
                for (int c = 0; c < 8; ++c) {
                    if (value(i + kCorner[c][0], j + kCorner[c][1], k + kCorner[c][2]) < iso)
                        cube_index |= 1 << c;
                }
                if (mc_tables::kEdgeTable[cube_index] == 0) continue;
                const int* tris = mc_tables::kTriTable[cube_index];
                for (int e = 0; tris[e] != -1; e += 3) {
                    const std::int32_t a = vertex_on_edge(i, j, k, tris[e]);
                    const std::int32_t b = vertex_on_edge(i, j, k, tris[e + 1]);
                    const std::int32_t c = vertex_on_edge(i, j, k, tris[e + 2]);
                    if (a == b || b == c || a == c) continue; // collapsed sliver
                    mesh.triangles.push_back({a, b, c});
                }
            }
        }
    }
    return mesh;
}

} // namespace gastro
