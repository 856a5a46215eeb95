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
#include "gastro/trimesh.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gastro/errors.hpp"

namespace gastro {

const std::vector<std::string>& landmark_vocabulary() {
    static const std::vector<std::string> names = {
        "gastroesophageal_junction", "fundus", "greater_curvature",
        "angular_incisure", "pyloric_sphincter"};
    return names;
}

bool is_known_landmark(const std::string& name) {
    const auto& v = landmark_vocabulary();
    return std::find(v.begin(), v.end(), name) != v.end();
}

namespace {
void require_known(const std::string& name) {
    if (!is_known_landmark(name))
        throw LandmarkError("unknown landmark name: " + name, name);
}
} // namespace

void LandmarkSet::set_vertex(const std::string& name, std::int32_t vertex) {
    require_known(name);
    entries_[name] = vertex;
}

void LandmarkSet::set_point(const std::string& name, const Vec3& point) {
    require_known(name);
    entries_[name] = point;
}

bool LandmarkSet::is_vertex_bound(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw LandmarkError("landmark not set: " + name, name);
    return std::holds_alternative<std::int32_t>(it->second);
}

std::int32_t LandmarkSet::vertex(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw LandmarkError("landmark not set: " + name, name);
    if (!std::holds_alternative<std::int32_t>(it->second))
        throw LandmarkError("landmark is point-bound: " + name, name);
    return std::get<std::int32_t>(it->second);
}

Vec3 LandmarkSet::point(const std::string& name) const {
    auto it = entries_.find(name);
    if (it == entries_.end()) throw LandmarkError("landmark not set: " + name, name);
    if (!std::holds_alternative<Vec3>(it->second))
        throw LandmarkError("landmark is vertex-bound: " + name, name);
    return std::get<Vec3>(it->second);
}

bool LandmarkSet::all_vertex_bound() const {
    for (const auto& [name, value] : entries_)
        if (!std::holds_alternative<std::int32_t>(value)) return false;
    return true;
}

bool LandmarkSet::all_point_bound() const {
    for (const auto& [name, value] : entries_)
        if (!std::holds_alternative<Vec3>(value)) return false;
    return true;
}

void TriMesh::check_valid() const {
    const auto n = static_cast<std::int32_t>(vertices.size());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        const Triangle& tri = triangles[t];
        for (int k = 0; k < 3; ++k) {
            if (tri[k] < 0 || tri[k] >= n) {
                std::ostringstream msg;
                msg << "triangle " << t << " references vertex " << tri[k]
                    << " outside [0, " << n << ")";
                throw Error(msg.str());
            }
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            std::ostringstream msg;
            msg << "triangle " << t << " is degenerate (repeated vertex index)";
            throw Error(msg.str());
        }
    }
    if (!region_labels.empty() && region_labels.size() != vertices.size())
        throw Error("region_labels size does not match vertex count");
    if (landmark_bindings) {
        for (const auto& [name, value] : landmark_bindings->entries()) {
            if (std::holds_alternative<std::int32_t>(value)) {
                const auto idx = std::get<std::int32_t>(value);
                if (idx < 0 || idx >= n)
                    throw LandmarkError("landmark " + name + " binds an invalid vertex", name);
            }
        }
    }
}

VertexNormals compute_vertex_normals(const TriMesh& mesh) {
    VertexNormals out;
    out.normals.assign(mesh.vertices.size(), Vec3::Zero());
    std::vector<char> touched(mesh.vertices.size(), 0);
    for (const Triangle& tri : mesh.triangles) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        // cross product = 2 * area * unit normal, so summing it is area weighting
        const Vec3 weighted = (b - a).cross(c - a);
        for (int k = 0; k < 3; ++k) {
            out.normals[tri[k]] += weighted;
            touched[tri[k]] = 1;
        }
    }
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (!touched[v]) {
            out.isolated.push_back(static_cast<std::int32_t>(v));
            out.normals[v] = Vec3::Zero();
            continue;
        }
        const double len = out.normals[v].norm();
        if (len > 0.0) out.normals[v] /= len;
    }
    return out;
}

VolumeResult enclosed_volume(const TriMesh& mesh) {
    const int open = boundary_edge_count(mesh);
    if (open > 0) {
        std::ostringstream msg;
        msg << "enclosed_volume requires a closed mesh; found " << open << " boundary edges";
        throw OpenMeshError(msg.str(), open);
    }
    double signed_volume = 0.0;
    for (const Triangle& tri : mesh.triangles) {
        const Vec3& a = mesh.vertices[tri[0]];
        const Vec3& b = mesh.vertices[tri[1]];
        const Vec3& c = mesh.vertices[tri[2]];
        signed_volume += a.dot(b.cross(c));
    }
    signed_volume /= 6.0;
    VolumeResult result;
    result.positive_orientation = signed_volume >= 0.0;
    result.value = std::abs(signed_volume);
    return result;
}

double polyline_length(const TriMesh& mesh, std::span<const std::int32_t> chain) {
    if (chain.size() < 2) throw Error("polyline_length needs at least 2 vertex indices");
    const auto n = static_cast<std::int32_t>(mesh.vertices.size());
    double total = 0.0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] < 0 || chain[i] >= n)
            throw Error("polyline_length: vertex index out of range");
        if (i > 0) total += (mesh.vertices[chain[i]] - mesh.vertices[chain[i - 1]]).norm();
    }
    return total;
}

namespace {
// (min,max) vertex pair -> net orientation count and total incidence
struct EdgeUse {
    int count = 0;
    int oriented = 0; // +1 when (a<b) order, -1 otherwise
};

std::map<std::pair<std::int32_t, std::int32_t>, EdgeUse> edge_uses(const TriMesh& mesh) {
    std::map<std::pair<std::int32_t, std::int32_t>, EdgeUse> uses;
    for (const Triangle& tri : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const std::int32_t a = tri[k];
            const std::int32_t b = tri[(k + 1) % 3];
            auto key = std::minmax(a, b);
            EdgeUse& u = uses[{key.first, key.second}];
            u.count += 1;
            u.oriented += (a < b) ? 1 : -1;
        }
    }
    return uses;
}
} // namespace

std::vector<std::array<std::int32_t, 2>> boundary_edges(const TriMesh& mesh) {
    std::vector<std::array<std::int32_t, 2>> result;
    for (const auto& [edge, use] : edge_uses(mesh))
        if (use.count != 2) result.push_back({edge.first, edge.second});
    return result;
}

int boundary_edge_count(const TriMesh& mesh) {
    return static_cast<int>(boundary_edges(mesh).size());
}

bool is_closed_consistent(const TriMesh& mesh) {
    for (const auto& [edge, use] : edge_uses(mesh)) {
        if (use.count != 2) return false;
        if (use.oriented != 0) return false; // same orientation on both sides
    }
    return !mesh.triangles.empty();
}

std::vector<std::vector<std::int32_t>> vertex_adjacency(const TriMesh& mesh) {
    std::vector<std::vector<std::int32_t>> adj(mesh.vertices.size());
    for (const Triangle& tri : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            adj[tri[k]].push_back(tri[(k + 1) % 3]);
            adj[tri[k]].push_back(tri[(k + 2) % 3]);
        }
    }
    for (auto& neighbors : adj) {
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
    }
    return adj;
}

std::vector<Vec3> laplacian_smooth_field(const TriMesh& mesh,
                                         const std::vector<Vec3>& field,
                                         int passes) {
    if (field.size() != mesh.vertices.size())
        throw Error("laplacian_smooth_field: field size mismatch");
    const auto adj = vertex_adjacency(mesh);
    std::vector<Vec3> current = field;
    std::vector<Vec3> next(field.size());
    for (int pass = 0; pass < passes; ++pass) {
        for (std::size_t v = 0; v < current.size(); ++v) {
            if (adj[v].empty()) {
                next[v] = current[v];
                continue;
            }
            Vec3 sum = Vec3::Zero();
            for (std::int32_t n : adj[v]) sum += current[n];
            next[v] = 0.5 * current[v] + 0.5 * (sum / static_cast<double>(adj[v].size()));
        }
        std::swap(current, next);
    }
    return current;
}

std::pair<Vec3, Vec3> bounding_box(const TriMesh& mesh) {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (const Vec3& v : mesh.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    return {lo, hi};
}

} // namespace gastro
