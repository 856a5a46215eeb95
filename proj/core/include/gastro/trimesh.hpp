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
 *
 * All coordinates throughout the toolkit are in millimeters.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace gastro {

using Vec3 = Eigen::Vector3d;
using Triangle = std::array<std::int32_t, 3>;

/// The fixed five-name anatomical landmark vocabulary.
const std::vector<std::string>& landmark_vocabulary();
bool is_known_landmark(const std::string& name);

/// Named anatomical landmarks. Each entry is either a vertex index into the
/// owning mesh (template side) or a free 3D point in mm (scan side).
class LandmarkSet {
public:
    using Value = std::variant<std::int32_t, Vec3>;

    LandmarkSet() = default;

    /// Throws LandmarkError if the name is outside the fixed vocabulary.
    void set_vertex(const std::string& name, std::int32_t vertex);
    void set_point(const std::string& name, const Vec3& point);

    bool contains(const std::string& name) const { return entries_.count(name) > 0; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    bool is_vertex_bound(const std::string& name) const;
    std::int32_t vertex(const std::string& name) const;
    Vec3 point(const std::string& name) const;

    /// True when every entry is vertex-bound (resp. point-bound).
    bool all_vertex_bound() const;
    bool all_point_bound() const;

    const std::map<std::string, Value>& entries() const { return entries_; }

private:
    std::map<std::string, Value> entries_;
};

/// Indexed triangle mesh: the geometric currency of the whole toolkit.
/// Treated as immutable after construction wherever it is shared.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    /// Optional per-vertex region id (see TemplateAsset::region_names).
    std::vector<std::int32_t> region_labels;
    std::optional<LandmarkSet> landmark_bindings;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    /// Validates index bounds and rejects degenerate index triples.
    /// Throws Error on violation.
    void check_valid() const;
};

/// Result of enclosed_volume: always nonnegative; positive_orientation is true
/// when the winding gives outward normals (signed volume > 0).
struct VolumeResult {
    double value = 0.0;
    bool positive_orientation = true;
};

struct VertexNormals {
    std::vector<Vec3> normals;            ///< unit vectors; zero for isolated vertices
    std::vector<std::int32_t> isolated;   ///< vertices with no incident triangle
};

/// Area-weighted per-vertex normals. Isolated vertices get a zero vector and
/// are flagged in the result.
VertexNormals compute_vertex_normals(const TriMesh& mesh);

/// Signed volume by the divergence theorem (tetrahedra against the origin),
/// returned as |V| plus the orientation flag.
/// Throws OpenMeshError (carrying the boundary-edge count) on open meshes.
VolumeResult enclosed_volume(const TriMesh& mesh);

/// Sum of segment lengths along an ordered vertex chain.
/// Throws Error if fewer than 2 indices or any index is invalid.
double polyline_length(const TriMesh& mesh, std::span<const std::int32_t> chain);

/// Edges bordering fewer or more than 2 triangles. Empty for a closed,
/// consistently wound 2-manifold.
std::vector<std::array<std::int32_t, 2>> boundary_edges(const TriMesh& mesh);
int boundary_edge_count(const TriMesh& mesh);

/// True when the mesh is closed and every interior edge is shared by exactly
/// two triangles with opposite orientation.
bool is_closed_consistent(const TriMesh& mesh);

/// Vertex-to-vertex adjacency from the triangle list (sorted, deduplicated).
std::vector<std::vector<std::int32_t>> vertex_adjacency(const TriMesh& mesh);

/// One pass of uniform Laplacian averaging applied `passes` times to a
/// per-vertex vector field (used for displacement/normal smoothing).
std::vector<Vec3> laplacian_smooth_field(const TriMesh& mesh,
                                         const std::vector<Vec3>& field,
                                         int passes);

/// Axis-aligned bounding box (min, max).
std::pair<Vec3, Vec3> bounding_box(const TriMesh& mesh);

} // namespace gastro
