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
#include <string>
#include <vector>

#include "gastro/rig.hpp"
#include "gastro/trimesh.hpp"

namespace gastro {

/// Region ids used in TriMesh::region_labels for template-derived meshes.
enum class Region : std::int32_t {
    mouth = 0,
    pharynx,
    esophagus,
    stomach_fundus,
    stomach_body,
    stomach_antrum,
    pylorus,
    duodenum,
};
const std::vector<std::string>& region_names();

/// The four structural stomach categories spanned by the prototype simplex.
enum class ShapeType : int { cylindrical = 0, j_shaped, reverse_l, crescentic };
const std::array<std::string, 4>& shape_type_names();

struct TemplateParams {
    int rings = 120;          ///< cross sections along the guide curve
    int ring_segments = 24;   ///< vertices per cross section
    /// Uniform scale on the whole template (1 = anatomical default, mm).
    double scale = 1.0;
};

/// The procedural template: a closed tube swept along a J-shaped guide curve
/// with a bulged fundus and tapered pylorus, plus everything the generation
/// and fitting pipelines need (rig, regions, landmarks, curvature chains, and
/// the four shape prototypes sharing its topology).
struct TemplateAsset {
    TriMesh mesh;                       ///< regions + vertex landmarks populated
    Rig rig;
    LandmarkSet landmarks;              ///< vertex-bound, the five-name vocabulary
    std::vector<std::int32_t> gc_chain; ///< greater-curvature vertex chain, ordered GEJ->pylorus
    std::vector<std::int32_t> lc_chain; ///< lesser-curvature vertex chain
    std::array<std::vector<Vec3>, 4> shape_prototypes;  ///< indexed by ShapeType

    int vertex_count() const { return mesh.vertex_count(); }

    /// Full invariant check (closed, consistently wound, self-intersection
    /// free, chains inside the stomach regions, prototype topology). Throws.
    void check_valid() const;
};

/// Deterministic template construction. Throws Error when the resolution is
/// too low to place all eight regions.
TemplateAsset build_template(const TemplateParams& params = {});

/// Directory layout: mesh.ply + rig.json + annotations.json + one PLY per
/// shape prototype. Round trips bit-exactly.
void save_template_asset(const TemplateAsset& asset, const std::string& dir);
TemplateAsset load_template_asset(const std::string& dir);

} // namespace gastro
