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
#include <span>
#include <string>
#include <vector>

#include "gastro/rng.hpp"
#include "gastro/template_asset.hpp"
#include "gastro/trimesh.hpp"

namespace gastro {

/// One concrete joint perturbation: rotation about the joint rest position
/// followed by a uniform scale about the same pivot.
struct JitterEntry {
    std::string joint;
    Vec3 axis = Vec3(0.0, 1.0, 0.0);
    double angle_rad = 0.0;
    double scale = 1.0;
};

/// Sampling range for one jitter entry.
struct JitterRange {
    std::string joint;
    Vec3 axis = Vec3(0.0, 1.0, 0.0);
    double angle_min = 0.0, angle_max = 0.0;
    double scale_min = 1.0, scale_max = 1.0;
};

struct AttributeRange {
    double lo = 0.0, hi = 0.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
    double span() const { return hi - lo; }
};

/// Physiological bounds and jitter ranges driving dataset generation.
/// Defaults are plausibility values, not clinical authority.
struct GenerationBounds {
    AttributeRange gc{250.0, 450.0};          // mm
    AttributeRange lc{100.0, 200.0};          // mm
    AttributeRange volume{200000.0, 1500000.0};  // mm^3
    AttributeRange insufflation{0.0, 6.0};    // mm
    std::vector<JitterRange> jitter_ranges;   // defaults when empty? use defaults()

    static GenerationBounds defaults();
};

/// Everything needed to rebuild one synthetic mesh bit-for-bit.
struct GenerationRecipe {
    std::array<double, 4> shape_mix{1.0, 0.0, 0.0, 0.0};  // barycentric over ShapeType
    std::vector<JitterEntry> jitter;
    double insufflation_offset_mm = 0.0;
    double target_gc = 0.0;
    double target_lc = 0.0;
    double target_volume = 0.0;
    std::uint64_t rng_seed = 0;

    void check_valid(const GenerationBounds& bounds) const;
};

struct ValidationReport {
    bool passed = false;
    std::vector<std::array<std::int32_t, 2>> self_intersections;
    int boundary_edges = 0;
    double gc = 0.0, lc = 0.0, volume = 0.0;
    bool gc_in_bounds = false, lc_in_bounds = false, volume_in_bounds = false;
    std::vector<std::string> failures;
};

struct GeneratedSample {
    TriMesh mesh;
    GenerationRecipe recipe;
    ValidationReport report;
};

/// Vertex-wise barycentric blend of the four shape prototypes.
/// Throws Error on negative or non-normalized weights.
std::vector<Vec3> interpolate_shape_types(const TemplateAsset& asset,
                                          const std::array<double, 4>& shape_mix);

/// Apply concrete jitter entries (composed down the joint hierarchy) to a
/// vertex array sharing the template topology. Unknown joint names throw.
TriMesh apply_jitter(const TemplateAsset& asset, const TriMesh& mesh,
                     std::span<const JitterEntry> jitter);

/// Sample concrete entries from ranges with the given seed, then apply.
TriMesh apply_jitter(const TemplateAsset& asset, const TriMesh& mesh,
                     std::span<const JitterRange> ranges, std::uint64_t rng_seed);

std::vector<JitterEntry> sample_jitter(std::span<const JitterRange> ranges, Rng& rng);

/// Expand a closed mesh outward along smoothed vertex normals by up to
/// offset_mm, backing displacements off (20-step halving search) wherever a
/// step would self-intersect. Volume strictly increases for offset > 0.
/// Throws Error if the input already self-intersects or is open.
TriMesh insufflate(const TriMesh& mesh, double offset_mm);

/// Scale the mesh (uniform + axial along its principal direction) so that
/// the greater-curvature length hits target_gc (+-1%) and the enclosed volume
/// hits target_volume (+-1%); the lesser-curvature length is reported and
/// tolerated at +-5%. Throws InfeasibleTargetsError otherwise.
TriMesh enforce_dimensions(const TriMesh& mesh, const TemplateAsset& asset, double target_gc,
                           double target_lc, double target_volume);

/// Self-collision, closedness and attribute-bounds report (never throws).
ValidationReport validate_mesh(const TriMesh& mesh, const TemplateAsset& asset,
                               const GenerationBounds& bounds);

/// Deterministic pipeline for one recipe:
/// shape interpolation -> jitter -> insufflation -> dimensional constraints.
TriMesh run_recipe(const TemplateAsset& asset, const GenerationRecipe& recipe);

/// Sample and build n validated meshes. Per-item RNG derives from
/// (rng_seed, index) so results are independent of scheduling. Throws Error
/// when the validation rejection rate exceeds 10%.
std::vector<GeneratedSample> generate_dataset(const TemplateAsset& asset, int n,
                                              const GenerationBounds& bounds,
                                              std::uint64_t rng_seed);

GenerationRecipe load_recipe(const std::string& path);
void save_recipe(const GenerationRecipe& recipe, const std::string& path);

GenerationBounds load_bounds(const std::string& path);
void save_bounds(const GenerationBounds& bounds, const std::string& path);

} // namespace gastro
