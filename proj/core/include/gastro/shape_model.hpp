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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gastro/rng.hpp"
#include "gastro/trimesh.hpp"

namespace gastro {

/// Shape coefficients plus the rigid pose of Eq-style linear shape models:
/// vertices = R(rotation) * (template + basis * beta) + translation.
struct PoseParams {
    Eigen::VectorXd beta;              ///< length = model component count
    Vec3 rotation = Vec3::Zero();      ///< axis-angle, |rotation| canonical in [0, pi]
    Vec3 translation = Vec3::Zero();   ///< mm
};

/// Flatten a vertex list to (x0,y0,z0,x1,...) and back.
Eigen::VectorXd flatten_vertices(const std::vector<Vec3>& vertices);
std::vector<Vec3> unflatten_vertices(const Eigen::VectorXd& flat);

/// Linear statistical shape model learned by (weighted) PCA over
/// topology-consistent vertex arrays. Immutable after fit; decode/project/
/// sample are re-entrant.
class ShapeModel {
public:
    Eigen::VectorXd template_vertices;  ///< 3V, the mean shape (mm)
    Eigen::MatrixXd basis;              ///< 3V x m, orthonormal columns
    Eigen::VectorXd variances;          ///< m, descending, mm^2
    std::vector<Triangle> triangles;    ///< template topology (decode target)
    LandmarkSet landmarks;              ///< vertex-bound template landmarks

    struct Provenance {
        int training_count = 0;
        int real_count = 0;
        double real_weight = 1.0;
        std::uint64_t seed = 0;
        int requested_components = 0;
        int rank = 0;
        std::string dataset_hash;  ///< fingerprint of the training inputs
    };
    Provenance provenance;

    int vertex_count() const { return static_cast<int>(template_vertices.size() / 3); }
    int component_count() const { return static_cast<int>(basis.cols()); }

    /// Basis orthonormality, descending variances, m <= min(3V, n-1).
    void check_valid() const;

    /// Model restricted to the leading k components.
    ShapeModel truncated(int k) const;
};

/// Weighted PCA via thin SVD of the centered, sqrt(weight)-scaled data matrix.
/// Weights are normalized to sum 1 (weight-as-multiplicity semantics).
/// `m` greater than the data rank is truncated to the rank with a warning.
/// Component signs are canonical: each column's largest-magnitude entry > 0.
ShapeModel fit_pca(const std::vector<Eigen::VectorXd>& samples,
                   const std::vector<double>& weights, int m,
                   std::vector<std::string>* warnings = nullptr);

/// v = R(rotation) * (template + basis*beta) + translation.
std::vector<Vec3> decode(const ShapeModel& model, const PoseParams& pose);
TriMesh decode_mesh(const ShapeModel& model, const PoseParams& pose);

/// Least-squares inverse at fixed pose: beta = basis^T (v - template).
Eigen::VectorXd project(const ShapeModel& model, const std::vector<Vec3>& vertices);

/// sum_i beta_i^2 / variance_i, with variance floored at 1e-12 * variance_1.
double mahalanobis_sq(const ShapeModel& model, const Eigen::VectorXd& beta);

/// beta_i ~ N(0, variance_i) clipped at +-sigma_clip standard deviations.
PoseParams sample(const ShapeModel& model, Rng& rng, double sigma_clip = 3.0);

/// Fraction of total retained variance captured by the top k components.
double cumulative_variance(const ShapeModel& model, int k);

/// Serialization: `<stem>.ssm.json` (manifest: counts, topology, landmarks,
/// provenance, binary layout) + `<stem>.ssm.bin` (little-endian float64:
/// template, then basis column-major, then variances). Bit-exact round trip.
void save_model(const ShapeModel& model, const std::string& path);
ShapeModel load_model(const std::string& path);

} // namespace gastro
