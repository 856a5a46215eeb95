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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gastro/shape_model.hpp"
#include "gastro/spatial_index.hpp"
#include "gastro/trimesh.hpp"

namespace gastro {

/// Term weights of the registration energy. All nonnegative; at least one of
/// the data weights (p2p, normal, landmark) must be positive.
struct EnergyWeights {
    double lambda_p2p = 1.0;
    double lambda_n = 0.1;
    double lambda_lm = 1.0;
    double lambda_prior = 1.0;
    double lambda_coup = 0.5;

    void check_valid() const;
};

struct AnnealStage {
    int outer_iterations = 25;
    double prior_multiplier = 1.0;
    double data_multiplier = 1.0;
};

/// Staged reweighting: the prior multiplier relaxes while the data multiplier
/// strengthens over the course of the fit.
struct AnnealSchedule {
    std::vector<AnnealStage> stages;
    static AnnealSchedule defaults();  ///< 4 stages, prior (10,3,1,0.3), data (0.3,1,1,1)
    void check_valid() const;
};

struct FitOptions {
    EnergyWeights weights;
    AnnealSchedule anneal = AnnealSchedule::defaults();
    double convergence_tol = 1e-6;   ///< relative energy change per outer iteration
    int max_outer_iterations = 200;  ///< hard cap across all stages
    int inner_iterations = 4;        ///< Gauss-Newton steps per correspondence refresh
    double reject_distance_factor = 5.0;   ///< drop pairs beyond this multiple of the median
    double reject_normal_angle_deg = 80.0; ///< drop pairs with larger normal disagreement
    double irls_epsilon = 1e-6;      ///< mm, smoothing of the group-L1 coupling
    int scan_samples = 0;            ///< 0: use scan vertices; >0: uniform surface resampling
    std::uint64_t resample_seed = 12345;
};

/// Preprocessed fitting target: spatial index, per-face normals and the
/// scan-side sample points of the symmetric distance term.
class ScanTarget {
public:
    explicit ScanTarget(TriMesh scan, int resample_count = 0,
                        std::uint64_t resample_seed = 12345);

    const TriMesh& mesh() const { return mesh_; }
    const SpatialIndex& index() const { return index_; }
    const std::vector<Vec3>& face_normals() const { return face_normals_; }
    const std::vector<Vec3>& sample_points() const { return sample_points_; }

private:
    TriMesh mesh_;
    SpatialIndex index_;
    std::vector<Vec3> face_normals_;
    std::vector<Vec3> sample_points_;
};

/// Value and gradient (wrt the model vertices) of the data term:
/// symmetric point-to-point distances, normal consistency at the closest scan
/// point, and landmark alignment. The normal term is reported in its absolute
/// form; gradients hold the current closest-point correspondences fixed.
struct DataEnergyResult {
    double value = 0.0;
    std::vector<Vec3> gradient;
    double p2p_forward = 0.0;
    double p2p_reverse = 0.0;
    double normal_abs = 0.0;
    double normal_sq = 0.0;
    double landmark = 0.0;
    std::vector<std::string> skipped_landmarks;
};
DataEnergyResult energy_data(const std::vector<Vec3>& model_vertices, const ScanTarget& scan,
                             const LandmarkSet& landmarks_model,
                             const LandmarkSet& landmarks_scan, const EnergyWeights& weights);

/// Group-L1 coupling energy sum_i ||reference_i - current_i|| and its
/// gradient with respect to the current positions (epsilon-smoothed at zero).
struct CouplingEnergyResult {
    double value = 0.0;
    std::vector<Vec3> gradient;
};
CouplingEnergyResult energy_coupling(const std::vector<Vec3>& reference,
                                     const std::vector<Vec3>& current, double lambda_coup,
                                     double epsilon = 1e-6);

/// Data + prior energy as a function of (beta, rotation, translation), with
/// the full chain-rule gradient through decode. Used by the solver and the
/// finite-difference checks.
struct PoseEnergyResult {
    double value = 0.0;
    Eigen::VectorXd d_beta;
    Vec3 d_rotation = Vec3::Zero();
    Vec3 d_translation = Vec3::Zero();
};
PoseEnergyResult energy_model_space(const ShapeModel& model, const PoseParams& pose,
                                    const ScanTarget& scan, const LandmarkSet& landmarks_scan,
                                    const EnergyWeights& weights);

/// Closed-form rigid alignment (rotation + translation, no scale) of point
/// pairs in least squares. Needs >= 3 non-collinear pairs.
Eigen::Affine3d rigid_align(const std::vector<Vec3>& from, const std::vector<Vec3>& to);

/// Resolve a landmark set against a mesh to world points (vertex-bound
/// entries dereference the mesh).
std::map<std::string, Vec3> landmark_points(const LandmarkSet& landmarks, const TriMesh& mesh);

struct IterationRecord {
    int outer = 0;
    int stage = 0;
    double solver_before = 0.0;  ///< solver objective at fixed correspondences, before the step
    double solver_after = 0.0;   ///< after the accepted step (<= solver_before)
    double data_abs = 0.0;       ///< paper-form data energy at refreshed correspondences
    double prior = 0.0;
    double coupling = 0.0;       ///< true group-L1 value (stage 2)
    double damping = 0.0;
    bool accepted = true;
};

struct FitState {
    PoseParams pose;
    std::vector<Vec3> dv;  ///< empty for model-space fits
    EnergyWeights weights;
    AnnealSchedule anneal;
    int outer_iterations = 0;
    bool converged = false;
    double final_energy = 0.0;   ///< paper-form total at the last iteration
    std::vector<IterationRecord> history;
    std::vector<std::string> warnings;
};

/// Model-space fit (beta, theta, gamma only): alternating closest-point
/// correspondences and damped Gauss-Newton with backtracking, annealed per
/// the schedule. Initialization is closed-form rigid landmark alignment when
/// landmarks are available and no explicit init is given.
FitState fit_model(const ShapeModel& model, const ScanTarget& scan,
                   const LandmarkSet& scan_landmarks, const FitOptions& options,
                   const std::optional<PoseParams>& init = std::nullopt);

/// Two-stage co-registration: fit_model, then a model-free refinement of
/// per-vertex displacements dv tethered to the stage-1 fit by the group-L1
/// coupling term. The registered mesh shares the template topology.
struct CoregisterResult {
    FitState state;
    TriMesh registered;
};
CoregisterResult coregister(const ShapeModel& model, const ScanTarget& scan,
                            const LandmarkSet& scan_landmarks, const FitOptions& options);

/// Symmetric surface-to-surface distance: mean of (fitted->scan, scan->fitted)
/// vertex-to-surface means; per-vertex channel is fitted-side (for the
/// clipped color-map exports).
struct SurfaceDistance {
    double mean = 0.0;
    double max = 0.0;
    std::vector<double> per_vertex;
};
SurfaceDistance mesh_to_scan_distance(const TriMesh& fitted, const TriMesh& scan);

} // namespace gastro
