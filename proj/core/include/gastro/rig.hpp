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

#include <span>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "gastro/trimesh.hpp"

namespace gastro {

struct Joint {
    std::string name;
    Vec3 rest_position = Vec3::Zero();
    int parent = -1;  ///< index into Rig::joints; -1 for the single root
};

/// Skeleton plus a dense V x K blend-weight matrix (rows sum to 1, entries in
/// [0,1]). Joints are stored parent-before-child.
struct Rig {
    std::vector<Joint> joints;
    Eigen::MatrixXd weights;  // V x K

    int joint_count() const { return static_cast<int>(joints.size()); }
    int find_joint(const std::string& name) const;  ///< -1 when absent

    /// Checks the single-root / ordering / weight-row invariants.
    void check_valid(int vertex_count) const;

    /// Compose per-joint local affine transforms down the hierarchy into
    /// global transforms (G_k = G_parent * L_k).
    std::vector<Eigen::Affine3d> compose_global(
        std::span<const Eigen::Affine3d> local) const;

    /// Joints in the subtree rooted at `joint` (including it).
    std::vector<int> subtree(int joint) const;
};

/// Linear blend skinning with global per-joint transforms:
/// v' = sum_k w_vk * (T_k * v). Connectivity is untouched.
/// Throws Error if the transform count differs from the joint count.
TriMesh skin_deform(const TriMesh& rest_mesh, const Rig& rig,
                    std::span<const Eigen::Affine3d> global_transforms);

/// Variant operating on a bare vertex array sharing the rig's topology.
std::vector<Vec3> skin_deform_vertices(const std::vector<Vec3>& rest_vertices, const Rig& rig,
                                       std::span<const Eigen::Affine3d> global_transforms);

} // namespace gastro
