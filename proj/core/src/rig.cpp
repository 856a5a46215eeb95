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
#include "gastro/rig.hpp"

#include "gastro/errors.hpp"

namespace gastro {

int Rig::find_joint(const std::string& name) const {
    for (std::size_t i = 0; i < joints.size(); ++i)
        if (joints[i].name == name) return static_cast<int>(i);
    return -1;
}

void Rig::check_valid(int vertex_count) const {
    const int k = joint_count();
    if (k == 0) throw Error("rig has no joints");
    int roots = 0;
    for (int i = 0; i < k; ++i) {
        if (joints[i].parent < 0) {
            ++roots;
        } else if (joints[i].parent >= i) {
            throw Error("rig joints must be ordered parent-before-child");
        }
    }
    if (roots != 1) throw Error("rig must have exactly one root joint");
    if (weights.rows() != vertex_count || weights.cols() != k)
        throw Error("rig weight matrix shape mismatch");
    for (int v = 0; v < weights.rows(); ++v) {
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            const double w = weights(v, j);
            if (w < -1e-12 || w > 1.0 + 1e-12) throw Error("blend weight outside [0,1]");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw Error("blend weight row does not sum to 1");
    }
}

std::vector<Eigen::Affine3d> Rig::compose_global(
    std::span<const Eigen::Affine3d> local) const {
    if (local.size() != joints.size())
        throw Error("compose_global: one local transform per joint required");
    std::vector<Eigen::Affine3d> global(joints.size());
    for (std::size_t i = 0; i < joints.size(); ++i) {
        if (joints[i].parent < 0) {
            global[i] = local[i];
        } else {
            global[i] = global[joints[i].parent] * local[i];
        }
    }
    return global;
}

std::vector<int> Rig::subtree(int joint) const {
    std::vector<int> result;
    for (int i = 0; i < joint_count(); ++i) {
        int cursor = i;
        while (cursor != -1) {
            if (cursor == joint) {
                result.push_back(i);
                break;
            }
            cursor = joints[cursor].parent;
        }
    }
    return result;
}

std::vector<Vec3> skin_deform_vertices(const std::vector<Vec3>& rest_vertices, const Rig& rig,
                                       std::span<const Eigen::Affine3d> global_transforms) {
    if (global_transforms.size() != rig.joints.size())
        throw Error("skin_deform: one transform per joint required");
    if (rig.weights.rows() != static_cast<Eigen::Index>(rest_vertices.size()))
        throw Error("skin_deform: weight matrix does not match vertex count");

    const int k = rig.joint_count();
    std::vector<Vec3> out(rest_vertices.size());
    for (std::size_t v = 0; v < rest_vertices.size(); ++v) {
        Vec3 acc = Vec3::Zero();
        const Vec3& rest = rest_vertices[v];
        for (int j = 0; j < k; ++j) {
            const double w = rig.weights(static_cast<Eigen::Index>(v), j);
            if (w == 0.0) continue;
            acc += w * (global_transforms[j] * rest);
        }
        out[v] = acc;
    }
    return out;
}

TriMesh skin_deform(const TriMesh& rest_mesh, const Rig& rig,
                    std::span<const Eigen::Affine3d> global_transforms) {
    TriMesh out = rest_mesh;
    out.vertices = skin_deform_vertices(rest_mesh.vertices, rig, global_transforms);
    return out;
}

} // namespace gastro
