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
#include "gastro/spatial_index.hpp"

#include <algorithm>
#include <limits>

#include "gastro/errors.hpp"

namespace gastro {

Vec3 closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    // Ericson, Real-Time Collision Detection, 5.1.5
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ap = p - a;
    const double d1 = ab.dot(ap);
    const double d2 = ac.dot(ap);
    if (d1 <= 0.0 && d2 <= 0.0) return a;

    const Vec3 bp = p - b;
    const double d3 = ab.dot(bp);
    const double d4 = ac.dot(bp);
    if (d3 >= 0.0 && d4 <= d3) return b;

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double v = d1 / (d1 - d3);
        return a + v * ab;
    }

    const Vec3 cp = p - c;
    const double d5 = ab.dot(cp);
    const double d6 = ac.dot(cp);
    if (d6 >= 0.0 && d5 <= d6) return c;

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double w = d2 / (d2 - d6);
        return a + w * ac;
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
        const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + w * (c - b);
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom;
    const double w = vc * denom;
    return a + ab * v + ac * w;
}

namespace {

double sq_dist_point_aabb(const Vec3& p, const Vec3& lo, const Vec3& hi) {
    double d = 0.0;
    for (int k = 0; k < 3; ++k) {
        if (p[k] < lo[k]) {
            const double e = lo[k] - p[k];
            d += e * e;
        } else if (p[k] > hi[k]) {
            const double e = p[k] - hi[k];
            d += e * e;
        }
    }
    return d;
}

// Moller-Trumbore; returns t >= 0 or nothing.
std::optional<double> ray_triangle(const Vec3& origin, const Vec3& dir,
                                   const Vec3& a, const Vec3& b, const Vec3& c) {
    constexpr double eps = 1e-14;
    const Vec3 e1 = b - a;
    const Vec3 e2 = c - a;
    const Vec3 pvec = dir.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < eps) return std::nullopt;
    const double inv_det = 1.0 / det;
    const Vec3 tvec = origin - a;
    const double u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return std::nullopt;
    const Vec3 qvec = tvec.cross(e1);
    const double v = dir.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;
    const double t = e2.dot(qvec) * inv_det;
    if (t < 0.0) return std::nullopt;
    return t;
}

bool aabb_overlap(const Vec3& alo, const Vec3& ahi, const Vec3& blo, const Vec3& bhi) {
    return (alo.array() <= bhi.array()).all() && (blo.array() <= ahi.array()).all();
}

constexpr std::int32_t kLeafSize = 4;

} // namespace

SpatialIndex::SpatialIndex(const TriMesh& mesh) {
    if (mesh.triangles.empty()) throw Error("SpatialIndex requires a non-empty mesh");
    const auto n = static_cast<std::int32_t>(mesh.triangles.size());
    tri_vertices_.resize(n);
    std::vector<Vec3> centroids(n);
    for (std::int32_t i = 0; i < n; ++i) {
        const Triangle& t = mesh.triangles[i];
        tri_vertices_[i] = {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
        centroids[i] = (tri_vertices_[i][0] + tri_vertices_[i][1] + tri_vertices_[i][2]) / 3.0;
    }
    std::vector<std::int32_t> ids(n);
    for (std::int32_t i = 0; i < n; ++i) ids[i] = i;
    nodes_.reserve(static_cast<std::size_t>(2 * n));
    leaf_tris_.reserve(n);
    build(ids, 0, n, centroids);
}

std::int32_t SpatialIndex::build(std::vector<std::int32_t>& ids, std::int32_t begin,
                                 std::int32_t end, const std::vector<Vec3>& centroids) {
    const auto node_index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    for (std::int32_t i = begin; i < end; ++i) {
        for (const Vec3& v : tri_vertices_[ids[i]]) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
        }
    }
    nodes_[node_index].lo = lo;
    nodes_[node_index].hi = hi;

    const std::int32_t count = end - begin;
    if (count <= kLeafSize) {
        nodes_[node_index].left = static_cast<std::int32_t>(leaf_tris_.size());
        nodes_[node_index].count = count;
        for (std::int32_t i = begin; i < end; ++i) leaf_tris_.push_back(ids[i]);
        return node_index;
    }

    int axis = 0;
    const Vec3 extent = hi - lo;
    if (extent[1] > extent[0]) axis = 1;
    if (extent[2] > extent[axis]) axis = 2;
    const std::int32_t mid = begin + count / 2;
    std::nth_element(ids.begin() + begin, ids.begin() + mid, ids.begin() + end,
                     [&](std::int32_t a, std::int32_t b) {
                         if (centroids[a][axis] != centroids[b][axis])
                             return centroids[a][axis] < centroids[b][axis];
                         return a < b; // deterministic tiebreak
                     });

    const std::int32_t left = build(ids, begin, mid, centroids);
    const std::int32_t right = build(ids, mid, end, centroids);
    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    nodes_[node_index].count = 0;
    return node_index;
}

SpatialIndex::NearestResult SpatialIndex::nearest(const Vec3& query) const {
    NearestResult best;
    double best_sq = std::numeric_limits<double>::infinity();

    // explicit stack ordered by child box distance
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (sq_dist_point_aabb(query, node.lo, node.hi) >= best_sq) continue;
        if (node.count > 0) {
            for (std::int32_t s = 0; s < node.count; ++s) {
                const std::int32_t tri = leaf_tris_[node.left + s];
                const auto& tv = tri_vertices_[tri];
                const Vec3 cp = closest_point_on_triangle(query, tv[0], tv[1], tv[2]);
                const double d = (cp - query).squaredNorm();
                if (d < best_sq) {
                    best_sq = d;
                    best.point = cp;
                    best.triangle = tri;
                }
            }
            continue;
        }
        const double dl = sq_dist_point_aabb(query, nodes_[node.left].lo, nodes_[node.left].hi);
        const double dr = sq_dist_point_aabb(query, nodes_[node.right].lo, nodes_[node.right].hi);
        // push the farther child first so the nearer one is explored next
        if (dl <= dr) {
            if (dr < best_sq) stack[top++] = node.right;
            if (dl < best_sq) stack[top++] = node.left;
        } else {
            if (dl < best_sq) stack[top++] = node.left;
            if (dr < best_sq) stack[top++] = node.right;
        }
    }
    best.distance = std::sqrt(best_sq);
    return best;
}

std::optional<SpatialIndex::RayHit> SpatialIndex::ray_first_hit(const Vec3& origin,
                                                                const Vec3& dir) const {
    std::optional<RayHit> best;
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    const Vec3 inv_dir = dir.cwiseInverse();
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        // slab test
        double tmin = 0.0;
        double tmax = best ? best->t : std::numeric_limits<double>::infinity();
        bool miss = false;
        for (int k = 0; k < 3 && !miss; ++k) {
            if (std::isinf(inv_dir[k])) {
                if (origin[k] < node.lo[k] || origin[k] > node.hi[k]) miss = true;
            } else {
                double t0 = (node.lo[k] - origin[k]) * inv_dir[k];
                double t1 = (node.hi[k] - origin[k]) * inv_dir[k];
                if (t0 > t1) std::swap(t0, t1);
                tmin = std::max(tmin, t0);
                tmax = std::min(tmax, t1);
                if (tmin > tmax) miss = true;
            }
        }
        if (miss) continue;
        if (node.count > 0) {
            for (std::int32_t s = 0; s < node.count; ++s) {
                const std::int32_t tri = leaf_tris_[node.left + s];
                const auto& tv = tri_vertices_[tri];
                const auto t = ray_triangle(origin, dir, tv[0], tv[1], tv[2]);
                if (t && (!best || *t < best->t)) {
                    best = RayHit{*t, tri, origin + (*t) * dir};
                }
            }
            continue;
        }
        stack[top++] = node.left;
        stack[top++] = node.right;
    }
    return best;
}

void SpatialIndex::box_overlaps(const Vec3& lo, const Vec3& hi, double margin,
                                std::vector<std::int32_t>& out) const {
    const Vec3 qlo = lo - Vec3::Constant(margin);
    const Vec3 qhi = hi + Vec3::Constant(margin);
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (!aabb_overlap(node.lo, node.hi, qlo, qhi)) continue;
        if (node.count > 0) {
            for (std::int32_t s = 0; s < node.count; ++s) {
                const std::int32_t tri = leaf_tris_[node.left + s];
                const auto& tv = tri_vertices_[tri];
                Vec3 tlo = tv[0].cwiseMin(tv[1]).cwiseMin(tv[2]);
                Vec3 thi = tv[0].cwiseMax(tv[1]).cwiseMax(tv[2]);
                if (aabb_overlap(tlo, thi, qlo, qhi)) out.push_back(tri);
            }
            continue;
        }
        stack[top++] = node.left;
        stack[top++] = node.right;
    }
}

} // namespace gastro
