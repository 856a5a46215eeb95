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
#include "gastro/collision.hpp"

#include <algorithm>
#include <cmath>

#include "gastro/spatial_index.hpp"

namespace gastro {

namespace {

// Tolerance below which a vertex is considered on the other triangle's plane.
constexpr double kEps = 1e-10;

void isect_interval(double vv0, double vv1, double vv2, double d0, double d1, double d2,
                    double d0d1, double d0d2, double& a, double& b) {
    if (d0d1 > 0.0) {
        // d0, d1 on one side, d2 on the other
        a = vv2 + (vv0 - vv2) * d2 / (d2 - d0);
        b = vv2 + (vv1 - vv2) * d2 / (d2 - d1);
    } else if (d0d2 > 0.0) {
        a = vv1 + (vv0 - vv1) * d1 / (d1 - d0);
        b = vv1 + (vv2 - vv1) * d1 / (d1 - d2);
    } else if (d1 * d2 > 0.0 || d0 != 0.0) {
        a = vv0 + (vv1 - vv0) * d0 / (d0 - d1);
        b = vv0 + (vv2 - vv0) * d0 / (d0 - d2);
    } else if (d1 != 0.0) {
        a = vv1 + (vv0 - vv1) * d1 / (d1 - d0);
        b = vv1 + (vv2 - vv1) * d1 / (d1 - d2);
    } else if (d2 != 0.0) {
        a = vv2 + (vv0 - vv2) * d2 / (d2 - d0);
        b = vv2 + (vv1 - vv2) * d2 / (d2 - d1);
    } else {
        // fully coplanar: handled by the caller
        a = b = 0.0;
    }
}

bool edge_against_edge(const Eigen::Vector2d& a0, const Eigen::Vector2d& a1,
                       const Eigen::Vector2d& b0, const Eigen::Vector2d& b1) {
    const Eigen::Vector2d da = a1 - a0;
    const Eigen::Vector2d db = b1 - b0;
    const double denom = da.x() * db.y() - da.y() * db.x();
    if (std::abs(denom) < 1e-18) return false; // parallel, overlap caught by containment
    const Eigen::Vector2d d = b0 - a0;
    const double s = (d.x() * db.y() - d.y() * db.x()) / denom;
    const double t = (d.x() * da.y() - d.y() * da.x()) / denom;
    return s > kEps && s < 1.0 - kEps && t > kEps && t < 1.0 - kEps;
}

bool point_in_tri_2d(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                     const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
    auto side = [](const Eigen::Vector2d& u, const Eigen::Vector2d& v, const Eigen::Vector2d& q) {
        return (v.x() - u.x()) * (q.y() - u.y()) - (v.y() - u.y()) * (q.x() - u.x());
    };
    const double s1 = side(a, b, p);
    const double s2 = side(b, c, p);
    const double s3 = side(c, a, p);
    const bool has_neg = (s1 < -kEps) || (s2 < -kEps) || (s3 < -kEps);
    const bool has_pos = (s1 > kEps) || (s2 > kEps) || (s3 > kEps);
    return !(has_neg && has_pos);
}

bool coplanar_tri_tri(const Vec3& n, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                      const Vec3& u0, const Vec3& u1, const Vec3& u2) {
    // project onto the dominant axis of the shared plane normal
    int drop = 0;
    Vec3 an = n.cwiseAbs();
    if (an[1] > an[0]) drop = 1;
    if (an[2] > an[drop]) drop = 2;
    const int i = (drop + 1) % 3;
    const int j = (drop + 2) % 3;
    auto pr = [&](const Vec3& v) { return Eigen::Vector2d(v[i], v[j]); };
    const Eigen::Vector2d a0 = pr(v0), a1 = pr(v1), a2 = pr(v2);
    const Eigen::Vector2d b0 = pr(u0), b1 = pr(u1), b2 = pr(u2);

    const Eigen::Vector2d ea[3][2] = {{a0, a1}, {a1, a2}, {a2, a0}};
    const Eigen::Vector2d eb[3][2] = {{b0, b1}, {b1, b2}, {b2, b0}};
    for (const auto& e1 : ea)
        for (const auto& e2 : eb)
            if (edge_against_edge(e1[0], e1[1], e2[0], e2[1])) return true;
    // containment
    if (point_in_tri_2d(a0, b0, b1, b2) && point_in_tri_2d(a1, b0, b1, b2) &&
        point_in_tri_2d(a2, b0, b1, b2))
        return true;
    if (point_in_tri_2d(b0, a0, a1, a2) && point_in_tri_2d(b1, a0, a1, a2) &&
        point_in_tri_2d(b2, a0, a1, a2))
        return true;
    return false;
}

} // namespace

bool triangles_intersect(const Vec3& v0, const Vec3& v1, const Vec3& v2,
                         const Vec3& u0, const Vec3& u1, const Vec3& u2) {
    // plane of triangle V
    const Vec3 n1 = (v1 - v0).cross(v2 - v0);
    const double d1 = -n1.dot(v0);
    double du0 = n1.dot(u0) + d1;
    double du1 = n1.dot(u1) + d1;
    double du2 = n1.dot(u2) + d1;
    const double scale1 = n1.norm();
    const double tol1 = kEps * std::max(scale1, 1e-300);
    if (std::abs(du0) < tol1) du0 = 0.0;
    if (std::abs(du1) < tol1) du1 = 0.0;
    if (std::abs(du2) < tol1) du2 = 0.0;
    const double du0du1 = du0 * du1;
    const double du0du2 = du0 * du2;
    if (du0du1 > 0.0 && du0du2 > 0.0) return false; // all strictly one side

    // plane of triangle U
    const Vec3 n2 = (u1 - u0).cross(u2 - u0);
    const double d2 = -n2.dot(u0);
    double dv0 = n2.dot(v0) + d2;
    double dv1 = n2.dot(v1) + d2;
    double dv2 = n2.dot(v2) + d2;
    const double scale2 = n2.norm();
    const double tol2 = kEps * std::max(scale2, 1e-300);
    if (std::abs(dv0) < tol2) dv0 = 0.0;
    if (std::abs(dv1) < tol2) dv1 = 0.0;
    if (std::abs(dv2) < tol2) dv2 = 0.0;
    const double dv0dv1 = dv0 * dv1;
    const double dv0dv2 = dv0 * dv2;
    if (dv0dv1 > 0.0 && dv0dv2 > 0.0) return false;

    if (du0 == 0.0 && du1 == 0.0 && du2 == 0.0)
        return coplanar_tri_tri(n1, v0, v1, v2, u0, u1, u2);

    // direction of the plane intersection line; project on dominant axis
    const Vec3 dir = n1.cross(n2);
    int axis = 0;
    const Vec3 ad = dir.cwiseAbs();
    if (ad[1] > ad[0]) axis = 1;
    if (ad[2] > ad[axis]) axis = 2;

    double isect1[2], isect2[2];
    isect_interval(v0[axis], v1[axis], v2[axis], dv0, dv1, dv2, dv0dv1, dv0dv2,
                   isect1[0], isect1[1]);
    isect_interval(u0[axis], u1[axis], u2[axis], du0, du1, du2, du0du1, du0du2,
                   isect2[0], isect2[1]);
    if (isect1[0] > isect1[1]) std::swap(isect1[0], isect1[1]);
    if (isect2[0] > isect2[1]) std::swap(isect2[0], isect2[1]);
    // require genuine interval overlap, not a touch
    return std::min(isect1[1], isect2[1]) - std::max(isect1[0], isect2[0]) > kEps;
}

std::vector<std::array<std::int32_t, 2>> detect_self_intersections(const TriMesh& mesh) {
    std::vector<std::array<std::int32_t, 2>> pairs;
    if (mesh.triangles.size() < 2) return pairs;
    const SpatialIndex index(mesh);
    std::vector<std::int32_t> candidates;
    const auto n = static_cast<std::int32_t>(mesh.triangles.size());
    for (std::int32_t i = 0; i < n; ++i) {
        const Triangle& ti = mesh.triangles[i];
        const Vec3& a = mesh.vertices[ti[0]];
        const Vec3& b = mesh.vertices[ti[1]];
        const Vec3& c = mesh.vertices[ti[2]];
        Vec3 lo = a.cwiseMin(b).cwiseMin(c);
        Vec3 hi = a.cwiseMax(b).cwiseMax(c);
        candidates.clear();
        index.box_overlaps(lo, hi, 0.0, candidates);
        for (std::int32_t j : candidates) {
            if (j <= i) continue;
            const Triangle& tj = mesh.triangles[j];
            bool adjacent = false;
            for (int p = 0; p < 3 && !adjacent; ++p)
                for (int q = 0; q < 3; ++q)
                    if (ti[p] == tj[q]) {
                        adjacent = true;
                        break;
                    }
            if (adjacent) continue;
            if (triangles_intersect(a, b, c, mesh.vertices[tj[0]], mesh.vertices[tj[1]],
                                    mesh.vertices[tj[2]]))
                pairs.push_back({i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

} // namespace gastro
