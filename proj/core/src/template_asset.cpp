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
#include "gastro/template_asset.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <queue>

#include <nlohmann/json.hpp>

#include "gastro/collision.hpp"
#include "gastro/errors.hpp"
#include "gastro/mesh_io.hpp"

namespace gastro {

const std::vector<std::string>& region_names() {
    static const std::vector<std::string> names = {
        "mouth",          "pharynx",      "esophagus", "stomach-fundus",
        "stomach-body",   "stomach-antrum", "pylorus",   "duodenum"};
    return names;
}

const std::array<std::string, 4>& shape_type_names() {
    static const std::array<std::string, 4> names = {"cylindrical", "j_shaped", "reverse_l",
                                                     "crescentic"};
    return names;
}

namespace {

// ------------------------------------------------------------ guide curve

Vec3 catmull_rom(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3, double u) {
    const double u2 = u * u;
    const double u3 = u2 * u;
    return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

// Closed-form spline sampling through anchor points, clamped ends.
std::vector<Vec3> sample_spline(const std::vector<Vec3>& anchors, int samples) {
    std::vector<Vec3> out;
    out.reserve(samples);
    const int segs = static_cast<int>(anchors.size()) - 1;
    auto anchor = [&](int i) {
        if (i < 0) return anchors.front() + (anchors.front() - anchors[1]);
        if (i >= static_cast<int>(anchors.size()))
            return anchors.back() + (anchors.back() - anchors[anchors.size() - 2]);
        return anchors[i];
    };
    for (int s = 0; s < samples; ++s) {
        const double t = static_cast<double>(s) / (samples - 1) * segs;
        int seg = std::min(static_cast<int>(t), segs - 1);
        const double u = t - seg;
        out.push_back(catmull_rom(anchor(seg - 1), anchor(seg), anchor(seg + 1), anchor(seg + 2), u));
    }
    return out;
}

// Resample a polyline to `count` stations uniformly by arclength.
std::vector<Vec3> resample_by_arclength(const std::vector<Vec3>& poly, int count) {
    std::vector<double> cum(poly.size(), 0.0);
    for (std::size_t i = 1; i < poly.size(); ++i)
        cum[i] = cum[i - 1] + (poly[i] - poly[i - 1]).norm();
    const double total = cum.back();
    std::vector<Vec3> out;
    out.reserve(count);
    std::size_t cursor = 1;
    for (int s = 0; s < count; ++s) {
        const double target = total * s / (count - 1);
        while (cursor + 1 < poly.size() && cum[cursor] < target) ++cursor;
        const double seg = cum[cursor] - cum[cursor - 1];
        const double u = seg > 0.0 ? (target - cum[cursor - 1]) / seg : 0.0;
        out.push_back(poly[cursor - 1] + u * (poly[cursor] - poly[cursor - 1]));
    }
    return out;
}

double interp_profile(const std::vector<std::pair<double, double>>& knots, double t) {
    if (t <= knots.front().first) return knots.front().second;
    if (t >= knots.back().first) return knots.back().second;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (t <= knots[i].first) {
            const double u = (t - knots[i - 1].first) / (knots[i].first - knots[i - 1].first);
            // smoothstep blending keeps the radius profile C1
            const double s = u * u * (3.0 - 2.0 * u);
            return knots[i - 1].second + s * (knots[i].second - knots[i - 1].second);
        }
    }
    return knots.back().second;
}

struct Frame {
    Vec3 tangent, u, w;
};

// rotation-minimizing frames along the station centers (double reflection)
std::vector<Frame> parallel_transport_frames(const std::vector<Vec3>& centers) {
    const int n = static_cast<int>(centers.size());
    std::vector<Frame> frames(n);
    auto tangent_at = [&](int i) {
        if (i == 0) return (centers[1] - centers[0]).normalized();
        if (i == n - 1) return (centers[n - 1] - centers[n - 2]).normalized();
        return (centers[i + 1] - centers[i - 1]).normalized();
    };
    frames[0].tangent = tangent_at(0);
    Vec3 up(0.0, 1.0, 0.0);
    if (std::abs(frames[0].tangent.dot(up)) > 0.9) up = Vec3(1.0, 0.0, 0.0);
    frames[0].u = (up - up.dot(frames[0].tangent) * frames[0].tangent).normalized();
    frames[0].w = frames[0].tangent.cross(frames[0].u);
    for (int i = 1; i < n; ++i) {
        frames[i].tangent = tangent_at(i);
        const Vec3 v1 = centers[i] - centers[i - 1];
        const double c1 = v1.squaredNorm();
        if (c1 < 1e-18) {
            frames[i].u = frames[i - 1].u;
            frames[i].w = frames[i - 1].w;
            continue;
        }
        const Vec3 rl = frames[i - 1].u - (2.0 / c1) * v1.dot(frames[i - 1].u) * v1;
        const Vec3 tl = frames[i - 1].tangent - (2.0 / c1) * v1.dot(frames[i - 1].tangent) * v1;
        const Vec3 v2 = frames[i].tangent - tl;
        const double c2 = v2.squaredNorm();
        Vec3 u = c2 < 1e-18 ? rl : rl - (2.0 / c2) * v2.dot(rl) * v2;
        u = (u - u.dot(frames[i].tangent) * frames[i].tangent).normalized();
        frames[i].u = u;
        frames[i].w = frames[i].tangent.cross(u);
    }
    return frames;
}

// ----------------------------------------------------------- region bands

struct Band {
    Region region;
    double lo, hi;  // station parameter in [0,1]
};
const std::vector<Band>& region_bands() {
    static const std::vector<Band> bands = {
        {Region::mouth, 0.00, 0.03},          {Region::pharynx, 0.03, 0.08},
        {Region::esophagus, 0.08, 0.31},      {Region::stomach_fundus, 0.31, 0.42},
        {Region::stomach_body, 0.42, 0.64},   {Region::stomach_antrum, 0.64, 0.79},
        {Region::pylorus, 0.79, 0.845},       {Region::duodenum, 0.845, 1.0001},
    };
    return bands;
}

Region region_at(double t) {
    for (const Band& b : region_bands())
        if (t >= b.lo && t < b.hi) return b.region;
    return Region::duodenum;
}

bool is_stomach(Region r) {
    return r == Region::stomach_fundus || r == Region::stomach_body ||
           r == Region::stomach_antrum;
}

// ------------------------------------------------------------- rig layout

struct JointSpec {
    const char* name;
    double station;
    int parent;
    bool at_bulge = false;  // positioned off the guide toward the fundus dome
};
const std::vector<JointSpec>& joint_specs() {
    static const std::vector<JointSpec> specs = {
        {"mouth", 0.012, -1},        {"pharynx", 0.055, 0},
        {"esophagus_1", 0.13, 1},    {"esophagus_2", 0.21, 2},
        {"esophagus_3", 0.28, 3},    {"cardia", 0.315, 4},
        {"fundus", 0.365, 5, true},  {"body_upper", 0.45, 5},
        {"body_mid", 0.53, 7},       {"body_lower", 0.61, 8},
        {"antrum_1", 0.68, 9},       {"antrum_2", 0.75, 10},
        {"pylorus", 0.815, 11},      {"duodenum_1", 0.87, 12},
        {"duodenum_2", 0.93, 13},    {"duodenum_3", 0.98, 14},
    };
    return specs;
}

// geodesic distances from a seed set over the surface edge graph
std::vector<double> geodesic_from_seeds(const TriMesh& mesh,
                                        const std::vector<std::vector<std::int32_t>>& adj,
                                        const std::vector<std::int32_t>& seeds) {
    std::vector<double> dist(mesh.vertices.size(), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    for (std::int32_t s : seeds) {
        dist[s] = 0.0;
        queue.push({0.0, s});
    }
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v]) continue;
        for (std::int32_t n : adj[v]) {
            const double nd = d + (mesh.vertices[v] - mesh.vertices[n]).norm();
            if (nd < dist[n]) {
                dist[n] = nd;
                queue.push({nd, n});
            }
        }
    }
    return dist;
}

// ------------------------------------------------------ prototype presets

struct PoseEntry {
    const char* joint;
    double angle_deg;  // about the ring binormal (out-of-plane) axis
    double scale = 1.0;
};

const std::vector<PoseEntry>& prototype_pose(ShapeType type) {
    // Presets bend the distal stomach about the out-of-plane axis; positive
    // angles deepen the J curl, negative angles straighten it.
    static const std::vector<PoseEntry> cylindrical = {
        {"body_mid", -8.0},   {"body_lower", -16.0}, {"antrum_1", -24.0},
        {"antrum_2", -26.0},  {"pylorus", -18.0},    {"fundus", 0.0, 0.86},
    };
    static const std::vector<PoseEntry> j_shaped = {
        {"body_lower", 5.0}, {"antrum_1", 6.0}, {"fundus", 0.0, 1.04},
    };
    static const std::vector<PoseEntry> reverse_l = {
        {"body_mid", -6.0}, {"antrum_1", 16.0}, {"antrum_2", 26.0}, {"pylorus", 18.0},
    };
    static const std::vector<PoseEntry> crescentic = {
        {"body_upper", 7.0}, {"body_mid", 11.0},  {"body_lower", 13.0},
        {"antrum_1", 9.0},   {"antrum_2", 7.0},   {"fundus", 0.0, 1.08},
    };
    switch (type) {
        case ShapeType::cylindrical: return cylindrical;
        case ShapeType::j_shaped: return j_shaped;
        case ShapeType::reverse_l: return reverse_l;
        case ShapeType::crescentic: return crescentic;
    }
    return j_shaped;
}

} // namespace

TemplateAsset build_template(const TemplateParams& params) {
    if (params.rings < 24 || params.ring_segments < 8)
        throw Error("resolution too low to place all anatomical regions "
                    "(need rings >= 24, ring_segments >= 8)");
    if (params.scale <= 0.0) throw Error("template scale must be positive");

    const int rings = params.rings;
    const int segs = params.ring_segments;

    // anatomical guide anchors (mm), J-shape in the x-z plane, head at +z
    const std::vector<Vec3> anchors = {
        {0, 0, 460},   {0, 0, 430},   {0, 0, 390},   {2, 0, 330},  {4, 0, 285},
        {12, 0, 255},  {30, 0, 228},  {48, 0, 195},  {60, 0, 155}, {68, 0, 115},
        {70, 0, 78},   {92, 0, 50},   {120, 0, 42},  {146, 0, 56}, {166, 0, 78},
        {180, 0, 92},  {193, 0, 102}, {205, 0, 108},
    };
    const std::vector<std::pair<double, double>> radius_knots = {
        {0.00, 7.0},  {0.05, 8.5},  {0.10, 9.0},  {0.25, 10.0}, {0.30, 14.0},
        {0.36, 40.0}, {0.45, 46.0}, {0.55, 44.0}, {0.62, 40.0}, {0.70, 34.0},
        {0.76, 27.0}, {0.81, 15.0}, {0.86, 11.0}, {1.00, 9.0},
    };

    const auto centers = resample_by_arclength(sample_spline(anchors, 2400), rings);
    const auto frames = parallel_transport_frames(centers);

    const Vec3 bulge_dir = Vec3(-0.3, 0.0, 1.0).normalized();
    auto bulge_amplitude = [](double t) {
        const double d = (t - 0.37) / 0.07;
        return 0.75 * std::exp(-d * d);
    };

    TemplateAsset asset;
    TriMesh& mesh = asset.mesh;
    std::vector<double> station_of_vertex;

    // cap apex at the mouth end
    mesh.vertices.push_back(params.scale * (centers.front() -
                                            frames.front().tangent * interp_profile(radius_knots, 0.0)));
    station_of_vertex.push_back(0.0);

    for (int s = 0; s < rings; ++s) {
        const double t = static_cast<double>(s) / (rings - 1);
        const double base_radius = interp_profile(radius_knots, t);
        const double amp = bulge_amplitude(t);
        for (int a = 0; a < segs; ++a) {
            const double phi = 2.0 * M_PI * a / segs;
            const Vec3 radial = std::cos(phi) * frames[s].u + std::sin(phi) * frames[s].w;
            double radius = base_radius;
            const double toward_bulge = radial.dot(bulge_dir);
            if (toward_bulge > 0.0) radius *= 1.0 + amp * toward_bulge * toward_bulge;
            mesh.vertices.push_back(params.scale * (centers[s] + radius * radial));
            station_of_vertex.push_back(t);
        }
    }

    // cap apex at the duodenum end
    mesh.vertices.push_back(params.scale * (centers.back() +
                                            frames.back().tangent * interp_profile(radius_knots, 1.0)));
    station_of_vertex.push_back(1.0);

    const auto ring_vertex = [&](int ring, int seg) {
        return static_cast<std::int32_t>(1 + ring * segs + ((seg % segs) + segs) % segs);
    };

    // mouth cap fan (apex = 0), wound so normals point out of the tube
    for (int a = 0; a < segs; ++a)
        mesh.triangles.push_back({0, ring_vertex(0, a + 1), ring_vertex(0, a)});
    // tube walls
    for (int s = 0; s + 1 < rings; ++s) {
        for (int a = 0; a < segs; ++a) {
            const std::int32_t v00 = ring_vertex(s, a);
            const std::int32_t v01 = ring_vertex(s, a + 1);
            const std::int32_t v10 = ring_vertex(s + 1, a);
            const std::int32_t v11 = ring_vertex(s + 1, a + 1);
            mesh.triangles.push_back({v00, v01, v11});
            mesh.triangles.push_back({v00, v11, v10});
        }
    }
    // duodenum cap fan
    const auto apex_end = static_cast<std::int32_t>(mesh.vertices.size() - 1);
    for (int a = 0; a < segs; ++a)
        mesh.triangles.push_back({apex_end, ring_vertex(rings - 1, a), ring_vertex(rings - 1, a + 1)});

    // regions
    mesh.region_labels.resize(mesh.vertices.size());
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
        mesh.region_labels[v] = static_cast<std::int32_t>(region_at(station_of_vertex[v]));

    // ------------------------------------------------------------- chains
    // The lesser curvature hugs the inner crook of the J; per stomach ring we
    // take the vertex nearest the focal point and its antipode for the GC.
    const Vec3 focal = params.scale * Vec3(95.0, 0.0, 150.0);
    const int first_stomach_ring = static_cast<int>(std::ceil(0.31 * (rings - 1)));
    const int last_stomach_ring = static_cast<int>(std::floor(0.789 * (rings - 1)));
    for (int s = first_stomach_ring; s <= last_stomach_ring; ++s) {
        int best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (int a = 0; a < segs; ++a) {
            const double d = (mesh.vertices[ring_vertex(s, a)] - focal).squaredNorm();
            if (d < best_d) {
                best_d = d;
                best = a;
            }
        }
        asset.lc_chain.push_back(ring_vertex(s, best));
        asset.gc_chain.push_back(ring_vertex(s, best + segs / 2));
    }

    // ---------------------------------------------------------- landmarks
    const int body_antrum_ring = static_cast<int>(std::ceil(0.64 * (rings - 1)));
    std::int32_t fundus_apex = asset.gc_chain.front();
    double best_proj = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        if (mesh.region_labels[v] != static_cast<std::int32_t>(Region::stomach_fundus)) continue;
        const double proj = mesh.vertices[v].dot(bulge_dir);
        if (proj > best_proj) {
            best_proj = proj;
            fundus_apex = static_cast<std::int32_t>(v);
        }
    }
    asset.landmarks.set_vertex("gastroesophageal_junction", asset.lc_chain.front());
    asset.landmarks.set_vertex("fundus", fundus_apex);
    asset.landmarks.set_vertex("greater_curvature",
                               asset.gc_chain[asset.gc_chain.size() / 2]);
    asset.landmarks.set_vertex("angular_incisure",
                               asset.lc_chain[std::min<std::size_t>(
                                   body_antrum_ring - first_stomach_ring,
                                   asset.lc_chain.size() - 1)]);
    const int pylorus_ring = static_cast<int>(std::round(0.815 * (rings - 1)));
    asset.landmarks.set_vertex("pyloric_sphincter", ring_vertex(pylorus_ring, 0));
    mesh.landmark_bindings = asset.landmarks;

    // ---------------------------------------------------------------- rig
    const auto& specs = joint_specs();
    asset.rig.joints.reserve(specs.size());
    for (const JointSpec& js : specs) {
        Joint j;
        j.name = js.name;
        j.parent = js.parent;
        const int ring = static_cast<int>(std::round(js.station * (rings - 1)));
        Vec3 pos = centers[ring];
        if (js.at_bulge) pos += 0.8 * interp_profile(radius_knots, js.station) * bulge_dir;
        j.rest_position = params.scale * pos;
        asset.rig.joints.push_back(j);
    }

    // blend weights: geodesic falloff from per-joint seed rings, smoothed on
    // the surface, truncated for compact support, then row-normalized
    const auto adjacency = vertex_adjacency(mesh);
    const int k = asset.rig.joint_count();
    Eigen::MatrixXd weights(mesh.vertex_count(), k);
    weights.setZero();

    // seed sets: every vertex goes to its nearest joint by station parameter;
    // the fundus joint instead seeds the bulge-side fundus vertices
    std::vector<std::vector<std::int32_t>> seeds(k);
    const int fundus_joint = asset.rig.find_joint("fundus");
    for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
        const double t = station_of_vertex[v];
        int nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int j = 0; j < k; ++j) {
            if (j == fundus_joint) continue;
            const double d = std::abs(specs[j].station - t);
            if (d < best) {
                best = d;
                nearest = j;
            }
        }
        if (mesh.region_labels[v] == static_cast<std::int32_t>(Region::stomach_fundus) &&
            (mesh.vertices[v] - asset.rig.joints[fundus_joint].rest_position).norm() <
                (mesh.vertices[v] - asset.rig.joints[nearest].rest_position).norm()) {
            nearest = fundus_joint;
        }
        seeds[nearest].push_back(static_cast<std::int32_t>(v));
    }

    double joint_spacing = 0.0;
    for (int j = 1; j < k; ++j)
        joint_spacing +=
            (asset.rig.joints[j].rest_position - asset.rig.joints[j - 1].rest_position).norm();
    joint_spacing /= k - 1;

    for (int j = 0; j < k; ++j) {
        if (seeds[j].empty()) continue;
        const auto dist = geodesic_from_seeds(mesh, adjacency, seeds[j]);
        const double sigma = 1.5 * joint_spacing;
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            const double d = dist[v];
            if (d > 2.5 * sigma) continue;
            weights(static_cast<Eigen::Index>(v), j) = std::exp(-(d * d) / (sigma * sigma));
        }
    }
    // smooth each column over the surface graph (keeps support compact)
    for (int pass = 0; pass < 6; ++pass) {
        Eigen::MatrixXd next = weights;
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            const auto& nb = adjacency[v];
            if (nb.empty()) continue;
            Eigen::RowVectorXd avg = Eigen::RowVectorXd::Zero(k);
            for (std::int32_t n : nb) avg += weights.row(n);
            next.row(static_cast<Eigen::Index>(v)) =
                0.5 * weights.row(static_cast<Eigen::Index>(v)) + 0.5 * avg / nb.size();
        }
        weights = std::move(next);
    }
    for (Eigen::Index v = 0; v < weights.rows(); ++v) {
        const double sum = weights.row(v).sum();
        if (sum <= 0.0) {
            // unreachable in practice; pin to the nearest joint to stay valid
            int nearest = 0;
            double best = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                const double d =
                    (mesh.vertices[static_cast<std::size_t>(v)] - asset.rig.joints[j].rest_position)
                        .norm();
                if (d < best) {
                    best = d;
                    nearest = j;
                }
            }
            weights(v, nearest) = 1.0;
        } else {
            weights.row(v) /= sum;
        }
    }
    asset.rig.weights = std::move(weights);

    // ---------------------------------------------------------- prototypes
    const Vec3 bend_axis(0.0, 1.0, 0.0);  // out of the guide plane
    for (int p = 0; p < 4; ++p) {
        std::vector<Eigen::Affine3d> local(asset.rig.joints.size(),
                                           Eigen::Affine3d::Identity());
        for (const PoseEntry& entry : prototype_pose(static_cast<ShapeType>(p))) {
            const int j = asset.rig.find_joint(entry.joint);
            const Vec3& pivot = asset.rig.joints[j].rest_position;
            Eigen::Affine3d t = Eigen::Affine3d::Identity();
            t.translate(pivot)
                .rotate(Eigen::AngleAxisd(entry.angle_deg * M_PI / 180.0, bend_axis))
                .scale(entry.scale)
                .translate(-pivot);
            local[j] = t;
        }
        const auto global = asset.rig.compose_global(local);
        asset.shape_prototypes[p] = skin_deform_vertices(mesh.vertices, asset.rig, global);
    }

    asset.check_valid();
    return asset;
}

void TemplateAsset::check_valid() const {
    mesh.check_valid();
    if (!is_closed_consistent(mesh))
        throw Error("template mesh must be closed and consistently wound");
    if (!detect_self_intersections(mesh).empty())
        throw Error("template mesh is self-intersecting");
    rig.check_valid(mesh.vertex_count());
    if (gc_chain.size() < 10 || lc_chain.size() < 10)
        throw Error("curvature chains must contain at least 10 vertices");
    for (const auto& chain : {gc_chain, lc_chain}) {
        for (std::int32_t v : chain) {
            if (v < 0 || v >= mesh.vertex_count())
                throw Error("curvature chain index out of range");
            const auto region = static_cast<Region>(mesh.region_labels[v]);
            if (!is_stomach(region))
                throw Error("curvature chain leaves the stomach regions");
        }
    }
    for (const auto& proto : shape_prototypes)
        if (proto.size() != mesh.vertices.size())
            throw Error("shape prototype does not share the template topology");
    for (const std::string& name : landmark_vocabulary())
        if (!landmarks.contains(name) || !landmarks.is_vertex_bound(name))
            throw Error("template landmarks must bind all five names to vertices");
}

// ------------------------------------------------------------------- I/O

void save_template_asset(const TemplateAsset& asset, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    save_mesh(asset.mesh, (fs::path(dir) / "mesh.ply").string());

    nlohmann::json rig;
    for (const Joint& j : asset.rig.joints) {
        rig["joints"].push_back({{"name", j.name},
                                 {"parent", j.parent},
                                 {"rest", {j.rest_position.x(), j.rest_position.y(),
                                           j.rest_position.z()}}});
    }
    std::vector<double> flat(static_cast<std::size_t>(asset.rig.weights.size()));
    for (Eigen::Index v = 0; v < asset.rig.weights.rows(); ++v)
        for (Eigen::Index j = 0; j < asset.rig.weights.cols(); ++j)
            flat[static_cast<std::size_t>(v) * asset.rig.weights.cols() + j] =
                asset.rig.weights(v, j);
    rig["weights"] = flat;
    rig["weight_rows"] = asset.rig.weights.rows();
    rig["weight_cols"] = asset.rig.weights.cols();
    std::ofstream rf(fs::path(dir) / "rig.json");
    if (!rf) throw Error("cannot write rig.json in " + dir);
    rf << rig.dump() << "\n";

    nlohmann::json ann;
    ann["region_names"] = region_names();
    ann["region_labels"] = asset.mesh.region_labels;
    for (const auto& [name, value] : asset.landmarks.entries())
        ann["landmarks"][name] = std::get<std::int32_t>(value);
    ann["gc_chain"] = asset.gc_chain;
    ann["lc_chain"] = asset.lc_chain;
    ann["prototypes"] = shape_type_names();
    std::ofstream af(fs::path(dir) / "annotations.json");
    if (!af) throw Error("cannot write annotations.json in " + dir);
    af << ann.dump() << "\n";

    for (int p = 0; p < 4; ++p) {
        TriMesh proto;
        proto.vertices = asset.shape_prototypes[p];
        proto.triangles = asset.mesh.triangles;
        save_mesh(proto, (fs::path(dir) / (shape_type_names()[p] + ".ply")).string());
    }
}

TemplateAsset load_template_asset(const std::string& dir) {
    namespace fs = std::filesystem;
    TemplateAsset asset;
    asset.mesh = load_mesh((fs::path(dir) / "mesh.ply").string());

    std::ifstream rf(fs::path(dir) / "rig.json");
    if (!rf) throw Error("cannot open rig.json in " + dir);
    nlohmann::json rig;
    rf >> rig;
    for (const auto& j : rig.at("joints")) {
        Joint joint;
        joint.name = j.at("name").get<std::string>();
        joint.parent = j.at("parent").get<int>();
        joint.rest_position = Vec3(j.at("rest").at(0).get<double>(),
                                   j.at("rest").at(1).get<double>(),
                                   j.at("rest").at(2).get<double>());
        asset.rig.joints.push_back(joint);
    }
    const auto rows = rig.at("weight_rows").get<Eigen::Index>();
    const auto cols = rig.at("weight_cols").get<Eigen::Index>();
    const auto flat = rig.at("weights").get<std::vector<double>>();
    if (flat.size() != static_cast<std::size_t>(rows * cols))
        throw Error("rig.json weight array size mismatch");
    asset.rig.weights.resize(rows, cols);
    for (Eigen::Index v = 0; v < rows; ++v)
        for (Eigen::Index j = 0; j < cols; ++j)
            asset.rig.weights(v, j) = flat[static_cast<std::size_t>(v) * cols + j];

    std::ifstream af(fs::path(dir) / "annotations.json");
    if (!af) throw Error("cannot open annotations.json in " + dir);
    nlohmann::json ann;
    af >> ann;
    asset.mesh.region_labels = ann.at("region_labels").get<std::vector<std::int32_t>>();
    for (const auto& [name, idx] : ann.at("landmarks").items())
        asset.landmarks.set_vertex(name, idx.get<std::int32_t>());
    asset.mesh.landmark_bindings = asset.landmarks;
    asset.gc_chain = ann.at("gc_chain").get<std::vector<std::int32_t>>();
    asset.lc_chain = ann.at("lc_chain").get<std::vector<std::int32_t>>();

    for (int p = 0; p < 4; ++p) {
        const TriMesh proto =
            load_mesh((fs::path(dir) / (shape_type_names()[p] + ".ply")).string());
        if (proto.triangles != asset.mesh.triangles)
            throw Error("prototype " + shape_type_names()[p] + " topology mismatch");
        asset.shape_prototypes[p] = proto.vertices;
    }
    asset.check_valid();
    return asset;
}

} // namespace gastro
