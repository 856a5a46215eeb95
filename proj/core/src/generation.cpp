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
#include "gastro/generation.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gastro/collision.hpp"
#include "gastro/errors.hpp"
#include "gastro/parallel.hpp"

namespace gastro {

GenerationBounds GenerationBounds::defaults() {
    GenerationBounds b;
    b.jitter_ranges = {
        {"pylorus", Vec3(0, 1, 0), -0.25, 0.25, 1.0, 1.0},
        {"fundus", Vec3(0, 1, 0), 0.0, 0.0, 0.88, 1.18},
        {"body_upper", Vec3(0, 0, 1), -0.10, 0.10, 1.0, 1.0},
    };
    return b;
}

void GenerationRecipe::check_valid(const GenerationBounds& bounds) const {
    double sum = 0.0;
    for (double w : shape_mix) {
        if (w < -1e-12) throw Error("shape_mix weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw Error("shape_mix must sum to 1");
    if (insufflation_offset_mm < 0.0) throw Error("insufflation offset must be >= 0");
    if (target_gc <= 0.0 || target_lc <= 0.0 || target_volume <= 0.0)
        throw Error("dimensional targets must be positive");
    if (!bounds.gc.contains(target_gc) || !bounds.lc.contains(target_lc) ||
        !bounds.volume.contains(target_volume))
        throw Error("recipe targets outside the configured physiological bounds");
}

std::vector<Vec3> interpolate_shape_types(const TemplateAsset& asset,
                                          const std::array<double, 4>& shape_mix) {
    double sum = 0.0;
    for (double w : shape_mix) {
        if (w < -1e-12) throw Error("interpolate_shape_types: negative barycentric weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw Error("interpolate_shape_types: weights must sum to 1");

    const std::size_t n = asset.mesh.vertices.size();
    std::vector<Vec3> out(n, Vec3::Zero());
    for (int p = 0; p < 4; ++p) {
        const double w = shape_mix[p];
        if (w == 0.0) continue;
        const auto& proto = asset.shape_prototypes[p];
        for (std::size_t v = 0; v < n; ++v) out[v] += w * proto[v];
    }
    return out;
}

namespace {

Eigen::Affine3d jitter_transform(const Vec3& pivot, const JitterEntry& entry) {
    Eigen::Affine3d t = Eigen::Affine3d::Identity();
    t.translate(pivot);
    if (entry.angle_rad != 0.0) {
        const double n = entry.axis.norm();
        if (n <= 0.0) throw Error("jitter rotation axis must be nonzero");
        t.rotate(Eigen::AngleAxisd(entry.angle_rad, entry.axis / n));
    }
    t.scale(entry.scale);
    t.translate(-pivot);
    return t;
}

} // namespace

TriMesh apply_jitter(const TemplateAsset& asset, const TriMesh& mesh,
                     std::span<const JitterEntry> jitter) {
    if (mesh.vertex_count() != asset.mesh.vertex_count())
        throw Error("apply_jitter: mesh does not share the template topology");
    std::vector<Eigen::Affine3d> local(asset.rig.joints.size(), Eigen::Affine3d::Identity());
    for (const JitterEntry& entry : jitter) {
        const int j = asset.rig.find_joint(entry.joint);
        if (j < 0) throw Error("apply_jitter: unknown joint '" + entry.joint + "'");
        local[j] = local[j] * jitter_transform(asset.rig.joints[j].rest_position, entry);
    }
    const auto global = asset.rig.compose_global(local);
    return skin_deform(mesh, asset.rig, global);
}

std::vector<JitterEntry> sample_jitter(std::span<const JitterRange> ranges, Rng& rng) {
    std::vector<JitterEntry> entries;
    entries.reserve(ranges.size());
    for (const JitterRange& r : ranges) {
        JitterEntry e;
        e.joint = r.joint;
        e.axis = r.axis;
        e.angle_rad = rng.uniform(r.angle_min, r.angle_max);
        e.scale = rng.uniform(r.scale_min, r.scale_max);
        entries.push_back(e);
    }
    return entries;
}

TriMesh apply_jitter(const TemplateAsset& asset, const TriMesh& mesh,
                     std::span<const JitterRange> ranges, std::uint64_t rng_seed) {
    Rng rng(rng_seed);
    const auto entries = sample_jitter(ranges, rng);
    return apply_jitter(asset, mesh, entries);
}

TriMesh insufflate(const TriMesh& mesh, double offset_mm) {
    if (offset_mm < 0.0) throw Error("insufflate: offset must be >= 0");
    const int open = boundary_edge_count(mesh);
    if (open > 0) throw OpenMeshError("insufflate requires a closed mesh", open);
    if (!detect_self_intersections(mesh).empty())
        throw Error("insufflate: input mesh is already self-intersecting");
    if (offset_mm == 0.0) return mesh;

    const double volume_before = enclosed_volume(mesh).value;

    auto normals = compute_vertex_normals(mesh).normals;
    normals = laplacian_smooth_field(mesh, normals, 3);
    for (Vec3& n : normals) {
        const double len = n.norm();
        if (len > 0.0) n /= len;
    }
    std::vector<Vec3> displacement(mesh.vertices.size());
    for (std::size_t v = 0; v < displacement.size(); ++v)
        displacement[v] = offset_mm * normals[v];
    displacement = laplacian_smooth_field(mesh, displacement, 3);

    std::vector<double> alpha(mesh.vertices.size(), 1.0);
    TriMesh candidate = mesh;
    auto rebuild = [&]() {
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
            candidate.vertices[v] = mesh.vertices[v] + alpha[v] * displacement[v];
    };

    rebuild();
    auto pairs = detect_self_intersections(candidate);
    for (int step = 0; step < 20 && !pairs.empty(); ++step) {
        std::set<std::int32_t> offending;
        for (const auto& pr : pairs)
            for (int side = 0; side < 2; ++side)
                for (int k = 0; k < 3; ++k) offending.insert(mesh.triangles[pr[side]][k]);
        for (std::int32_t v : offending) alpha[v] *= 0.5;
        rebuild();
        pairs = detect_self_intersections(candidate);
    }
    // last resort: drop the displacement of any vertex still in collision
    while (!pairs.empty()) {
        bool changed = false;
        for (const auto& pr : pairs) {
            for (int side = 0; side < 2; ++side) {
                for (int k = 0; k < 3; ++k) {
                    const std::int32_t v = mesh.triangles[pr[side]][k];
                    if (alpha[v] != 0.0) {
                        alpha[v] = 0.0;
                        changed = true;
                    }
                }
            }
        }
        if (!changed) break;
        rebuild();
        pairs = detect_self_intersections(candidate);
    }
    if (!pairs.empty())
        throw Error("insufflate: failed to resolve self-intersections");

    if (enclosed_volume(candidate).value <= volume_before)
        throw Error("insufflate: volume did not increase");
    return candidate;
}

namespace {

// linear map for the two-scale solve: uniform s, extra stretch a along axis d
Eigen::Matrix3d scale_matrix(double s, double a, const Vec3& d) {
    return s * (Eigen::Matrix3d::Identity() + (a - 1.0) * d * d.transpose());
}

double chain_length_under(const std::vector<Vec3>& points, const Eigen::Matrix3d& m) {
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
        total += (m * (points[i] - points[i - 1])).norm();
    return total;
}

struct TwoScaleSolution {
    double s = 1.0, a = 1.0;
    Vec3 axis;
    Vec3 centroid;
};

// Solve for (s, a) such that volume scales exactly to target and the GC chain
// length reaches target within tolerance. Volume scales by s^3*a in closed
// form, so this reduces to a 1-D root find in a.
TwoScaleSolution solve_two_scale(const std::vector<Vec3>& gc_points, double gc0, double vol0,
                                 double target_gc, double target_volume, const Vec3& axis,
                                 const Vec3& centroid, int max_iterations) {
    TwoScaleSolution sol;
    sol.axis = axis;
    sol.centroid = centroid;

    auto gc_of = [&](double a) {
        const double s = std::cbrt(target_volume / (vol0 * a));
        return chain_length_under(gc_points, scale_matrix(s, a, axis));
    };

    double lo = 0.05, hi = 20.0;
    double flo = gc_of(lo) - target_gc;
    double fhi = gc_of(hi) - target_gc;
    if (flo * fhi > 0.0)
        throw InfeasibleTargetsError("enforce_dimensions: GC target unreachable", gc0, 0.0, vol0);
    double a = 1.0;
    for (int it = 0; it < max_iterations; ++it) {
        a = 0.5 * (lo + hi);
        const double f = gc_of(a) - target_gc;
        if (std::abs(f) <= 1e-3 * target_gc) break;
        if ((f > 0.0) == (fhi > 0.0)) {
            hi = a;
            fhi = f;
        } else {
            lo = a;
            flo = f;
        }
    }
    sol.a = a;
    sol.s = std::cbrt(target_volume / (vol0 * a));
    return sol;
}

std::vector<Vec3> gather(const TriMesh& mesh, const std::vector<std::int32_t>& chain) {
    std::vector<Vec3> points;
    points.reserve(chain.size());
    for (std::int32_t v : chain) points.push_back(mesh.vertices[v]);
    return points;
}

// Two-scale enforcement of GC and volume only (the LC tolerance gate lives in
// enforce_dimensions). Returns the input unchanged when already on target.
TriMesh enforce_gc_volume(const TriMesh& mesh, const TemplateAsset& asset, double target_gc,
                          double target_volume) {
    const double gc0 = polyline_length(mesh, asset.gc_chain);
    const double vol0 = enclosed_volume(mesh).value;
    if (std::abs(gc0 - target_gc) <= 1e-9 * target_gc &&
        std::abs(vol0 - target_volume) <= 1e-9 * target_volume)
        return mesh;

    // principal axis of the current shape, held fixed during the solve
    Vec3 centroid = Vec3::Zero();
    for (const Vec3& v : mesh.vertices) centroid += v;
    centroid /= mesh.vertex_count();
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Vec3& v : mesh.vertices) {
        const Vec3 d = v - centroid;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    Vec3 axis = eig.eigenvectors().col(2);  // largest eigenvalue
    int dominant = 0;
    axis.cwiseAbs().maxCoeff(&dominant);
    if (axis[dominant] < 0.0) axis = -axis;  // deterministic sign

    const auto sol = solve_two_scale(gather(mesh, asset.gc_chain), gc0, vol0, target_gc,
                                     target_volume, axis, centroid, 100);

    const Eigen::Matrix3d m = scale_matrix(sol.s, sol.a, sol.axis);
    TriMesh out = mesh;
    for (Vec3& v : out.vertices) v = sol.centroid + m * (v - sol.centroid);
    return out;
}

} // namespace

TriMesh enforce_dimensions(const TriMesh& mesh, const TemplateAsset& asset, double target_gc,
                           double target_lc, double target_volume) {
    if (target_gc <= 0.0 || target_lc <= 0.0 || target_volume <= 0.0)
        throw Error("enforce_dimensions: targets must be positive");
    if (mesh.vertex_count() != asset.mesh.vertex_count())
        throw Error("enforce_dimensions: mesh does not share the template topology");

    TriMesh out = enforce_gc_volume(mesh, asset, target_gc, target_volume);

    const double gc = polyline_length(out, asset.gc_chain);
    const double lc = polyline_length(out, asset.lc_chain);
    const double vol = enclosed_volume(out).value;
    std::ostringstream msg;
    if (std::abs(gc - target_gc) > 0.01 * target_gc) {
        msg << "enforce_dimensions: GC " << gc << " misses target " << target_gc;
        throw InfeasibleTargetsError(msg.str(), gc, lc, vol);
    }
    if (std::abs(vol - target_volume) > 0.01 * target_volume) {
        msg << "enforce_dimensions: volume " << vol << " misses target " << target_volume;
        throw InfeasibleTargetsError(msg.str(), gc, lc, vol);
    }
    if (std::abs(lc - target_lc) > 0.05 * target_lc) {
        msg << "enforce_dimensions: LC " << lc << " off target " << target_lc << " by more than 5%";
        throw InfeasibleTargetsError(msg.str(), gc, lc, vol);
    }
    return out;
}

ValidationReport validate_mesh(const TriMesh& mesh, const TemplateAsset& asset,
                               const GenerationBounds& bounds) {
    ValidationReport report;
    report.self_intersections = detect_self_intersections(mesh);
    report.boundary_edges = boundary_edge_count(mesh);
    if (!report.self_intersections.empty())
        report.failures.push_back("self-intersections: " +
                                  std::to_string(report.self_intersections.size()) + " pairs");
    if (report.boundary_edges > 0) {
        report.failures.push_back("open mesh: " + std::to_string(report.boundary_edges) +
                                  " boundary edges");
        report.gc = report.lc = report.volume = 0.0;
        report.passed = false;
        return report;
    }
    report.gc = polyline_length(mesh, asset.gc_chain);
    report.lc = polyline_length(mesh, asset.lc_chain);
    report.volume = enclosed_volume(mesh).value;
    report.gc_in_bounds = bounds.gc.contains(report.gc);
    report.lc_in_bounds = bounds.lc.contains(report.lc);
    report.volume_in_bounds = bounds.volume.contains(report.volume);
    std::ostringstream oss;
    if (!report.gc_in_bounds) {
        oss.str("");
        oss << "GC " << report.gc << " outside [" << bounds.gc.lo << ", " << bounds.gc.hi << "]";
        report.failures.push_back(oss.str());
    }
    if (!report.lc_in_bounds) {
        oss.str("");
        oss << "LC " << report.lc << " outside [" << bounds.lc.lo << ", " << bounds.lc.hi << "]";
        report.failures.push_back(oss.str());
    }
    if (!report.volume_in_bounds) {
        oss.str("");
        oss << "volume " << report.volume << " outside [" << bounds.volume.lo << ", "
            << bounds.volume.hi << "]";
        report.failures.push_back(oss.str());
    }
    report.passed = report.failures.empty();
    return report;
}

TriMesh run_recipe(const TemplateAsset& asset, const GenerationRecipe& recipe) {
    TriMesh mesh = asset.mesh;
    mesh.vertices = interpolate_shape_types(asset, recipe.shape_mix);
    mesh = apply_jitter(asset, mesh, recipe.jitter);
    mesh = insufflate(mesh, recipe.insufflation_offset_mm);
    mesh = enforce_dimensions(mesh, asset, recipe.target_gc, recipe.target_lc,
                              recipe.target_volume);
    return mesh;
}

namespace {

// Secant solve on one extra body bend so the finished mesh lands on the
// sampled LC target; the solved entry is recorded in the recipe, which keeps
// every recipe an exact, rerunnable description of its mesh.
constexpr const char* kBendJoint = "body_mid";
constexpr double kBendLimit = 0.6;  // rad

double pipeline_lc(const TemplateAsset& asset, GenerationRecipe recipe, double bend) {
    recipe.jitter.push_back({kBendJoint, Vec3(0, 1, 0), bend, 1.0});
    // run without the LC tolerance gate: measure what comes out
    TriMesh mesh = asset.mesh;
    mesh.vertices = interpolate_shape_types(asset, recipe.shape_mix);
    try {
        mesh = apply_jitter(asset, mesh, recipe.jitter);
        mesh = insufflate(mesh, recipe.insufflation_offset_mm);
        mesh = enforce_gc_volume(mesh, asset, recipe.target_gc, recipe.target_volume);
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return polyline_length(mesh, asset.lc_chain);
}

GenerationRecipe sample_recipe(const TemplateAsset& asset, const GenerationBounds& bounds,
                               Rng& rng) {
    GenerationRecipe recipe;
    // uniform over the simplex
    double total = 0.0;
    for (double& w : recipe.shape_mix) {
        w = -std::log(std::max(rng.uniform(), 1e-300));
        total += w;
    }
    for (double& w : recipe.shape_mix) w /= total;

    recipe.jitter = sample_jitter(bounds.jitter_ranges, rng);
    recipe.insufflation_offset_mm = rng.uniform(bounds.insufflation.lo, bounds.insufflation.hi);
    recipe.target_gc = rng.uniform(bounds.gc.lo, bounds.gc.hi);
    recipe.target_lc = rng.uniform(bounds.lc.lo, bounds.lc.hi);
    recipe.target_volume = rng.uniform(bounds.volume.lo, bounds.volume.hi);

    // solve the body bend for the LC target
    double b0 = 0.0, b1 = 0.25;
    double f0 = pipeline_lc(asset, recipe, b0) - recipe.target_lc;
    double f1 = pipeline_lc(asset, recipe, b1) - recipe.target_lc;
    double bend = b0;
    if (std::isfinite(f0) && std::abs(f0) > 0.02 * recipe.target_lc) {
        for (int it = 0; it < 6 && std::isfinite(f1); ++it) {
            if (std::abs(f1 - f0) < 1e-9) break;
            const double next = std::clamp(b1 - f1 * (b1 - b0) / (f1 - f0), -kBendLimit, kBendLimit);
            b0 = b1;
            f0 = f1;
            b1 = next;
            f1 = pipeline_lc(asset, recipe, b1) - recipe.target_lc;
            if (std::abs(f1) <= 0.02 * recipe.target_lc) break;
        }
        bend = (std::isfinite(f1) && std::abs(f1) < std::abs(f0)) ? b1 : b0;
    }
    if (bend != 0.0) recipe.jitter.push_back({kBendJoint, Vec3(0, 1, 0), bend, 1.0});
    return recipe;
}

} // namespace

std::vector<GeneratedSample> generate_dataset(const TemplateAsset& asset, int n,
                                              const GenerationBounds& bounds,
                                              std::uint64_t rng_seed) {
    if (n < 1) throw Error("generate_dataset: n must be >= 1");
    std::vector<GeneratedSample> samples(static_cast<std::size_t>(n));
    std::atomic<int> rejected{0};
    constexpr int kMaxTries = 24;

    parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
        Rng rng = Rng::child(rng_seed, i);
        for (int attempt = 0; attempt < kMaxTries; ++attempt) {
            GenerationRecipe recipe = sample_recipe(asset, bounds, rng);
            recipe.rng_seed = rng_seed;
            TriMesh mesh;
            try {
                mesh = run_recipe(asset, recipe);
            } catch (const Error&) {
                rejected.fetch_add(1);
                continue;
            }
            ValidationReport report = validate_mesh(mesh, asset, bounds);
            if (!report.passed) {
                rejected.fetch_add(1);
                continue;
            }
            samples[i].mesh = std::move(mesh);
            samples[i].recipe = std::move(recipe);
            samples[i].report = std::move(report);
            return;
        }
        throw Error("generate_dataset: could not produce a valid mesh after " +
                    std::to_string(kMaxTries) + " attempts; revise the bounds");
    });

    const int r = rejected.load();
    if (r > 0 && static_cast<double>(r) / (n + r) > 0.10) {
        std::ostringstream msg;
        msg << "generate_dataset: validation rejected " << r << " of " << (n + r)
            << " candidates (>10%); the configured bounds look too tight";
        throw Error(msg.str());
    }
    return samples;
}

// -------------------------------------------------------------------- I/O

namespace {

nlohmann::json jitter_to_json(const std::vector<JitterEntry>& jitter) {
    nlohmann::json arr = nlohmann::json::array();
    for (const JitterEntry& e : jitter) {
        arr.push_back({{"joint", e.joint},
                       {"axis", {e.axis.x(), e.axis.y(), e.axis.z()}},
                       {"angle_rad", e.angle_rad},
                       {"scale", e.scale}});
    }
    return arr;
}

std::vector<JitterEntry> jitter_from_json(const nlohmann::json& arr) {
    std::vector<JitterEntry> jitter;
    for (const auto& j : arr) {
        JitterEntry e;
        e.joint = j.at("joint").get<std::string>();
        e.axis = Vec3(j.at("axis").at(0).get<double>(), j.at("axis").at(1).get<double>(),
                      j.at("axis").at(2).get<double>());
        e.angle_rad = j.at("angle_rad").get<double>();
        e.scale = j.at("scale").get<double>();
        jitter.push_back(e);
    }
    return jitter;
}

} // namespace

void save_recipe(const GenerationRecipe& recipe, const std::string& path) {
    nlohmann::json j;
    j["shape_mix"] = recipe.shape_mix;
    j["jitter"] = jitter_to_json(recipe.jitter);
    j["insufflation_offset_mm"] = recipe.insufflation_offset_mm;
    j["target_gc_mm"] = recipe.target_gc;
    j["target_lc_mm"] = recipe.target_lc;
    j["target_volume_mm3"] = recipe.target_volume;
    j["rng_seed"] = recipe.rng_seed;
    std::ofstream f(path);
    if (!f) throw Error("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
}

GenerationRecipe load_recipe(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open recipe: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": invalid JSON (" + e.what() + ")", -1, -1);
    }
    GenerationRecipe recipe;
    const auto mix = j.at("shape_mix").get<std::vector<double>>();
    if (mix.size() != 4) throw ParseError(path + ": shape_mix must have 4 entries", -1, -1);
    std::copy(mix.begin(), mix.end(), recipe.shape_mix.begin());
    recipe.jitter = jitter_from_json(j.at("jitter"));
    recipe.insufflation_offset_mm = j.at("insufflation_offset_mm").get<double>();
    recipe.target_gc = j.at("target_gc_mm").get<double>();
    recipe.target_lc = j.at("target_lc_mm").get<double>();
    recipe.target_volume = j.at("target_volume_mm3").get<double>();
    recipe.rng_seed = j.value("rng_seed", std::uint64_t{0});
    return recipe;
}

void save_bounds(const GenerationBounds& bounds, const std::string& path) {
    nlohmann::json j;
    j["gc_mm"] = {bounds.gc.lo, bounds.gc.hi};
    j["lc_mm"] = {bounds.lc.lo, bounds.lc.hi};
    j["volume_mm3"] = {bounds.volume.lo, bounds.volume.hi};
    j["insufflation_mm"] = {bounds.insufflation.lo, bounds.insufflation.hi};
    nlohmann::json ranges = nlohmann::json::array();
    for (const JitterRange& r : bounds.jitter_ranges) {
        ranges.push_back({{"joint", r.joint},
                          {"axis", {r.axis.x(), r.axis.y(), r.axis.z()}},
                          {"angle_rad", {r.angle_min, r.angle_max}},
                          {"scale", {r.scale_min, r.scale_max}}});
    }
    j["jitter_ranges"] = ranges;
    std::ofstream f(path);
    if (!f) throw Error("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
}

GenerationBounds load_bounds(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open bounds file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": invalid JSON (" + e.what() + ")", -1, -1);
    }
    GenerationBounds bounds = GenerationBounds::defaults();
    auto range = [&](const char* key, AttributeRange& r) {
        if (!j.contains(key)) return;
        r.lo = j[key].at(0).get<double>();
        r.hi = j[key].at(1).get<double>();
        if (r.hi < r.lo) throw ParseError(path + ": range " + key + " is inverted", -1, -1);
    };
    range("gc_mm", bounds.gc);
    range("lc_mm", bounds.lc);
    range("volume_mm3", bounds.volume);
    range("insufflation_mm", bounds.insufflation);
    if (j.contains("jitter_ranges")) {
        bounds.jitter_ranges.clear();
        for (const auto& r : j["jitter_ranges"]) {
            JitterRange jr;
            jr.joint = r.at("joint").get<std::string>();
            jr.axis = Vec3(r.at("axis").at(0).get<double>(), r.at("axis").at(1).get<double>(),
                           r.at("axis").at(2).get<double>());
            jr.angle_min = r.at("angle_rad").at(0).get<double>();
            jr.angle_max = r.at("angle_rad").at(1).get<double>();
            jr.scale_min = r.at("scale").at(0).get<double>();
            jr.scale_max = r.at("scale").at(1).get<double>();
            bounds.jitter_ranges.push_back(jr);
        }
    }
    return bounds;
}

} // namespace gastro
