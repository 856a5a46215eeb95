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
#include "gastro/shape_model.hpp"

#include <filesystem>
#include <fstream>

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "gastro/errors.hpp"
#include "gastro/version.hpp"

namespace gastro {

Eigen::VectorXd flatten_vertices(const std::vector<Vec3>& vertices) {
    Eigen::VectorXd flat(3 * vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) flat.segment<3>(3 * i) = vertices[i];
    return flat;
}

std::vector<Vec3> unflatten_vertices(const Eigen::VectorXd& flat) {
    if (flat.size() % 3 != 0) throw Error("flat vertex array length must be divisible by 3");
    std::vector<Vec3> vertices(static_cast<std::size_t>(flat.size() / 3));
    for (std::size_t i = 0; i < vertices.size(); ++i) vertices[i] = flat.segment<3>(3 * i);
    return vertices;
}

void ShapeModel::check_valid() const {
    const auto m = basis.cols();
    if (variances.size() != m) throw Error("ShapeModel: variances/basis size mismatch");
    if (basis.rows() != template_vertices.size())
        throw Error("ShapeModel: basis row count != 3V");
    if (m > 0) {
        const Eigen::MatrixXd gram = basis.transpose() * basis;
        if ((gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-8)
            throw Error("ShapeModel: basis columns are not orthonormal");
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        if (variances[i] < 0.0) throw Error("ShapeModel: negative variance");
        if (i > 0 && variances[i] > variances[i - 1] + 1e-12)
            throw Error("ShapeModel: variances not descending");
    }
    if (provenance.training_count > 0 &&
        m > std::min<Eigen::Index>(template_vertices.size(), provenance.training_count - 1))
        throw Error("ShapeModel: more components than the training data supports");
}

ShapeModel ShapeModel::truncated(int k) const {
    if (k < 0 || k > component_count())
        throw Error("ShapeModel::truncated: k out of range");
    ShapeModel out = *this;
    out.basis = basis.leftCols(k);
    out.variances = variances.head(k);
    return out;
}

ShapeModel fit_pca(const std::vector<Eigen::VectorXd>& samples,
                   const std::vector<double>& weights, int m,
                   std::vector<std::string>* warnings) {
    if (samples.size() < 2) throw Error("fit_pca needs at least 2 samples");
    if (weights.size() != samples.size())
        throw Error("fit_pca: one weight per sample required");
    const Eigen::Index dim = samples[0].size();
    for (const auto& s : samples)
        if (s.size() != dim) throw Error("fit_pca: samples have mismatched lengths");
    double weight_sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw Error("fit_pca: weights must be nonnegative");
        weight_sum += w;
    }
    if (weight_sum <= 0.0) throw Error("fit_pca: weights must sum to a positive value");
    if (m < 0) throw Error("fit_pca: m must be nonnegative");

    const auto n = static_cast<Eigen::Index>(samples.size());
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index i = 0; i < n; ++i) mean += (weights[i] / weight_sum) * samples[i];

    Eigen::MatrixXd data(dim, n);
    for (Eigen::Index i = 0; i < n; ++i)
        data.col(i) = std::sqrt(weights[i] / weight_sum) * (samples[i] - mean);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(data, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    const double tol = std::max(sigma.size() > 0 ? sigma[0] : 0.0, 1e-300) * 1e-10;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma[i] > tol) ++rank;

    int m_eff = std::min(m, rank);
    if (m > rank && warnings)
        warnings->push_back("fit_pca: requested " + std::to_string(m) +
                            " components but data rank is " + std::to_string(rank) +
                            "; truncated");

    ShapeModel model;
    model.template_vertices = mean;
    model.basis = svd.matrixU().leftCols(m_eff);
    model.variances.resize(m_eff);
    for (int i = 0; i < m_eff; ++i) model.variances[i] = sigma[i] * sigma[i];

    // canonical sign: the largest-magnitude entry of each component is positive
    for (int c = 0; c < m_eff; ++c) {
        Eigen::Index argmax = 0;
        model.basis.col(c).cwiseAbs().maxCoeff(&argmax);
        if (model.basis(argmax, c) < 0.0) model.basis.col(c) = -model.basis.col(c);
    }

    model.provenance.training_count = static_cast<int>(n);
    model.provenance.requested_components = m;
    model.provenance.rank = rank;
    model.check_valid();
    return model;
}

namespace {

Eigen::Matrix3d rotation_from_axis_angle(const Vec3& rotation) {
    const double angle = rotation.norm();
    if (angle < 1e-300) return Eigen::Matrix3d::Identity();
    return Eigen::AngleAxisd(angle, rotation / angle).toRotationMatrix();
}

} // namespace

std::vector<Vec3> decode(const ShapeModel& model, const PoseParams& pose) {
    if (pose.beta.size() != model.component_count())
        throw Error("decode: beta length does not match the model");
    Eigen::VectorXd shaped = model.template_vertices;
    if (model.component_count() > 0) shaped += model.basis * pose.beta;
    const Eigen::Matrix3d r = rotation_from_axis_angle(pose.rotation);
    std::vector<Vec3> out(static_cast<std::size_t>(shaped.size() / 3));
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = r * Vec3(shaped.segment<3>(3 * i)) + pose.translation;
    return out;
}

TriMesh decode_mesh(const ShapeModel& model, const PoseParams& pose) {
    TriMesh mesh;
    mesh.vertices = decode(model, pose);
    mesh.triangles = model.triangles;
    if (!model.landmarks.empty()) mesh.landmark_bindings = model.landmarks;
    return mesh;
}

Eigen::VectorXd project(const ShapeModel& model, const std::vector<Vec3>& vertices) {
    if (static_cast<int>(vertices.size()) != model.vertex_count())
        throw Error("project: vertex count does not match the model");
    const Eigen::VectorXd centered = flatten_vertices(vertices) - model.template_vertices;
    return model.basis.transpose() * centered;
}

double mahalanobis_sq(const ShapeModel& model, const Eigen::VectorXd& beta) {
    if (beta.size() != model.component_count())
        throw Error("mahalanobis_sq: beta length does not match the model");
    if (beta.size() == 0) return 0.0;
    const double lead = model.variances.size() > 0 ? model.variances[0] : 0.0;
    const double eps = std::max(lead * 1e-12, 1e-300);
    double total = 0.0;
    for (Eigen::Index i = 0; i < beta.size(); ++i)
        total += beta[i] * beta[i] / std::max(model.variances[i], eps);
    return total;
}

PoseParams sample(const ShapeModel& model, Rng& rng, double sigma_clip) {
    if (model.component_count() < 1) throw Error("sample: model has no components");
    PoseParams pose;
    pose.beta.resize(model.component_count());
    for (int i = 0; i < model.component_count(); ++i) {
        const double sd = std::sqrt(std::max(model.variances[i], 0.0));
        double b = rng.normal() * sd;
        b = std::clamp(b, -sigma_clip * sd, sigma_clip * sd);
        pose.beta[i] = b;
    }
    return pose;
}

double cumulative_variance(const ShapeModel& model, int k) {
    if (k < 1 || k > model.component_count())
        throw Error("cumulative_variance: k out of range");
    const double total = model.variances.sum();
    if (total <= 0.0) return 1.0;
    return model.variances.head(k).sum() / total;
}

// --------------------------------------------------------------------- I/O

namespace {

std::string strip_model_suffix(const std::string& path) {
    for (const char* suffix : {".ssm.json", ".ssm.bin", ".ssm"}) {
        const std::string s(suffix);
        if (path.size() > s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0)
            return path.substr(0, path.size() - s.size());
    }
    return path;
}

void write_doubles(std::ofstream& f, const double* data, std::size_t count) {
    f.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(double)));
}

void read_doubles(std::ifstream& f, double* data, std::size_t count, const std::string& path) {
    if (!f.read(reinterpret_cast<char*>(data),
                static_cast<std::streamsize>(count * sizeof(double))))
        throw ParseError(path + ": binary payload shorter than the manifest declares", -1,
                         static_cast<long long>(f.gcount()));
}

} // namespace

void save_model(const ShapeModel& model, const std::string& path) {
    const std::string stem = strip_model_suffix(path);
    const int v = model.vertex_count();
    const int m = model.component_count();

    nlohmann::json j;
    j["format"] = "gastroshape-ssm";
    j["version"] = 1;
    j["tool_version"] = kVersion;
    j["vertex_count"] = v;
    j["component_count"] = m;
    j["layout"] = {{"order", "template, basis column-major, variances"},
                   {"scalar", "float64 little-endian"}};
    nlohmann::json tris = nlohmann::json::array();
    for (const Triangle& t : model.triangles) tris.push_back({t[0], t[1], t[2]});
    j["triangles"] = tris;
    if (!model.landmarks.empty()) {
        for (const auto& [name, value] : model.landmarks.entries())
            j["landmarks"][name] = std::get<std::int32_t>(value);
    }
    j["provenance"] = {{"training_count", model.provenance.training_count},
                       {"real_count", model.provenance.real_count},
                       {"real_weight", model.provenance.real_weight},
                       {"seed", model.provenance.seed},
                       {"requested_components", model.provenance.requested_components},
                       {"rank", model.provenance.rank},
                       {"dataset_hash", model.provenance.dataset_hash}};
    std::ofstream jf(stem + ".ssm.json");
    if (!jf) throw Error("cannot open for writing: " + stem + ".ssm.json");
    jf << j.dump(2) << "\n";

    std::ofstream bf(stem + ".ssm.bin", std::ios::binary);
    if (!bf) throw Error("cannot open for writing: " + stem + ".ssm.bin");
    write_doubles(bf, model.template_vertices.data(),
                  static_cast<std::size_t>(model.template_vertices.size()));
    write_doubles(bf, model.basis.data(), static_cast<std::size_t>(model.basis.size()));
    write_doubles(bf, model.variances.data(), static_cast<std::size_t>(model.variances.size()));
}

ShapeModel load_model(const std::string& path) {
    const std::string stem = strip_model_suffix(path);
    std::ifstream jf(stem + ".ssm.json");
    if (!jf) throw Error("cannot open model manifest: " + stem + ".ssm.json");
    nlohmann::json j;
    try {
        jf >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(stem + ".ssm.json: invalid JSON (" + e.what() + ")", -1, -1);
    }
    ShapeModel model;
    const int v = j.at("vertex_count").get<int>();
    const int m = j.at("component_count").get<int>();
    for (const auto& t : j.at("triangles"))
        model.triangles.push_back(
            {t.at(0).get<std::int32_t>(), t.at(1).get<std::int32_t>(), t.at(2).get<std::int32_t>()});
    if (j.contains("landmarks"))
        for (const auto& [name, idx] : j["landmarks"].items())
            model.landmarks.set_vertex(name, idx.get<std::int32_t>());
    if (j.contains("provenance")) {
        const auto& p = j["provenance"];
        model.provenance.training_count = p.value("training_count", 0);
        model.provenance.real_count = p.value("real_count", 0);
        model.provenance.real_weight = p.value("real_weight", 1.0);
        model.provenance.seed = p.value("seed", std::uint64_t{0});
        model.provenance.requested_components = p.value("requested_components", 0);
        model.provenance.rank = p.value("rank", 0);
        model.provenance.dataset_hash = p.value("dataset_hash", std::string());
    }

    std::ifstream bf(stem + ".ssm.bin", std::ios::binary);
    if (!bf) throw Error("cannot open model payload: " + stem + ".ssm.bin");
    model.template_vertices.resize(3 * v);
    read_doubles(bf, model.template_vertices.data(), static_cast<std::size_t>(3) * v,
                 stem + ".ssm.bin");
    model.basis.resize(3 * v, m);
    read_doubles(bf, model.basis.data(), static_cast<std::size_t>(3) * v * m, stem + ".ssm.bin");
    model.variances.resize(m);
    read_doubles(bf, model.variances.data(), static_cast<std::size_t>(m), stem + ".ssm.bin");
    model.check_valid();
    return model;
}

} // namespace gastro
