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
#include "gastro/volume_grid.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "gastro/errors.hpp"

namespace gastro {

namespace {

std::string raw_path_for(const std::string& header_path) {
    // <stem>.volhdr.json -> <stem>.vol.raw
    const std::string suffix = ".volhdr.json";
    if (header_path.size() > suffix.size() &&
        header_path.compare(header_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return header_path.substr(0, header_path.size() - suffix.size()) + ".vol.raw";
    return header_path + ".vol.raw";
}

template <typename T>
void read_raw(std::ifstream& f, std::vector<std::int32_t>& out, std::size_t n,
              const std::string& path) {
    std::vector<T> buf(n);
    if (!f.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(n * sizeof(T))))
        throw ParseError(path + ": raw voxel file shorter than dims require", -1,
                         static_cast<long long>(f.gcount()));
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int32_t>(buf[i]);
}

template <typename T>
void write_raw(std::ofstream& f, const std::vector<std::int32_t>& voxels) {
    std::vector<T> buf(voxels.size());
    for (std::size_t i = 0; i < voxels.size(); ++i) buf[i] = static_cast<T>(voxels[i]);
    f.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(T)));
}

} // namespace

void LabelVolume::check_valid() const {
    if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0)
        throw Error("LabelVolume dims must be positive");
    if (spacing.x() <= 0.0 || spacing.y() <= 0.0 || spacing.z() <= 0.0)
        throw Error("LabelVolume spacing components must be > 0");
    if (voxels.size() != voxel_count())
        throw Error("LabelVolume voxel array length does not equal nx*ny*nz");
}

LabelVolume load_volume(const std::string& header_path) {
    std::ifstream hf(header_path);
    if (!hf) throw Error("cannot open volume header: " + header_path);
    nlohmann::json j;
    try {
        hf >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(header_path + ": invalid JSON (" + e.what() + ")", -1, -1);
    }
    LabelVolume vol;
    try {
        vol.dims = {j.at("dims").at(0).get<int>(), j.at("dims").at(1).get<int>(),
                    j.at("dims").at(2).get<int>()};
        vol.spacing = Vec3(j.at("spacing").at(0).get<double>(),
                           j.at("spacing").at(1).get<double>(),
                           j.at("spacing").at(2).get<double>());
        vol.origin = Vec3(j.at("origin").at(0).get<double>(), j.at("origin").at(1).get<double>(),
                          j.at("origin").at(2).get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(header_path + ": missing or malformed field (" + e.what() + ")", -1, -1);
    }
    const std::string dtype = j.value("dtype", "int32");
    const std::string raw_path = j.contains("raw") ? j["raw"].get<std::string>()
                                                   : raw_path_for(header_path);
    std::ifstream rf(raw_path, std::ios::binary);
    if (!rf) throw Error("cannot open raw voxel file: " + raw_path);
    const std::size_t n = static_cast<std::size_t>(vol.dims[0]) * vol.dims[1] * vol.dims[2];
    if (dtype == "uint8") {
        read_raw<std::uint8_t>(rf, vol.voxels, n, raw_path);
    } else if (dtype == "uint16") {
        read_raw<std::uint16_t>(rf, vol.voxels, n, raw_path);
    } else if (dtype == "int32") {
        read_raw<std::int32_t>(rf, vol.voxels, n, raw_path);
    } else {
        throw ParseError(header_path + ": unsupported dtype '" + dtype + "'", -1, -1);
    }
    vol.check_valid();
    return vol;
}

void save_volume(const LabelVolume& volume, const std::string& header_path,
                 const std::string& dtype) {
    volume.check_valid();
    nlohmann::json j;
    j["dims"] = {volume.dims[0], volume.dims[1], volume.dims[2]};
    j["spacing"] = {volume.spacing.x(), volume.spacing.y(), volume.spacing.z()};
    j["origin"] = {volume.origin.x(), volume.origin.y(), volume.origin.z()};
    j["dtype"] = dtype;
    std::ofstream hf(header_path);
    if (!hf) throw Error("cannot open for writing: " + header_path);
    hf << j.dump(2) << "\n";

    std::ofstream rf(raw_path_for(header_path), std::ios::binary);
    if (!rf) throw Error("cannot open for writing: " + raw_path_for(header_path));
    if (dtype == "uint8") {
        write_raw<std::uint8_t>(rf, volume.voxels);
    } else if (dtype == "uint16") {
        write_raw<std::uint16_t>(rf, volume.voxels);
    } else if (dtype == "int32") {
        write_raw<std::int32_t>(rf, volume.voxels);
    } else {
        throw Error("unsupported dtype '" + dtype + "'");
    }
}

} // namespace gastro
