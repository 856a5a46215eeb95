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
#include "gastro/mesh_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gastro/errors.hpp"

namespace gastro {

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary PLY/raw I/O assumes a little-endian host");

std::string lowercase_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

void format_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

// ---------------------------------------------------------------- OBJ ----

TriMesh load_obj(std::istream& in, const std::string& path,
                 std::vector<std::string>* warnings) {
    TriMesh mesh;
    std::string line;
    long long line_no = 0;
    bool warned_quads = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z))
                throw ParseError(path + ": malformed vertex record at line " +
                                     std::to_string(line_no),
                                 line_no, -1);
            mesh.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<std::int32_t> face;
            std::string token;
            while (ls >> token) {
                // take the vertex index before any '/'
                const auto slash = token.find('/');
                const std::string head = slash == std::string::npos ? token : token.substr(0, slash);
                long idx = 0;
                try {
                    idx = std::stol(head);
                } catch (const std::exception&) {
                    throw ParseError(path + ": malformed face index '" + token +
                                         "' at line " + std::to_string(line_no),
                                     line_no, -1);
                }
                if (idx < 0) idx = static_cast<long>(mesh.vertices.size()) + 1 + idx;
                if (idx < 1 || idx > static_cast<long>(mesh.vertices.size()))
                    throw ParseError(path + ": face index out of range at line " +
                                         std::to_string(line_no),
                                     line_no, -1);
                face.push_back(static_cast<std::int32_t>(idx - 1));
            }
            if (face.size() < 3)
                throw ParseError(path + ": face with fewer than 3 vertices at line " +
                                     std::to_string(line_no),
                                 line_no, -1);
            if (face.size() > 4)
                throw ParseError(path + ": polygon with " + std::to_string(face.size()) +
                                     " sides rejected (only triangles and quads) at line " +
                                     std::to_string(line_no),
                                 line_no, -1);
            if (face.size() == 3) {
                mesh.triangles.push_back({face[0], face[1], face[2]});
            } else {
                if (!warned_quads && warnings) {
                    warnings->push_back(path + ": quad faces fan-triangulated");
                    warned_quads = true;
                }
                mesh.triangles.push_back({face[0], face[1], face[2]});
                mesh.triangles.push_back({face[0], face[2], face[3]});
            }
        }
        // all other records (vn, vt, usemtl, o, g, s, ...) are ignored
    }
    return mesh;
}

void save_obj(const TriMesh& mesh, const std::string& path) {
    std::string out;
    out.reserve(mesh.vertices.size() * 64 + mesh.triangles.size() * 32);
    for (const Vec3& v : mesh.vertices) {
        out += "v ";
        format_double(out, v.x());
        out += ' ';
        format_double(out, v.y());
        out += ' ';
        format_double(out, v.z());
        out += '\n';
    }
    for (const Triangle& t : mesh.triangles) {
        out += "f ";
        out += std::to_string(t[0] + 1);
        out += ' ';
        out += std::to_string(t[1] + 1);
        out += ' ';
        out += std::to_string(t[2] + 1);
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

// ---------------------------------------------------------------- PLY ----

enum class PlyType { i8, u8, i16, u16, i32, u32, f32, f64 };

int ply_type_size(PlyType t) {
    switch (t) {
        case PlyType::i8:
        case PlyType::u8: return 1;
        case PlyType::i16:
        case PlyType::u16: return 2;
        case PlyType::i32:
        case PlyType::u32:
        case PlyType::f32: return 4;
        case PlyType::f64: return 8;
    }
    return 0;
}

PlyType parse_ply_type(const std::string& s, const std::string& path, long long line_no) {
    if (s == "char" || s == "int8") return PlyType::i8;
    if (s == "uchar" || s == "uint8") return PlyType::u8;
    if (s == "short" || s == "int16") return PlyType::i16;
    if (s == "ushort" || s == "uint16") return PlyType::u16;
    if (s == "int" || s == "int32") return PlyType::i32;
    if (s == "uint" || s == "uint32") return PlyType::u32;
    if (s == "float" || s == "float32") return PlyType::f32;
    if (s == "double" || s == "float64") return PlyType::f64;
    throw ParseError(path + ": unknown PLY type '" + s + "'", line_no, -1);
}

struct PlyProperty {
    std::string name;
    bool is_list = false;
    PlyType count_type = PlyType::u8;
    PlyType value_type = PlyType::f64;
};

struct PlyElement {
    std::string name;
    long long count = 0;
    std::vector<PlyProperty> properties;
};

double read_binary_scalar(std::istream& in, PlyType t, const std::string& path,
                          long long& offset) {
    unsigned char buf[8];
    const int n = ply_type_size(t);
    if (!in.read(reinterpret_cast<char*>(buf), n))
        throw ParseError(path + ": unexpected end of binary data at byte " +
                             std::to_string(offset),
                         -1, offset);
    offset += n;
    switch (t) {
        case PlyType::i8: return static_cast<double>(static_cast<signed char>(buf[0]));
        case PlyType::u8: return static_cast<double>(buf[0]);
        case PlyType::i16: {
            std::int16_t v;
            std::memcpy(&v, buf, 2);
            return v;
        }
        case PlyType::u16: {
            std::uint16_t v;
            std::memcpy(&v, buf, 2);
            return v;
        }
        case PlyType::i32: {
            std::int32_t v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyType::u32: {
            std::uint32_t v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyType::f32: {
            float v;
            std::memcpy(&v, buf, 4);
            return v;
        }
        case PlyType::f64: {
            double v;
            std::memcpy(&v, buf, 8);
            return v;
        }
    }
    return 0.0;
}

double read_ascii_scalar(std::istream& in, const std::string& path, long long line_no) {
    double v;
    if (!(in >> v))
        throw ParseError(path + ": unexpected end of ascii data near line " +
                             std::to_string(line_no),
                         line_no, -1);
    return v;
}

TriMesh load_ply(std::istream& in, const std::string& path,
                 std::vector<std::string>* warnings) {
    std::string line;
    long long line_no = 0;
    auto next_line = [&]() {
        if (!std::getline(in, line))
            throw ParseError(path + ": truncated PLY header", line_no, -1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;
    };

    next_line();
    if (line != "ply") throw ParseError(path + ": missing 'ply' magic", line_no, -1);

    bool binary = false;
    std::vector<PlyElement> elements;
    for (;;) {
        next_line();
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "comment" || tag == "obj_info" || tag.empty()) continue;
        if (tag == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt == "ascii") {
                binary = false;
            } else if (fmt == "binary_little_endian") {
                binary = true;
            } else {
                throw ParseError(path + ": unsupported PLY format '" + fmt + "'", line_no, -1);
            }
        } else if (tag == "element") {
            PlyElement el;
            if (!(ls >> el.name >> el.count))
                throw ParseError(path + ": malformed element line", line_no, -1);
            elements.push_back(el);
        } else if (tag == "property") {
            if (elements.empty())
                throw ParseError(path + ": property before any element", line_no, -1);
            PlyProperty prop;
            std::string t1;
            ls >> t1;
            if (t1 == "list") {
                std::string ct, vt;
                ls >> ct >> vt >> prop.name;
                prop.is_list = true;
                prop.count_type = parse_ply_type(ct, path, line_no);
                prop.value_type = parse_ply_type(vt, path, line_no);
            } else {
                prop.value_type = parse_ply_type(t1, path, line_no);
                ls >> prop.name;
            }
            elements.back().properties.push_back(prop);
        } else if (tag == "end_header") {
            break;
        } else {
            throw ParseError(path + ": unknown header keyword '" + tag + "'", line_no, -1);
        }
    }

    TriMesh mesh;
    long long offset = 0;
    for (const PlyElement& el : elements) {
        const bool is_vertex = el.name == "vertex";
        const bool is_face = el.name == "face";
        int ix = -1, iy = -1, iz = -1, iface = -1;
        if (is_vertex) {
            for (std::size_t p = 0; p < el.properties.size(); ++p) {
                if (el.properties[p].name == "x") ix = static_cast<int>(p);
                if (el.properties[p].name == "y") iy = static_cast<int>(p);
                if (el.properties[p].name == "z") iz = static_cast<int>(p);
            }
            if (ix < 0 || iy < 0 || iz < 0)
                throw ParseError(path + ": vertex element lacks x/y/z properties", line_no, -1);
            mesh.vertices.reserve(static_cast<std::size_t>(el.count));
        }
        if (is_face) {
            for (std::size_t p = 0; p < el.properties.size(); ++p) {
                const auto& name = el.properties[p].name;
                if (el.properties[p].is_list &&
                    (name == "vertex_indices" || name == "vertex_index"))
                    iface = static_cast<int>(p);
            }
            if (iface < 0 && el.count > 0)
                throw ParseError(path + ": face element lacks vertex_indices list", line_no, -1);
            mesh.triangles.reserve(static_cast<std::size_t>(el.count));
        }

        for (long long i = 0; i < el.count; ++i) {
            Vec3 v = Vec3::Zero();
            for (std::size_t p = 0; p < el.properties.size(); ++p) {
                const PlyProperty& prop = el.properties[p];
                if (!prop.is_list) {
                    const double value = binary
                                             ? read_binary_scalar(in, prop.value_type, path, offset)
                                             : read_ascii_scalar(in, path, line_no);
                    if (is_vertex) {
                        if (static_cast<int>(p) == ix) v.x() = value;
                        if (static_cast<int>(p) == iy) v.y() = value;
                        if (static_cast<int>(p) == iz) v.z() = value;
                    }
                    continue;
                }
                const double count_d =
                    binary ? read_binary_scalar(in, prop.count_type, path, offset)
                           : read_ascii_scalar(in, path, line_no);
                const int count = static_cast<int>(count_d);
                std::vector<std::int32_t> face;
                for (int k = 0; k < count; ++k) {
                    const double value =
                        binary ? read_binary_scalar(in, prop.value_type, path, offset)
                               : read_ascii_scalar(in, path, line_no);
                    face.push_back(static_cast<std::int32_t>(value));
                }
                if (is_face && static_cast<int>(p) == iface) {
                    if (count < 3)
                        throw ParseError(path + ": face with fewer than 3 vertices",
                                         line_no, offset);
                    if (count > 4)
                        throw ParseError(path + ": polygon with " + std::to_string(count) +
                                             " sides rejected (only triangles and quads)",
                                         line_no, offset);
                    mesh.triangles.push_back({face[0], face[1], face[2]});
                    if (count == 4) {
                        if (warnings) warnings->push_back(path + ": quad faces fan-triangulated");
                        mesh.triangles.push_back({face[0], face[2], face[3]});
                    }
                }
            }
            if (is_vertex) mesh.vertices.push_back(v);
        }
    }

    const auto nv = static_cast<std::int32_t>(mesh.vertices.size());
    for (const Triangle& t : mesh.triangles)
        for (int k = 0; k < 3; ++k)
            if (t[k] < 0 || t[k] >= nv)
                throw ParseError(path + ": face index out of range", -1, offset);
    return mesh;
}

void write_ply(const TriMesh& mesh, const std::string& path, bool binary,
               const std::vector<double>* scalar, const std::string& scalar_name) {
    if (scalar && scalar->size() != mesh.vertices.size())
        throw Error("per-vertex scalar size mismatch when writing " + path);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    std::ostringstream header;
    header << "ply\n"
           << (binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n")
           << "element vertex " << mesh.vertices.size() << "\n"
           << "property double x\nproperty double y\nproperty double z\n";
    if (scalar) header << "property double " << scalar_name << "\n";
    header << "element face " << mesh.triangles.size() << "\n"
           << "property list uchar int vertex_indices\n"
           << "end_header\n";
    const std::string h = header.str();
    f.write(h.data(), static_cast<std::streamsize>(h.size()));

    if (binary) {
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
            double xyz[3] = {mesh.vertices[i].x(), mesh.vertices[i].y(), mesh.vertices[i].z()};
            f.write(reinterpret_cast<const char*>(xyz), 24);
            if (scalar) {
                const double q = (*scalar)[i];
                f.write(reinterpret_cast<const char*>(&q), 8);
            }
        }
        for (const Triangle& t : mesh.triangles) {
            const unsigned char n = 3;
            f.write(reinterpret_cast<const char*>(&n), 1);
            std::int32_t idx[3] = {t[0], t[1], t[2]};
            f.write(reinterpret_cast<const char*>(idx), 12);
        }
    } else {
        std::string out;
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
            format_double(out, mesh.vertices[i].x());
            out += ' ';
            format_double(out, mesh.vertices[i].y());
            out += ' ';
            format_double(out, mesh.vertices[i].z());
            if (scalar) {
                out += ' ';
                format_double(out, (*scalar)[i]);
            }
            out += '\n';
        }
        for (const Triangle& t : mesh.triangles) {
            out += "3 ";
            out += std::to_string(t[0]);
            out += ' ';
            out += std::to_string(t[1]);
            out += ' ';
            out += std::to_string(t[2]);
            out += '\n';
        }
        f.write(out.data(), static_cast<std::streamsize>(out.size()));
    }
    if (!f) throw Error("write failed: " + path);
}

} // namespace

TriMesh load_mesh(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open mesh file: " + path);
    // sniff: PLY files start with the magic regardless of extension
    char magic[3] = {0, 0, 0};
    f.read(magic, 3);
    f.seekg(0);
    TriMesh mesh;
    if (magic[0] == 'p' && magic[1] == 'l' && magic[2] == 'y') {
        mesh = load_ply(f, path, warnings);
    } else {
        mesh = load_obj(f, path, warnings);
    }
    mesh.check_valid();
    return mesh;
}

void save_mesh(const TriMesh& mesh, const std::string& path, MeshFormat format) {
    if (format == MeshFormat::auto_detect)
        format = lowercase_ext(path) == "obj" ? MeshFormat::obj : MeshFormat::ply_binary;
    switch (format) {
        case MeshFormat::obj: save_obj(mesh, path); break;
        case MeshFormat::ply_ascii: write_ply(mesh, path, false, nullptr, ""); break;
        case MeshFormat::ply_binary: write_ply(mesh, path, true, nullptr, ""); break;
        case MeshFormat::auto_detect: break;
    }
}

void save_mesh_with_scalar(const TriMesh& mesh, const std::string& path,
                           const std::vector<double>& scalar,
                           const std::string& property_name, MeshFormat format) {
    if (format == MeshFormat::auto_detect) format = MeshFormat::ply_binary;
    if (format == MeshFormat::obj) throw Error("per-vertex scalars require PLY output");
    write_ply(mesh, path, format == MeshFormat::ply_binary, &scalar, property_name);
}

LandmarkSet load_landmarks(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open landmark file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": invalid JSON (" + e.what() + ")", -1, -1);
    }
    if (!j.contains("binding") || !j.contains("landmarks"))
        throw ParseError(path + ": landmark file needs 'binding' and 'landmarks' fields", -1, -1);
    const std::string binding = j["binding"].get<std::string>();
    if (binding != "vertex" && binding != "point")
        throw ParseError(path + ": binding must be 'vertex' or 'point'", -1, -1);
    LandmarkSet set;
    for (const auto& [name, value] : j["landmarks"].items()) {
        if (binding == "vertex") {
            set.set_vertex(name, value.get<std::int32_t>());
        } else {
            if (!value.is_array() || value.size() != 3)
                throw ParseError(path + ": point landmark '" + name + "' must be [x,y,z]", -1, -1);
            set.set_point(name, Vec3(value[0].get<double>(), value[1].get<double>(),
                                     value[2].get<double>()));
        }
    }
    return set;
}

void save_landmarks(const LandmarkSet& landmarks, const std::string& path) {
    nlohmann::json j;
    if (landmarks.all_vertex_bound() && !landmarks.empty()) {
        j["binding"] = "vertex";
        for (const auto& [name, value] : landmarks.entries())
            j["landmarks"][name] = std::get<std::int32_t>(value);
    } else if (landmarks.all_point_bound()) {
        j["binding"] = "point";
        for (const auto& [name, value] : landmarks.entries()) {
            const Vec3& p = std::get<Vec3>(value);
            j["landmarks"][name] = {p.x(), p.y(), p.z()};
        }
    } else {
        throw Error("cannot save mixed vertex/point landmark set: " + path);
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot open for writing: " + path);
    f << j.dump(2) << "\n";
}

} // namespace gastro
