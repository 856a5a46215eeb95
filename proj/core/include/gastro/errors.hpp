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

#include <stdexcept>
#include <string>

namespace gastro {

/// Base class for all domain errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation that requires a closed mesh was given one with boundary edges.
class OpenMeshError : public Error {
public:
    OpenMeshError(const std::string& what, int boundary_edges)
        : Error(what), boundary_edges(boundary_edges) {}
    int boundary_edges = 0;
};

/// File could not be parsed. Carries the 1-based line (text formats) or the
/// byte offset (binary formats) where parsing stopped.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long long line, long long byte_offset)
        : Error(what), line(line), byte_offset(byte_offset) {}
    long long line = -1;
    long long byte_offset = -1;
};

/// A named landmark violated a precondition (unknown name, out of tolerance, ...).
class LandmarkError : public Error {
public:
    LandmarkError(const std::string& what, std::string landmark)
        : Error(what), landmark(std::move(landmark)) {}
    std::string landmark;
};

/// Dimensional targets could not be met; carries the values actually achieved.
class InfeasibleTargetsError : public Error {
public:
    InfeasibleTargetsError(const std::string& what, double gc, double lc, double volume)
        : Error(what), achieved_gc(gc), achieved_lc(lc), achieved_volume(volume) {}
    double achieved_gc = 0.0;
    double achieved_lc = 0.0;
    double achieved_volume = 0.0;
};

} // namespace gastro
