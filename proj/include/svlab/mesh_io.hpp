#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "svlab/mesh.hpp"

namespace svlab {

// Text format:
//   svmesh v1
//   vertices <V>      followed by V lines "x y"
//   cells <C>         followed by C lines "i j k" (0-based, counterclockwise)
//   macro_parents <C> optional, followed by C integer lines
// Coordinates are written in shortest round-trip decimal form.

Mesh2D read_mesh(std::istream& in);
Mesh2D read_mesh(const std::filesystem::path& path);
void write_mesh(std::ostream& out, const Mesh2D& mesh);
void write_mesh(const Mesh2D& mesh, const std::filesystem::path& path);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace svlab
