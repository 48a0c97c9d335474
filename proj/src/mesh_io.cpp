#include "svlab/mesh_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "svlab/error.hpp"

namespace svlab {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank line, tokenized; throws on end of input.
  std::vector<std::string_view> next(const char* expecting) {
    while (std::getline(in_, buffer_)) {
      ++line_;
      auto tokens = split_ws(buffer_);
      if (!tokens.empty()) return tokens;
    }
    throw ParseError(line_ + 1, std::string("unexpected end of file, expected ") + expecting);
  }

  bool at_end() {
    while (true) {
      const int c = in_.peek();
      if (c == std::char_traits<char>::eof()) return true;
      if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
        if (c == '\n') ++line_;
        in_.get();
        continue;
      }
      return false;
    }
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_real(std::string_view tok, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a real number, got '" + std::string(tok) + "'");
  }
  if (!std::isfinite(value)) throw ParseError(line, "non-finite coordinate '" + std::string(tok) + "'");
  return value;
}

std::size_t parse_section(LineReader& reader, std::string_view keyword) {
  auto tokens = reader.next(std::string(keyword).c_str());
  if (tokens.size() != 2 || tokens[0] != keyword) {
    throw ParseError(reader.line(), "expected '" + std::string(keyword) + " <count>'");
  }
  return parse_index(tokens[1], reader.line());
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

Mesh2D read_mesh(std::istream& in) {
  LineReader reader(in);
  auto header = reader.next("header");
  if (header.size() != 2 || header[0] != "svmesh" || header[1] != "v1") {
    throw ParseError(reader.line(), "malformed header, expected 'svmesh v1'");
  }

  const std::size_t nv = parse_section(reader, "vertices");
  std::vector<Point2> vertices;
  vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    auto tokens = reader.next("vertex coordinates");
    if (!tokens.empty() && tokens[0] == "cells") {
      throw ParseError(reader.line(), "vertex block truncated: expected " + std::to_string(nv) + " vertices, found " +
                                          std::to_string(i));
    }
    if (tokens.size() != 2) {
      throw ParseError(reader.line(), "vertex line needs 2 coordinates (file truncated or malformed?)");
    }
    vertices.push_back({parse_real(tokens[0], reader.line()), parse_real(tokens[1], reader.line())});
  }

  const std::size_t nc = parse_section(reader, "cells");
  std::vector<Cell> cells;
  cells.reserve(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    auto tokens = reader.next("cell indices");
    if (tokens.size() != 3) throw ParseError(reader.line(), "cell line needs 3 vertex indices");
    Cell cell{};
    for (std::size_t k = 0; k < 3; ++k) {
      cell[k] = parse_index(tokens[k], reader.line());
      if (cell[k] >= nv) {
        throw ParseError(reader.line(), "cell " + std::to_string(c) + " vertex index " + std::to_string(cell[k]) +
                                            " out of range (" + std::to_string(nv) + " vertices)");
      }
    }
    if (cell[0] == cell[1] || cell[1] == cell[2] || cell[0] == cell[2]) {
      throw ParseError(reader.line(), "cell " + std::to_string(c) + " repeats a vertex index");
    }
    cells.push_back(cell);
  }

  std::vector<std::size_t> parents;
  if (!reader.at_end()) {
    const std::size_t np = parse_section(reader, "macro_parents");
    if (np != nc) throw ParseError(reader.line(), "macro_parents count must equal the cell count");
    parents.reserve(np);
    for (std::size_t c = 0; c < np; ++c) {
      auto tokens = reader.next("macro parent index");
      if (tokens.size() != 1) throw ParseError(reader.line(), "macro parent line needs 1 integer");
      parents.push_back(parse_index(tokens[0], reader.line()));
    }
    if (!reader.at_end()) {
      reader.next("end of file");
      throw ParseError(reader.line(), "trailing content after macro_parents");
    }
  }
  return Mesh2D(std::move(vertices), std::move(cells), std::move(parents));
}

Mesh2D read_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshError("cannot open mesh file '" + path.string() + "'");
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh2D& mesh) {
  out << "svmesh v1\n";
  out << "vertices " << mesh.num_vertices() << '\n';
  for (const Point2& p : mesh.vertices()) out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  out << "cells " << mesh.num_cells() << '\n';
  for (const Cell& c : mesh.cells()) out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
  if (mesh.has_macro_parent()) {
    out << "macro_parents " << mesh.num_cells() << '\n';
    for (std::size_t p : mesh.macro_parent()) out << p << '\n';
  }
}

void write_mesh(const Mesh2D& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot open '" + path.string() + "' for writing");
  write_mesh(out, mesh);
  if (!out) throw MeshError("failed writing '" + path.string() + "'");
}

}  // namespace svlab
