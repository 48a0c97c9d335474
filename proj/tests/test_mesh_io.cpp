#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include "svlab/error.hpp"
#include "svlab/mesh.hpp"
#include "svlab/mesh_io.hpp"

using namespace svlab;

namespace {

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_mesh(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("round trip is bit exact") {
  const Mesh2D m({Point2{0.1, 1.0 / 3.0}, Point2{std::nextafter(1.0, 2.0), 0.0}, Point2{0.0, 2.0 / 7.0},
                  Point2{1e-300, -123456.789}},
                 {Cell{0, 1, 2}, Cell{1, 3, 2}});
  std::stringstream s;
  write_mesh(s, m);
  const Mesh2D r = read_mesh(s);
  REQUIRE(r.num_vertices() == m.num_vertices());
  for (std::size_t i = 0; i < m.num_vertices(); ++i) {
    CHECK(r.vertices()[i].x == m.vertices()[i].x);
    CHECK(r.vertices()[i].y == m.vertices()[i].y);
  }
  REQUIRE(r.num_cells() == m.num_cells());
  for (std::size_t c = 0; c < m.num_cells(); ++c) CHECK(r.cells()[c] == m.cells()[c]);
  CHECK_FALSE(r.has_macro_parent());
}

TEST_CASE("macro parents survive the round trip") {
  const Mesh2D m = clough_tocher_refine(generate_unit_square_mesh(1), SplitStrategy::Incenter);
  std::stringstream s;
  write_mesh(s, m);
  const Mesh2D r = read_mesh(s);
  REQUIRE(r.has_macro_parent());
  for (std::size_t c = 0; c < m.num_cells(); ++c) CHECK(r.macro_parent()[c] == m.macro_parent()[c]);
}

TEST_CASE("format header") {
  std::stringstream s;
  write_mesh(s, generate_unit_square_mesh(1));
  std::string line;
  std::getline(s, line);
  CHECK(line == "svmesh v1");
  std::getline(s, line);
  CHECK(line == "vertices 4");
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("svmesh v2\nvertices 0\ncells 0\n") == 1);
  CHECK(parse_error_line("svmesh v1\nvertices 4\n0 0\n1 0\n1 1\n0 1\ncells 1\n0 1 99\n") == 8);
  CHECK(parse_error_line("svmesh v1\nvertices 3\n0 0\n1 0\ncells 1\n0 1 2\n") == 5);
  CHECK(parse_error_line("svmesh v1\nvertices 3\n0 0\n1 nan\n0 1\ncells 1\n0 1 2\n") == 4);
  CHECK(parse_error_line("svmesh v1\nvertices 3\n0 0\n1 inf\n0 1\ncells 1\n0 1 2\n") == 4);
  CHECK(parse_error_line("svmesh v1\nvertices 3\n0 0\n1 0\n0 1\ncells 2\n0 1 2\n") == 8);
  CHECK(parse_error_line("svmesh v1\nvertices 3\n0 0\n1 0\n0 1\ncells 1\n0 1 2\nextra\n") == 8);

  std::istringstream in("svmesh v1\nvertices 4\n0 0\n1 0\n1 1\n0 1\ncells 1\n0 1 99\n");
  try {
    read_mesh(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 8") != std::string::npos);
    CHECK(what.find("99") != std::string::npos);
  }
}

TEST_CASE("truncated vertex block is reported as truncation") {
  std::istringstream in("svmesh v1\nvertices 3\n0 0\n1 0\ncells 1\n0 1 2\n");
  try {
    read_mesh(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("truncated") != std::string::npos);
  }
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-310, -2.5e300, 8.926, 0.0}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(read_mesh(std::filesystem::path("/nonexistent/mesh.svmesh")), MeshError);
}
