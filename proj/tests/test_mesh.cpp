#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "svlab/error.hpp"
#include "svlab/geometry.hpp"
#include "svlab/mesh.hpp"

using namespace svlab;

TEST_CASE("unit square mesh counts and shapes") {
  const Mesh2D m1 = generate_unit_square_mesh(1);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_cells() == 2);
  CHECK(m1.total_area() == doctest::Approx(1.0).epsilon(1e-15));

  for (Diagonal d : {Diagonal::RightUp, Diagonal::LeftUp}) {
    const Mesh2D m = generate_unit_square_mesh(2, d);
    CHECK(m.num_vertices() == 9);
    CHECK(m.num_cells() == 8);
    const auto rep = validate_mesh(m);
    CHECK(rep.ok());
    CHECK(rep.total_area == doctest::Approx(1.0).epsilon(1e-15));
    for (std::size_t c = 0; c < m.num_cells(); ++c) {
      const auto tm = analyze_triangle(m.cell_points(c));
      CHECK(tm.h[0] == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(tm.h[1] == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(tm.aspect == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
      CHECK(m.cell_area(c) > 0.0);
    }
  }
  CHECK_THROWS_AS(generate_unit_square_mesh(0), MeshError);
}

TEST_CASE("diagonal orientation") {
  // RightUp: the first square is cut from (0,0) to (1,1).
  const Mesh2D m = generate_unit_square_mesh(1, Diagonal::RightUp);
  const auto& topo = m.topology();
  bool has_right_up = false;
  bool has_left_up = false;
  for (const auto& e : topo.edges) {
    const Point2 a = m.vertices()[e[0]];
    const Point2 b = m.vertices()[e[1]];
    if (std::abs(a.x - b.x) == 1.0 && std::abs(a.y - b.y) == 1.0) {
      ((a.x - b.x) * (a.y - b.y) > 0 ? has_right_up : has_left_up) = true;
    }
  }
  CHECK(has_right_up);
  CHECK_FALSE(has_left_up);
}

TEST_CASE("Shishkin abscissae and counts") {
  const auto x = shishkin_abscissae(4, 0.06);
  const std::vector<double> expected{0.0, 0.03, 0.06, 0.53, 1.0};
  REQUIRE(x.size() == expected.size());
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  CHECK(x.back() == 1.0);

  const Mesh2D m = generate_shishkin_mesh(8, 0.3);
  CHECK(m.num_cells() == 128);
  CHECK(validate_mesh(m).ok());
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(generate_shishkin_mesh(3, 0.1), MeshError);
  CHECK_THROWS_AS(generate_shishkin_mesh(0, 0.1), MeshError);
  CHECK_THROWS_AS(generate_shishkin_mesh(4, 0.0), MeshError);
  CHECK_THROWS_AS(generate_shishkin_mesh(4, 1.0), MeshError);
}

TEST_CASE("Shishkin maximal aspect matches the closed form") {
  const double tau = 0.06;
  const double formula = shishkin_aspect_formula(tau);
  // Same quantity written as a product, from the legs 2 tau / N and 1 / N.
  const double r = std::sqrt(1.0 + 4.0 * tau * tau);
  CHECK(formula == doctest::Approx(r * (1.0 + 2.0 * tau + r) / (4.0 * tau)).epsilon(1e-13));
  CHECK(formula == doctest::Approx(8.926).epsilon(1e-3));
  CHECK(max_aspect_ratio(generate_shishkin_mesh(4, tau)) == doctest::Approx(formula).epsilon(1e-12));
}

TEST_CASE("Clough-Tocher refinement") {
  const Mesh2D m = generate_unit_square_mesh(2);
  for (SplitStrategy s : {SplitStrategy::Barycenter, SplitStrategy::Incenter}) {
    const Mesh2D r = clough_tocher_refine(m, s);
    CHECK(r.num_cells() == 24);
    CHECK(r.num_vertices() == 9 + 8);
    REQUIRE(r.has_macro_parent());
    const auto rep = validate_mesh(r);
    CHECK(rep.ok());
    CHECK(rep.total_area == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t c = 0; c < m.num_cells(); ++c) {
      double children = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        CHECK(r.macro_parent()[3 * c + k] == c);
        children += r.cell_area(3 * c + k);
      }
      CHECK(children == doctest::Approx(m.cell_area(c)).epsilon(1e-13));
    }
    const Mesh2D r2 = clough_tocher_refine(r, s);
    CHECK(r2.num_cells() == 72);
    CHECK(std::abs(validate_mesh(r2).total_area - 1.0) <= 1e-14);
    CHECK(validate_mesh(r2).ok());
    // Every interior edge is shared by two cells, boundary edges by one.
    const auto& topo = r2.topology();
    for (std::size_t e = 0; e < topo.edges.size(); ++e) {
      CHECK((topo.edge_incidence[e] == 1 || topo.edge_incidence[e] == 2));
    }
  }
}

TEST_CASE("child areas follow the split point") {
  const Mesh2D single({Point2{0, 0}, Point2{1, 0}, Point2{0, 3}}, {Cell{0, 1, 2}});
  const Mesh2D bary = clough_tocher_refine(single, SplitStrategy::Barycenter);
  for (std::size_t c = 0; c < 3; ++c) CHECK(bary.cell_area(c) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(bary.vertices()[3].x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(bary.vertices()[3].y == doctest::Approx(1.0).epsilon(1e-15));

  const Mesh2D inc = clough_tocher_refine(single, SplitStrategy::Incenter);
  CHECK(inc.vertices()[3].x == doctest::Approx(0.41886117).epsilon(1e-7));
  CHECK(inc.vertices()[3].y == doctest::Approx(0.41886117).epsilon(1e-7));
  // Child 3c+k shares the parent edge opposite local vertex k.
  const double len[3] = {std::sqrt(10.0), 3.0, 1.0};
  const double perimeter = len[0] + len[1] + len[2];
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(inc.cell_area(k) == doctest::Approx(1.5 * len[k] / perimeter).epsilon(1e-13));
  }
}

TEST_CASE("equilateral splits coincide") {
  const Mesh2D eq({Point2{0, 0}, Point2{1, 0}, Point2{0.5, std::sqrt(3.0) / 2}}, {Cell{0, 1, 2}});
  const Point2 a = clough_tocher_refine(eq, SplitStrategy::Barycenter).vertices()[3];
  const Point2 b = clough_tocher_refine(eq, SplitStrategy::Incenter).vertices()[3];
  CHECK(distance(a, b) <= 1e-15);
}

TEST_CASE("validation catches broken meshes") {
  const Mesh2D flipped({Point2{0, 0}, Point2{1, 0}, Point2{1, 1}, Point2{0, 1}}, {Cell{0, 1, 2}, Cell{0, 3, 2}});
  auto rep = validate_mesh(flipped);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.misoriented_cells.size() == 1);
  CHECK(rep.misoriented_cells[0] == 1);

  const Mesh2D duplicate({Point2{0, 0}, Point2{1, 0}, Point2{0, 1}, Point2{1e-15, 0}}, {Cell{0, 1, 2}});
  rep = validate_mesh(duplicate);
  CHECK(rep.duplicate_vertices.size() == 1);

  // Hanging vertex: a refined triangle next to an unrefined one.
  const Mesh2D hanging({Point2{0, 0}, Point2{1, 0}, Point2{0, 1}, Point2{1, 1}, Point2{0.5, 0.5}},
                       {Cell{0, 1, 4}, Cell{0, 4, 2}, Cell{1, 3, 2}});
  CHECK_FALSE(validate_mesh(hanging).conforming);

  // Three cells sharing one edge.
  const Mesh2D fan({Point2{0, 0}, Point2{1, 0}, Point2{0.5, 1}, Point2{0.5, -1}, Point2{0.5, 2}},
                   {Cell{0, 1, 2}, Cell{1, 0, 3}, Cell{0, 1, 4}});
  CHECK_FALSE(validate_mesh(fan).conforming);
}

TEST_CASE("mesh construction rejects bad input") {
  CHECK_THROWS_AS(Mesh2D({Point2{0, 0}, Point2{1, 0}}, {Cell{0, 1, 2}}), MeshError);
  CHECK_THROWS_AS(Mesh2D({Point2{0, 0}, Point2{1, 0}, Point2{0, 1}}, {Cell{0, 1, 1}}), MeshError);
  CHECK_THROWS_AS(Mesh2D({Point2{0, 0}, Point2{1, 0}, Point2{0, NAN}}, {Cell{0, 1, 2}}), MeshError);
  const Mesh2D degenerate({Point2{0, 0}, Point2{1, 0}, Point2{2, 0}}, {Cell{0, 1, 2}});
  CHECK_THROWS_AS(clough_tocher_refine(degenerate, SplitStrategy::Barycenter), MeshError);
}

TEST_CASE("boundary vertices of the unit square") {
  const Mesh2D m = generate_unit_square_mesh(2);
  const auto bv = m.boundary_vertices();
  CHECK(bv.size() == 8);
  CHECK(std::find(bv.begin(), bv.end(), std::size_t{4}) == bv.end());
}
