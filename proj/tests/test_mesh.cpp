#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "porohho/mesh.hpp"
#include "porohho/mesh_io.hpp"
#include "support/oracles.hpp"

using namespace porohho;

TEST_SUITE_BEGIN("mesh");

TEST_CASE("cartesian counts and sizes") {
  SUBCASE("single cell") {
    const PolyMesh mesh = generate_cartesian(1);
    CHECK(mesh.n_cells() == 1);
    CHECK(mesh.n_faces() == 4);
    CHECK(mesh.boundary_faces().size() == 4);
    CHECK(mesh.interior_faces().empty());
  }
  SUBCASE("2x2") {
    const PolyMesh mesh = generate_cartesian(2);
    CHECK(mesh.n_cells() == 4);
    CHECK(mesh.n_faces() == 12);
    CHECK(mesh.interior_faces().size() == 4);
    CHECK(mesh.boundary_faces().size() == 8);
  }
  SUBCASE("mesh size convention") {
    const PolyMesh mesh = generate_cartesian(16);
    CHECK(mesh.mesh_size() == doctest::Approx(std::sqrt(2.) / 16).epsilon(1e-12));
    CHECK(mesh.domain_measure() == doctest::Approx(1.).epsilon(1e-12));
    CHECK(mesh.boundary_perimeter() == doctest::Approx(4.).epsilon(1e-12));
  }
  CHECK_THROWS(generate_cartesian(0));
}

TEST_CASE("refinement ratios match the dyadic convention") {
  const PolyMesh m16 = generate_cartesian(16);
  const PolyMesh m32 = generate_cartesian(32);
  CHECK(m16.mesh_size() / m32.mesh_size() == doctest::Approx(2.).epsilon(1e-12));
}

TEST_CASE("face topology invariants") {
  const PolyMesh mesh = generate_cartesian(3);
  for (int iF = 0; iF < mesh.n_faces(); ++iF) {
    const Face& F = mesh.face(iF);
    CHECK(F.cell[0] >= 0);
    CHECK(F.normal.norm() == doctest::Approx(1.).epsilon(1e-14));
    if (!F.is_boundary()) {
      // anti-symmetry of the outward normals across the interface
      const Eigen::Vector2d n1 = mesh.outward_normal(F.cell[0], iF);
      const Eigen::Vector2d n2 = mesh.outward_normal(F.cell[1], iF);
      CHECK((n1 + n2).norm() <= 1e-14);
    }
  }
  // divergence-free closure: sum_F |F| n_TF = 0 on each cell
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    Eigen::Vector2d acc = Eigen::Vector2d::Zero();
    for (int iF : mesh.cell(iT).faces) acc += mesh.face(iF).measure * mesh.outward_normal(iT, iF);
    CHECK(acc.norm() <= 1e-12);
  }
}

TEST_CASE("outward normals point away from the centroid") {
  const PolyMesh mesh = generate_cartesian(2);
  for (int iT = 0; iT < mesh.n_cells(); ++iT) {
    for (int iF : mesh.cell(iT).faces) {
      const Eigen::Vector2d d = mesh.face(iF).midpoint - mesh.cell(iT).centroid;
      CHECK(mesh.outward_normal(iT, iF).dot(d) > 0.);
    }
  }
}

TEST_CASE("subtriangulate") {
  SUBCASE("unit square fan") {
    const std::vector<Eigen::Vector2d> loop = {{0., 0.}, {1., 0.}, {1., 1.}, {0., 1.}};
    const auto tris = subtriangulate(loop, {0.5, 0.5}, 1.);
    REQUIRE(tris.size() == 4);
    for (const Triangle& t : tris) CHECK(t.area == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("regular hexagon") {
    std::vector<Eigen::Vector2d> loop;
    for (int i = 0; i < 6; ++i) {
      loop.emplace_back(std::cos(M_PI / 3 * i), std::sin(M_PI / 3 * i));
    }
    const double area = test::shoelace_area(loop);
    const auto tris = subtriangulate(loop, {0., 0.}, area);
    double sum = 0.;
    for (const Triangle& t : tris) sum += t.area;
    CHECK(sum == doctest::Approx(area).epsilon(1e-14));
  }
  SUBCASE("nonconvex L-shape star-shaped from an interior point") {
    const std::vector<Eigen::Vector2d> loop = {{0., 0.}, {2., 0.}, {2., 1.}, {1., 1.}, {1., 2.}, {0., 2.}};
    const double area = test::shoelace_area(loop);
    CHECK(area == doctest::Approx(3.).epsilon(1e-14));
    const auto tris = subtriangulate(loop, {0.6, 0.6}, area);
    double sum = 0.;
    for (const Triangle& t : tris) {
      CHECK(t.area > 0.);
      sum += t.area;
    }
    CHECK(sum == doctest::Approx(area).epsilon(1e-13));
  }
  SUBCASE("bad star point is rejected with guidance") {
    const std::vector<Eigen::Vector2d> loop = {{0., 0.}, {2., 0.}, {2., 1.}, {1., 1.}, {1., 2.}, {0., 2.}};
    CHECK_THROWS_WITH_AS(subtriangulate(loop, {1.9, 1.9}, 3.), doctest::Contains("star point"),
                         std::runtime_error);
  }
}

TEST_CASE("mesh file round trip and L-shaped cells") {
  // a 3-cell mesh with one nonconvex cell and two regions
  std::ostringstream file;
  file << "# sample\n"
       << "polymesh 2d\n"
       << "vertices 8\n"
       << "0 0\n2 0\n2 1\n1 1\n1 2\n0 2\n2 2\n3 0\n"
       << "cells 3\n"
       << "6 0 1 2 3 4 5 0\n"
       << "4 3 2 6 4 1\n"
       << "3 1 7 2 1\n";
  std::istringstream in(file.str());
  const PolyMesh mesh = read_polymesh(in, "sample");
  CHECK(mesh.n_cells() == 3);
  CHECK(mesh.n_regions() == 2);
  CHECK(mesh.domain_measure() == doctest::Approx(3. + 1. + 0.5).epsilon(1e-13));

  const std::string path = "roundtrip_mesh.txt";
  save_mesh(mesh, path);
  const PolyMesh copy = load_mesh(path);
  CHECK(copy.n_cells() == mesh.n_cells());
  CHECK(copy.n_faces() == mesh.n_faces());
  CHECK(copy.mesh_size() == doctest::Approx(mesh.mesh_size()).epsilon(1e-14));
  std::remove(path.c_str());
}

TEST_CASE("loader rejects malformed input") {
  SUBCASE("non-manifold face") {
    std::istringstream in(
        "polymesh 2d\n"
        "vertices 5\n0 0\n1 0\n1 1\n0 1\n2 0.5\n"
        "cells 3\n"
        "4 0 1 2 3 0\n"
        "3 1 4 2 0\n"
        "3 1 2 4 0\n");
    CHECK_THROWS_WITH_AS(read_polymesh(in, "bad"), doctest::Contains("non-manifold"), std::runtime_error);
  }
  SUBCASE("degenerate cell") {
    std::istringstream in(
        "polymesh 2d\n"
        "vertices 4\n0 0\n1 0\n2 0\n3 0\n"
        "cells 1\n"
        "4 0 1 2 3 0\n");
    CHECK_THROWS_WITH_AS(read_polymesh(in, "bad"), doctest::Contains("degenerate"), std::runtime_error);
  }
  SUBCASE("parse error carries the line number") {
    std::istringstream in("polymesh 2d\nvertices 3\n0 0\n1 zero\n0 1\ncells 1\n3 0 1 2 0\n");
    CHECK_THROWS_WITH_AS(read_polymesh(in, "bad"), doctest::Contains("bad:4"), std::runtime_error);
  }
  SUBCASE("missing file") { CHECK_THROWS(load_mesh("does_not_exist.txt")); }
}

TEST_CASE("regularity diagnostics") {
  const PolyMesh mesh = generate_cartesian(4);
  const RegularityReport report = validate_regularity(mesh);
  CHECK(report.max_faces_per_cell == 4);
  CHECK(report.max_diameter_ratio == doctest::Approx(std::sqrt(2.)).epsilon(1e-12));
  CHECK(report.min_measure_ratio == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(report.max_faces_per_cell >= 3);
}

TEST_SUITE_END();
