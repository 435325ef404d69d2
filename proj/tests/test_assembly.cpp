#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "domeheat/assembly.hpp"
#include "domeheat/mesh.hpp"

using namespace domeheat;

namespace {

constexpr double kHeaterAngle = std::numbers::pi / 12;

TriMesh unit_right_triangle() {
  TriMesh mesh;
  mesh.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  mesh.triangles = {{0, 1, 2}};
  mesh.boundary_edges = {{0, 1, BoundaryTag::Pool},
                         {1, 2, BoundaryTag::Glass},
                         {2, 0, BoundaryTag::Glass}};
  return mesh;
}

Vector ones(int n) { return Vector(static_cast<std::size_t>(n), 1.0); }

}  // namespace

TEST_CASE("element mass matrix on the unit right triangle") {
  const SparseMatrix m = assemble_mass(unit_right_triangle());
  const double expect[3][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(m.coeff(i, j) - expect[i][j] / 24.0) <= 1e-14);
}

TEST_CASE("element stiffness matrix on the unit right triangle") {
  const SparseMatrix k = assemble_stiffness(unit_right_triangle());
  const double expect[3][3] = {{2, -1, -1}, {-1, 1, 0}, {-1, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(k.coeff(i, j) - expect[i][j] / 2.0) <= 1e-14);
}

TEST_CASE("boundary edge block is (length/6) [[2,1],[1,2]]") {
  TriMesh mesh = unit_right_triangle();
  const SparseMatrix b = assemble_boundary_mass(mesh, {BoundaryTag::Pool});
  const double h = 1.0;  // edge (0,1) has length 1
  CHECK(std::abs(b.coeff(0, 0) - 2.0 * h / 6.0) <= 1e-14);
  CHECK(std::abs(b.coeff(1, 1) - 2.0 * h / 6.0) <= 1e-14);
  CHECK(std::abs(b.coeff(0, 1) - h / 6.0) <= 1e-14);
  CHECK(std::abs(b.coeff(1, 0) - h / 6.0) <= 1e-14);
  for (int j = 0; j < 3; ++j) CHECK(b.coeff(2, j) == 0.0);
}

TEST_CASE("boundary mass with no tags is the zero matrix") {
  const SparseMatrix b = assemble_boundary_mass(unit_right_triangle(), {});
  CHECK(b.nnz() == 0);
}

TEST_CASE("mass row sums integrate to the mesh area") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 1);
  const SparseMatrix m = assemble_mass(mesh);
  const Vector row_sums = spmv(m, ones(mesh.n_vertices()));
  double integral = 0.0;
  for (double v : row_sums) integral += v;
  CHECK(std::abs(integral - total_area(mesh)) <= 1e-12 * total_area(mesh));
}

TEST_CASE("boundary mass row sums integrate to the heater length") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 1);
  const SparseMatrix b =
      assemble_boundary_mass(mesh, {BoundaryTag::HeaterLeft, BoundaryTag::HeaterRight});
  const Vector row_sums = spmv(b, ones(mesh.n_vertices()));
  double integral = 0.0;
  for (double v : row_sums) integral += v;
  const double len = boundary_length(mesh, {BoundaryTag::HeaterLeft, BoundaryTag::HeaterRight});
  CHECK(std::abs(integral - len) <= 1e-12 * len);
}

TEST_CASE("stiffness annihilates constants") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 1);
  const SparseMatrix k = assemble_stiffness(mesh);
  const Vector k1 = spmv(k, ones(mesh.n_vertices()));
  for (double v : k1) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("mass matrix is translation invariant") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 0);
  TriMesh moved = mesh;
  for (Point2& p : moved.vertices) {
    p.x += 10.0;
    p.y -= 3.0;
  }
  const SparseMatrix m0 = assemble_mass(mesh);
  const SparseMatrix m1 = assemble_mass(moved);
  REQUIRE(m0.nnz() == m1.nnz());
  for (int i = 0; i < m0.nnz(); ++i)
    CHECK(std::abs(m0.values[i] - m1.values[i]) <= 1e-12 * std::abs(m0.values[i]));
}

TEST_CASE("stiffness is invariant under uniform scaling in 2D") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 0);
  TriMesh scaled = mesh;
  const double s = 2.5;
  for (Point2& p : scaled.vertices) {
    p.x *= s;
    p.y *= s;
  }
  const SparseMatrix k0 = assemble_stiffness(mesh);
  const SparseMatrix k1 = assemble_stiffness(scaled);
  REQUIRE(k0.nnz() == k1.nnz());
  for (int i = 0; i < k0.nnz(); ++i)
    CHECK(std::abs(k0.values[i] - k1.values[i]) <= 1e-12 * std::max(1.0, std::abs(k0.values[i])));
}

TEST_CASE("assembly rejects a degenerate triangle") {
  TriMesh mesh;
  mesh.vertices = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};  // colinear
  mesh.triangles = {{0, 1, 2}};
  try {
    assemble_mass(mesh);
    FAIL("expected AssemblyError");
  } catch (const AssemblyError& e) {
    CHECK(std::string(e.what()).find("triangle 0") != std::string::npos);
  }
  CHECK_THROWS_AS(assemble_stiffness(mesh), AssemblyError);
}

TEST_CASE("all assembled matrices are symmetric") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 1);
  CHECK(assemble_mass(mesh).is_symmetric(1e-14));
  CHECK(assemble_stiffness(mesh).is_symmetric(1e-14));
  CHECK(assemble_boundary_mass(mesh, {BoundaryTag::HeaterLeft, BoundaryTag::HeaterRight})
            .is_symmetric(1e-14));
}

TEST_CASE("mass matrix is positive definite on random vectors") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 0);
  const SparseMatrix m = assemble_mass(mesh);
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Vector x(static_cast<std::size_t>(mesh.n_vertices()));
    for (double& v : x) v = dist(rng);
    CHECK(dot(x, spmv(m, x)) > 0.0);
  }
}

TEST_CASE("dirichlet partition splits the nodes") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 1);
  const DofPartition part = dirichlet_partition(mesh);
  CHECK(part.dof_nodes.size() + part.dirichlet_nodes.size() ==
        static_cast<std::size_t>(mesh.n_vertices()));
  for (int d : part.dirichlet_nodes)
    CHECK(!std::binary_search(part.dof_nodes.begin(), part.dof_nodes.end(), d));
  // matches the coordinate scan of the floor
  int on_floor = 0;
  for (const Point2& p : mesh.vertices)
    if (p.y == 0.0) ++on_floor;
  CHECK(static_cast<int>(part.dirichlet_nodes.size()) == on_floor);
}

TEST_CASE("mesh without pool edges has no dirichlet nodes") {
  TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 0);
  for (BoundaryEdge& e : mesh.boundary_edges)
    if (e.tag == BoundaryTag::Pool) e.tag = BoundaryTag::Glass;
  CHECK(dirichlet_partition(mesh).dirichlet_nodes.empty());
}

TEST_CASE("the implicit Euler system matrix is SPD on the solved nodes") {
  const TriMesh mesh = generate_half_disc(1.0, kHeaterAngle, 1);
  const FemSystem fem = build_fem_system(mesh);
  const double tau = 1.0 / 250.0, alpha = 100.0;
  const SparseMatrix system = add_scaled(
      1.0, fem.mass, tau, add_scaled(1.0, fem.stiffness, alpha, fem.robin_mass));
  const SparseMatrix system_dof = extract_submatrix(system, fem.dof_nodes, fem.dof_nodes);

  std::mt19937 rng(33);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector b(static_cast<std::size_t>(system_dof.n_rows));
  for (double& v : b) v = dist(rng);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(b.size());
    for (double& v : x) v = dist(rng);
    CHECK(dot(x, spmv(system_dof, x)) > 0.0);
  }
  const CgResult r = cg_solve(system_dof, b, Vector(b.size(), 0.0), 1e-10);
  CHECK(r.iterations > 0);  // converged without a SolverFailure
}
