#include "domeheat/assembly.hpp"

#include <algorithm>
#include <cmath>

namespace domeheat {

namespace {

constexpr double kDegenerateArea = 1e-14;

double checked_area(const TriMesh& mesh, int t) {
  const double area = triangle_area(mesh, t);
  if (area <= kDegenerateArea)
    throw AssemblyError("assembly: triangle " + std::to_string(t) + " is degenerate (area " +
                        std::to_string(area) + ")");
  return area;
}

}  // namespace

SparseMatrix assemble_mass(const TriMesh& mesh) {
  const int n = mesh.n_vertices();
  std::vector<Triplet> triplets;
  triplets.reserve(9 * mesh.triangles.size());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double scale = checked_area(mesh, t) / 12.0;
    const auto& tri = mesh.triangles[t];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        triplets.push_back({tri[i], tri[j], scale * (i == j ? 2.0 : 1.0)});
  }
  return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

SparseMatrix assemble_stiffness(const TriMesh& mesh) {
  const int n = mesh.n_vertices();
  std::vector<Triplet> triplets;
  triplets.reserve(9 * mesh.triangles.size());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double area = checked_area(mesh, t);
    const auto& tri = mesh.triangles[t];
    const Point2& p0 = mesh.vertices[tri[0]];
    const Point2& p1 = mesh.vertices[tri[1]];
    const Point2& p2 = mesh.vertices[tri[2]];
    // gradient of basis i is (b_i, c_i) / (2 area), opposite-edge normals
    const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
    const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
    const double scale = 1.0 / (4.0 * area);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        triplets.push_back({tri[i], tri[j], scale * (b[i] * b[j] + c[i] * c[j])});
  }
  return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

SparseMatrix assemble_boundary_mass(const TriMesh& mesh, std::span<const BoundaryTag> tags) {
  const int n = mesh.n_vertices();
  std::vector<Triplet> triplets;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (std::find(tags.begin(), tags.end(), e.tag) == tags.end()) continue;
    const Point2& a = mesh.vertices[e.v0];
    const Point2& b = mesh.vertices[e.v1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    const double scale = len / 6.0;
    triplets.push_back({e.v0, e.v0, 2.0 * scale});
    triplets.push_back({e.v1, e.v1, 2.0 * scale});
    triplets.push_back({e.v0, e.v1, scale});
    triplets.push_back({e.v1, e.v0, scale});
  }
  return SparseMatrix::from_triplets(n, n, std::move(triplets));
}

SparseMatrix assemble_boundary_mass(const TriMesh& mesh,
                                    std::initializer_list<BoundaryTag> tags) {
  return assemble_boundary_mass(mesh, std::span<const BoundaryTag>(tags.begin(), tags.size()));
}

DofPartition dirichlet_partition(const TriMesh& mesh) {
  DofPartition part;
  part.dirichlet_nodes = boundary_nodes(mesh, {BoundaryTag::Pool});
  part.dof_nodes.reserve(mesh.vertices.size() - part.dirichlet_nodes.size());
  std::size_t next = 0;
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (next < part.dirichlet_nodes.size() && part.dirichlet_nodes[next] == v)
      ++next;
    else
      part.dof_nodes.push_back(v);
  }
  return part;
}

FemSystem build_fem_system(const TriMesh& mesh) {
  FemSystem fem;
  fem.mass = assemble_mass(mesh);
  fem.stiffness = assemble_stiffness(mesh);
  fem.robin_mass =
      assemble_boundary_mass(mesh, {BoundaryTag::HeaterLeft, BoundaryTag::HeaterRight});
  DofPartition part = dirichlet_partition(mesh);
  fem.dof_nodes = std::move(part.dof_nodes);
  fem.dirichlet_nodes = std::move(part.dirichlet_nodes);
  fem.robin_nodes = boundary_nodes(mesh, {BoundaryTag::HeaterLeft, BoundaryTag::HeaterRight});
  return fem;
}

}  // namespace domeheat
