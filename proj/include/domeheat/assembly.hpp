#pragma once

#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

#include "domeheat/linalg.hpp"
#include "domeheat/mesh.hpp"

namespace domeheat {

struct AssemblyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// P1 mass matrix, exact element integration: (area/12) [[2,1,1],[1,2,1],[1,1,2]].
SparseMatrix assemble_mass(const TriMesh& mesh);

/// P1 stiffness matrix from the constant element gradients.
SparseMatrix assemble_stiffness(const TriMesh& mesh);

/// Boundary mass matrix restricted to edges carrying one of the given tags,
/// per edge (length/6) [[2,1],[1,2]]. Full n x n with zero rows elsewhere.
SparseMatrix assemble_boundary_mass(const TriMesh& mesh, std::span<const BoundaryTag> tags);
SparseMatrix assemble_boundary_mass(const TriMesh& mesh, std::initializer_list<BoundaryTag> tags);

struct DofPartition {
  std::vector<int> dof_nodes;        // solved for
  std::vector<int> dirichlet_nodes;  // pool-floor nodes, value prescribed
};

/// Pool nodes carry the Dirichlet datum and are eliminated from the solves;
/// a corner shared with a heater edge counts as Dirichlet.
DofPartition dirichlet_partition(const TriMesh& mesh);

/// The assembled operators and index sets a time-stepping run needs.
struct FemSystem {
  SparseMatrix mass;        // M
  SparseMatrix stiffness;   // K
  SparseMatrix robin_mass;  // boundary mass on the heater arcs
  std::vector<int> dof_nodes;
  std::vector<int> dirichlet_nodes;
  std::vector<int> robin_nodes;  // ordered heater-boundary node list
};

FemSystem build_fem_system(const TriMesh& mesh);

}  // namespace domeheat
