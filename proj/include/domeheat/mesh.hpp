#pragma once

#include <array>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace domeheat {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Boundary classes of the half-disc dome. The integer codes are the ones
/// used in boundary files: 1 glass, 2 pool floor, 3 right heater, 4 left
/// heater. The two heater arcs together form the controlled (Robin) boundary.
enum class BoundaryTag : int {
  Glass = 1,
  Pool = 2,
  HeaterRight = 3,
  HeaterLeft = 4,
};

const char* to_string(BoundaryTag tag);

struct BoundaryEdge {
  int v0 = -1;
  int v1 = -1;
  BoundaryTag tag = BoundaryTag::Glass;
};

/// Triangulated 2D domain with tagged boundary edges. Immutable after
/// construction; triangles are counterclockwise and the boundary edges form
/// one closed loop (see validate()).
struct TriMesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<BoundaryEdge> boundary_edges;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double signed_area(const Point2& a, const Point2& b, const Point2& c);
double triangle_area(const TriMesh& mesh, int t);
double total_area(const TriMesh& mesh);

/// Total length of the boundary edges carrying one of the given tags.
double boundary_length(const TriMesh& mesh, std::span<const BoundaryTag> tags);
double boundary_length(const TriMesh& mesh, std::initializer_list<BoundaryTag> tags);

/// Upper half-disc {x^2+y^2 <= r^2, y >= 0} centered at the origin. The flat
/// bottom is the pool floor; the arc within heater_angle of the x-axis is the
/// right (x>0) and left (x<0) heater; the remaining arc is glass. The base
/// triangulation is a polar fan refined so that refinement_level 0 has ~75
/// nodes, and each further level quadruples the triangle count.
TriMesh generate_half_disc(double radius, double heater_angle, int refinement_level);

/// Structured triangulation of the unit square, all boundary edges carrying
/// a single tag. Used for verification problems with Dirichlet data all
/// around.
TriMesh generate_unit_square(int cells_per_side, BoundaryTag tag = BoundaryTag::Pool);

/// Red refinement: each triangle splits into 4 via edge midpoints. Midpoints
/// of Glass/Heater boundary edges are projected radially (about the origin)
/// back onto the circular arc; child edges inherit the parent tag.
TriMesh refine_uniform(const TriMesh& mesh);

/// Sorted, duplicate-free vertex indices incident to at least one boundary
/// edge with a tag in the set. A corner vertex shared by two tag classes
/// appears in the result of both queries.
std::vector<int> boundary_nodes(const TriMesh& mesh, std::span<const BoundaryTag> tags);
std::vector<int> boundary_nodes(const TriMesh& mesh, std::initializer_list<BoundaryTag> tags);

/// The boundary vertex cycle, oriented so its shoelace area is positive.
/// Requires a valid mesh.
std::vector<int> boundary_loop(const TriMesh& mesh);

/// Checks all structural invariants: positive triangle areas, no duplicate
/// vertices, and boundary edges forming a single closed loop that covers the
/// topological boundary exactly once. Throws MeshError naming the offending
/// entity.
void validate(const TriMesh& mesh);

}  // namespace domeheat
