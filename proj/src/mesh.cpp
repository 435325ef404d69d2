#include "domeheat/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace domeheat {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

double hypot2(const Point2& p) { return std::hypot(p.x, p.y); }

}  // namespace

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Glass: return "glass";
    case BoundaryTag::Pool: return "pool";
    case BoundaryTag::HeaterRight: return "heater-right";
    case BoundaryTag::HeaterLeft: return "heater-left";
  }
  return "unknown";
}

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double triangle_area(const TriMesh& mesh, int t) {
  const auto& tri = mesh.triangles[t];
  return signed_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]);
}

double total_area(const TriMesh& mesh) {
  double a = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) a += triangle_area(mesh, t);
  return a;
}

double boundary_length(const TriMesh& mesh, std::span<const BoundaryTag> tags) {
  double len = 0.0;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (std::find(tags.begin(), tags.end(), e.tag) == tags.end()) continue;
    const Point2& a = mesh.vertices[e.v0];
    const Point2& b = mesh.vertices[e.v1];
    len += std::hypot(b.x - a.x, b.y - a.y);
  }
  return len;
}

double boundary_length(const TriMesh& mesh, std::initializer_list<BoundaryTag> tags) {
  return boundary_length(mesh, std::span<const BoundaryTag>(tags.begin(), tags.size()));
}

TriMesh generate_half_disc(double radius, double heater_angle, int refinement_level) {
  constexpr double pi = std::numbers::pi;
  if (!(radius > 0.0)) throw std::invalid_argument("generate_half_disc: radius must be positive");
  if (!(heater_angle > 0.0 && heater_angle < pi / 2))
    throw std::invalid_argument("generate_half_disc: heater_angle must lie in (0, pi/2)");
  if (refinement_level < 0)
    throw std::invalid_argument("generate_half_disc: refinement_level must be >= 0");

  // Arc angles of the base fan. The heater band limits are always node
  // positions so every arc edge lies entirely in one boundary class.
  std::vector<double> angles;
  angles.push_back(0.0);
  angles.push_back(heater_angle);
  const double mid_span = pi - 2.0 * heater_angle;
  const int n_mid = std::max(1, static_cast<int>(std::lround(mid_span / (pi / 6))));
  for (int i = 1; i < n_mid; ++i) angles.push_back(heater_angle + mid_span * i / n_mid);
  angles.push_back(pi - heater_angle);
  angles.push_back(pi);

  TriMesh fan;
  fan.vertices.push_back({0.0, 0.0});  // apex on the pool floor
  for (double a : angles) {
    // the floor endpoints must sit exactly on the axis (sin(pi) != 0 in
    // floating point)
    if (a == 0.0) fan.vertices.push_back({radius, 0.0});
    else if (a == pi) fan.vertices.push_back({-radius, 0.0});
    else fan.vertices.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  const int n_arc = static_cast<int>(angles.size());
  for (int i = 0; i < n_arc - 1; ++i)
    fan.triangles.push_back({0, 1 + i, 2 + i});  // ccw: apex, then increasing angle

  // Boundary loop, counterclockwise: arc from (r,0) to (-r,0), then the
  // floor back through the apex.
  for (int i = 0; i < n_arc - 1; ++i) {
    const double mid = 0.5 * (angles[i] + angles[i + 1]);
    BoundaryTag tag = BoundaryTag::Glass;
    if (mid < heater_angle) tag = BoundaryTag::HeaterRight;
    else if (mid > pi - heater_angle) tag = BoundaryTag::HeaterLeft;
    fan.boundary_edges.push_back({1 + i, 2 + i, tag});
  }
  fan.boundary_edges.push_back({n_arc, 0, BoundaryTag::Pool});
  fan.boundary_edges.push_back({0, 1, BoundaryTag::Pool});

  // Two built-in refinements bring the base to ~75 nodes, the scale of the
  // coarsest mesh family member; exposed levels continue from there.
  TriMesh mesh = std::move(fan);
  for (int i = 0; i < 2 + refinement_level; ++i) mesh = refine_uniform(mesh);
  return mesh;
}

TriMesh generate_unit_square(int cells_per_side, BoundaryTag tag) {
  if (cells_per_side < 1)
    throw std::invalid_argument("generate_unit_square: cells_per_side must be >= 1");
  const int n = cells_per_side;
  TriMesh mesh;
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  for (int i = 0; i < n; ++i) mesh.boundary_edges.push_back({id(i, 0), id(i + 1, 0), tag});
  for (int j = 0; j < n; ++j) mesh.boundary_edges.push_back({id(n, j), id(n, j + 1), tag});
  for (int i = n; i > 0; --i) mesh.boundary_edges.push_back({id(i, n), id(i - 1, n), tag});
  for (int j = n; j > 0; --j) mesh.boundary_edges.push_back({id(0, j), id(0, j - 1), tag});
  return mesh;
}

TriMesh refine_uniform(const TriMesh& mesh) {
  std::map<EdgeKey, BoundaryTag> boundary_tag;
  for (const BoundaryEdge& e : mesh.boundary_edges) boundary_tag[edge_key(e.v0, e.v1)] = e.tag;

  TriMesh fine;
  fine.vertices = mesh.vertices;
  fine.triangles.reserve(4 * mesh.triangles.size());

  std::map<EdgeKey, int> midpoint;
  auto midpoint_of = [&](int a, int b) {
    const EdgeKey key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const Point2& pa = mesh.vertices[a];
    const Point2& pb = mesh.vertices[b];
    Point2 m{0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
    auto bt = boundary_tag.find(key);
    if (bt != boundary_tag.end() && bt->second != BoundaryTag::Pool) {
      // curved boundary: pull the midpoint radially onto the arc
      const double target = 0.5 * (hypot2(pa) + hypot2(pb));
      const double len = hypot2(m);
      if (len > 0.0) {
        m.x *= target / len;
        m.y *= target / len;
      }
    }
    const int idx = static_cast<int>(fine.vertices.size());
    fine.vertices.push_back(m);
    midpoint.emplace(key, idx);
    return idx;
  };

  for (const auto& tri : mesh.triangles) {
    const int m01 = midpoint_of(tri[0], tri[1]);
    const int m12 = midpoint_of(tri[1], tri[2]);
    const int m20 = midpoint_of(tri[2], tri[0]);
    fine.triangles.push_back({tri[0], m01, m20});
    fine.triangles.push_back({tri[1], m12, m01});
    fine.triangles.push_back({tri[2], m20, m12});
    fine.triangles.push_back({m01, m12, m20});
  }

  fine.boundary_edges.reserve(2 * mesh.boundary_edges.size());
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    auto it = midpoint.find(edge_key(e.v0, e.v1));
    if (it == midpoint.end())
      throw MeshError("refine_uniform: boundary edge (" + std::to_string(e.v0) + "," +
                      std::to_string(e.v1) + ") is not an edge of any triangle");
    fine.boundary_edges.push_back({e.v0, it->second, e.tag});
    fine.boundary_edges.push_back({it->second, e.v1, e.tag});
  }
  return fine;
}

std::vector<int> boundary_nodes(const TriMesh& mesh, std::span<const BoundaryTag> tags) {
  std::vector<int> nodes;
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    if (std::find(tags.begin(), tags.end(), e.tag) == tags.end()) continue;
    nodes.push_back(e.v0);
    nodes.push_back(e.v1);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::vector<int> boundary_nodes(const TriMesh& mesh, std::initializer_list<BoundaryTag> tags) {
  return boundary_nodes(mesh, std::span<const BoundaryTag>(tags.begin(), tags.size()));
}

std::vector<int> boundary_loop(const TriMesh& mesh) {
  if (mesh.boundary_edges.empty()) throw MeshError("boundary_loop: no boundary edges");
  std::map<int, std::vector<int>> incident;  // vertex -> neighbouring loop vertices
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    incident[e.v0].push_back(e.v1);
    incident[e.v1].push_back(e.v0);
  }
  std::vector<int> loop;
  const int start = mesh.boundary_edges.front().v0;
  int prev = -1;
  int cur = start;
  do {
    loop.push_back(cur);
    const auto& nb = incident.at(cur);
    if (nb.size() != 2)
      throw MeshError("boundary_loop: vertex " + std::to_string(cur) + " has " +
                      std::to_string(nb.size()) + " boundary edges");
    const int next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  } while (cur != start && loop.size() <= mesh.boundary_edges.size());
  if (cur != start || loop.size() != mesh.boundary_edges.size())
    throw MeshError("boundary_loop: boundary edges do not form a single closed loop");

  double shoelace = 0.0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point2& a = mesh.vertices[loop[i]];
    const Point2& b = mesh.vertices[loop[(i + 1) % loop.size()]];
    shoelace += a.x * b.y - b.x * a.y;
  }
  if (shoelace < 0.0) std::reverse(loop.begin(), loop.end());
  return loop;
}

void validate(const TriMesh& mesh) {
  const int n = mesh.n_vertices();
  if (n < 3) throw MeshError("validate: fewer than 3 vertices");
  for (int v = 0; v < n; ++v)
    if (!std::isfinite(mesh.vertices[v].x) || !std::isfinite(mesh.vertices[v].y))
      throw MeshError("validate: vertex " + std::to_string(v) + " has non-finite coordinates");

  for (int t = 0; t < mesh.n_triangles(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.triangles[t][k];
      if (v < 0 || v >= n)
        throw MeshError("validate: triangle " + std::to_string(t) + " references vertex " +
                        std::to_string(v));
    }
    if (!(triangle_area(mesh, t) > 0.0))
      throw MeshError("validate: triangle " + std::to_string(t) + " has nonpositive area");
  }

  // duplicate vertices: sweep over x-sorted points
  double lo_x = mesh.vertices[0].x, hi_x = lo_x, lo_y = mesh.vertices[0].y, hi_y = lo_y;
  for (const Point2& p : mesh.vertices) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double diameter = std::hypot(hi_x - lo_x, hi_y - lo_y);
  const double tol = 1e-12 * diameter;
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return mesh.vertices[a].x < mesh.vertices[b].x;
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Point2& a = mesh.vertices[order[i]];
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const Point2& b = mesh.vertices[order[j]];
      if (b.x - a.x > tol) break;
      if (std::hypot(b.x - a.x, b.y - a.y) <= tol)
        throw MeshError("validate: vertices " + std::to_string(order[i]) + " and " +
                        std::to_string(order[j]) + " coincide");
    }
  }

  // boundary edges must match the topological boundary exactly once each
  std::map<EdgeKey, int> tri_edge_count;
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) ++tri_edge_count[edge_key(tri[k], tri[(k + 1) % 3])];
  std::map<EdgeKey, int> listed;
  for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
    const BoundaryEdge& e = mesh.boundary_edges[i];
    if (e.v0 < 0 || e.v0 >= n || e.v1 < 0 || e.v1 >= n || e.v0 == e.v1)
      throw MeshError("validate: boundary edge " + std::to_string(i) + " is malformed");
    const EdgeKey key = edge_key(e.v0, e.v1);
    if (++listed[key] > 1)
      throw MeshError("validate: boundary edge " + std::to_string(i) + " is listed twice");
    auto it = tri_edge_count.find(key);
    if (it == tri_edge_count.end() || it->second != 1)
      throw MeshError("validate: boundary edge " + std::to_string(i) +
                      " is not on the topological boundary");
  }
  for (const auto& [key, count] : tri_edge_count)
    if (count == 1 && listed.find(key) == listed.end())
      throw MeshError("validate: triangle edge (" + std::to_string(key.first) + "," +
                      std::to_string(key.second) + ") is on the boundary but untagged");
  if (!mesh.boundary_edges.empty()) boundary_loop(mesh);  // single closed loop
}

}  // namespace domeheat
