#include "domeheat/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace domeheat {

namespace {

// Line-oriented tokenizer that strips '#' comments and remembers line numbers.
struct LineReader {
  explicit LineReader(const std::string& text, std::string name)
      : stream(text), name(std::move(name)) {}

  // next non-empty line as tokens; false at end of input
  bool next(std::vector<std::string>& tokens) {
    std::string raw;
    while (std::getline(stream, raw)) {
      ++line;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      tokens.clear();
      std::istringstream ls(raw);
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(name + " line " + std::to_string(line) + ": " + msg, line);
  }

  std::istringstream stream;
  std::string name;
  int line = 0;
};

int parse_int(LineReader& r, const std::string& tok) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) r.fail("invalid integer '" + tok + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    r.fail("invalid integer '" + tok + "'");
  }
}

double parse_double(LineReader& r, const std::string& tok) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) r.fail("invalid number '" + tok + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    r.fail("invalid number '" + tok + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace

TriMesh import_triangle_mesh(const std::string& node_text, const std::string& ele_text,
                             const std::string& boundary_text) {
  TriMesh mesh;
  std::vector<std::string> tok;

  LineReader nodes(node_text, "node file");
  if (!nodes.next(tok)) nodes.fail("empty node file");
  if (tok.size() < 2) nodes.fail("expected '<count> <dim> [...]' header");
  const int n_nodes = parse_int(nodes, tok[0]);
  const int dim = parse_int(nodes, tok[1]);
  if (n_nodes < 1) nodes.fail("node count must be positive");
  if (dim != 2) nodes.fail("only 2D meshes are supported");
  mesh.vertices.resize(static_cast<std::size_t>(n_nodes));
  for (int i = 0; i < n_nodes; ++i) {
    if (!nodes.next(tok)) nodes.fail("unexpected end of node list");
    if (tok.size() < 3) nodes.fail("expected '<index> <x> <y>'");
    const int idx = parse_int(nodes, tok[0]);
    if (idx != i) nodes.fail("expected 0-based index " + std::to_string(i));
    mesh.vertices[i] = {parse_double(nodes, tok[1]), parse_double(nodes, tok[2])};
  }

  LineReader eles(ele_text, "ele file");
  if (!eles.next(tok)) eles.fail("empty ele file");
  if (tok.size() < 2) eles.fail("expected '<count> <nodes per triangle> [...]' header");
  const int n_tris = parse_int(eles, tok[0]);
  if (parse_int(eles, tok[1]) != 3) eles.fail("only 3-node triangles are supported");
  if (n_tris < 1) eles.fail("triangle count must be positive");
  mesh.triangles.resize(static_cast<std::size_t>(n_tris));
  for (int t = 0; t < n_tris; ++t) {
    if (!eles.next(tok)) eles.fail("unexpected end of triangle list");
    if (tok.size() < 4) eles.fail("expected '<index> <v0> <v1> <v2>'");
    if (parse_int(eles, tok[0]) != t) eles.fail("expected 0-based index " + std::to_string(t));
    for (int k = 0; k < 3; ++k) {
      const int v = parse_int(eles, tok[1 + k]);
      if (v < 0 || v >= n_nodes)
        throw MeshError("triangle " + std::to_string(t) + " references vertex " +
                        std::to_string(v) + " outside 0.." + std::to_string(n_nodes - 1));
      mesh.triangles[t][k] = v;
    }
  }

  LineReader edges(boundary_text, "boundary file");
  if (!edges.next(tok)) edges.fail("empty boundary file");
  const int n_edges = parse_int(edges, tok[0]);
  if (n_edges < 1) edges.fail("boundary edge count must be positive");
  mesh.boundary_edges.resize(static_cast<std::size_t>(n_edges));
  for (int e = 0; e < n_edges; ++e) {
    if (!edges.next(tok)) edges.fail("unexpected end of boundary list");
    if (tok.size() < 3) edges.fail("expected '<v0> <v1> <tag>'");
    const int v0 = parse_int(edges, tok[0]);
    const int v1 = parse_int(edges, tok[1]);
    const int tag = parse_int(edges, tok[2]);
    if (v0 < 0 || v0 >= n_nodes || v1 < 0 || v1 >= n_nodes)
      throw MeshError("boundary edge " + std::to_string(e) + " references a vertex outside 0.." +
                      std::to_string(n_nodes - 1));
    if (tag < 1 || tag > 4) edges.fail("boundary tag must be 1..4, got " + tok[2]);
    mesh.boundary_edges[e] = {v0, v1, static_cast<BoundaryTag>(tag)};
  }

  // orientation fix-up before validation
  for (auto& tri : mesh.triangles) {
    const double a = signed_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                 mesh.vertices[tri[2]]);
    if (a < 0.0) std::swap(tri[1], tri[2]);
  }

  validate(mesh);
  return mesh;
}

TriangleMeshText export_triangle_mesh(const TriMesh& mesh) {
  TriangleMeshText out;
  char buf[128];
  {
    std::ostringstream os;
    os << mesh.n_vertices() << " 2 0 0\n";
    for (int v = 0; v < mesh.n_vertices(); ++v) {
      std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", v, mesh.vertices[v].x,
                    mesh.vertices[v].y);
      os << buf;
    }
    out.node_text = os.str();
  }
  {
    std::ostringstream os;
    os << mesh.n_triangles() << " 3 0\n";
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const auto& tri = mesh.triangles[t];
      os << t << ' ' << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    }
    out.ele_text = os.str();
  }
  {
    std::ostringstream os;
    os << mesh.boundary_edges.size() << '\n';
    for (const BoundaryEdge& e : mesh.boundary_edges)
      os << e.v0 << ' ' << e.v1 << ' ' << static_cast<int>(e.tag) << '\n';
    out.boundary_text = os.str();
  }
  return out;
}

TriMesh read_triangle_mesh_files(const std::string& base_path) {
  return import_triangle_mesh(read_file(base_path + ".node"), read_file(base_path + ".ele"),
                              read_file(base_path + ".bnd"));
}

void write_triangle_mesh_files(const TriMesh& mesh, const std::string& base_path) {
  const TriangleMeshText text = export_triangle_mesh(mesh);
  write_file(base_path + ".node", text.node_text);
  write_file(base_path + ".ele", text.ele_text);
  write_file(base_path + ".bnd", text.boundary_text);
}

}  // namespace domeheat
