#pragma once

#include <stdexcept>
#include <string>

#include "domeheat/mesh.hpp"

namespace domeheat {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line) : std::runtime_error(what), line(line) {}
  int line;  // 1-based line in the offending text, 0 if not line-specific
};

struct TriangleMeshText {
  std::string node_text;      // "<count> 2 0 0" header, then "<index> <x> <y>" lines
  std::string ele_text;       // "<count> 3 0" header, then "<index> <v0> <v1> <v2>" lines
  std::string boundary_text;  // "<count>" header, then "<v0> <v1> <tag>" lines, tags 1..4
};

/// Parses Triangle-format .node/.ele content plus the boundary-edge tag
/// listing. Indices are 0-based, '#' starts a comment. Triangle orientation
/// is fixed up automatically; all mesh invariants are checked afterwards.
/// Throws ParseError with a line number, or MeshError with an entity index.
TriMesh import_triangle_mesh(const std::string& node_text, const std::string& ele_text,
                             const std::string& boundary_text);

/// Inverse of import_triangle_mesh; coordinates at full precision so that a
/// round trip reproduces the mesh exactly.
TriangleMeshText export_triangle_mesh(const TriMesh& mesh);

/// Reads base.node, base.ele and base.bnd.
TriMesh read_triangle_mesh_files(const std::string& base_path);

/// Writes base.node, base.ele and base.bnd.
void write_triangle_mesh_files(const TriMesh& mesh, const std::string& base_path);

}  // namespace domeheat
