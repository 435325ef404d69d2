#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "domeheat/linalg.hpp"
#include "domeheat/mesh.hpp"

namespace domeheat {

/// Legacy ASCII VTK 3.0 unstructured-grid writer (triangle cells, optional
/// point scalars written as float).
void write_vtk(std::ostream& os, const TriMesh& mesh, const std::string& title,
               std::span<const std::pair<std::string, const Vector*>> point_fields = {});

void write_vtk_file(const std::string& path, const TriMesh& mesh, const std::string& title,
                    std::span<const std::pair<std::string, const Vector*>> point_fields = {});

struct VtkGrid {
  std::vector<Point2> points;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::pair<std::string, Vector>> point_fields;
};

/// Minimal reader for the files this project writes; used for round-trip
/// checks and for picking snapshots back up.
VtkGrid read_vtk(std::istream& is);
VtkGrid read_vtk_file(const std::string& path);

}  // namespace domeheat
