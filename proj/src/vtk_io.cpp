#include "domeheat/vtk_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace domeheat {

void write_vtk(std::ostream& os, const TriMesh& mesh, const std::string& title,
               std::span<const std::pair<std::string, const Vector*>> point_fields) {
  const int n = mesh.n_vertices();
  const int m = mesh.n_triangles();
  char buf[128];

  os << "# vtk DataFile Version 3.0\n";
  os << title << '\n';
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << n << " double\n";
  for (const Point2& p : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g 0\n", p.x, p.y);
    os << buf;
  }
  os << "CELLS " << m << ' ' << 4 * m << '\n';
  for (const auto& tri : mesh.triangles)
    os << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  os << "CELL_TYPES " << m << '\n';
  for (int t = 0; t < m; ++t) os << "5\n";

  if (!point_fields.empty()) {
    os << "POINT_DATA " << n << '\n';
    for (const auto& [name, field] : point_fields) {
      if (static_cast<int>(field->size()) != n)
        throw std::invalid_argument("write_vtk: field '" + name + "' size mismatch");
      os << "SCALARS " << name << " float 1\n";
      os << "LOOKUP_TABLE default\n";
      for (double v : *field) {
        std::snprintf(buf, sizeof buf, "%.9g\n", static_cast<double>(static_cast<float>(v)));
        os << buf;
      }
    }
  }
}

void write_vtk_file(const std::string& path, const TriMesh& mesh, const std::string& title,
                    std::span<const std::pair<std::string, const Vector*>> point_fields) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_vtk(out, mesh, title, point_fields);
}

namespace {

[[noreturn]] void vtk_fail(const std::string& msg) {
  throw std::runtime_error("vtk reader: " + msg);
}

std::string next_token(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) vtk_fail("unexpected end of file");
  return tok;
}

int next_int(std::istream& is) {
  int v;
  if (!(is >> v)) vtk_fail("expected an integer");
  return v;
}

double next_double(std::istream& is) {
  double v;
  if (!(is >> v)) vtk_fail("expected a number");
  return v;
}

void expect_line(std::istream& is, const std::string& want) {
  std::string line;
  do {
    if (!std::getline(is, line)) vtk_fail("missing '" + want + "'");
  } while (line.empty());
  if (line != want) vtk_fail("expected '" + want + "', got '" + line + "'");
}

}  // namespace

VtkGrid read_vtk(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("# vtk DataFile", 0) != 0)
    vtk_fail("not a legacy VTK file");
  if (!std::getline(is, line)) vtk_fail("missing title");
  expect_line(is, "ASCII");
  expect_line(is, "DATASET UNSTRUCTURED_GRID");

  VtkGrid grid;
  if (next_token(is) != "POINTS") vtk_fail("expected POINTS");
  const int n = next_int(is);
  next_token(is);  // point type
  grid.points.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grid.points[i].x = next_double(is);
    grid.points[i].y = next_double(is);
    next_double(is);  // z, ignored
  }

  if (next_token(is) != "CELLS") vtk_fail("expected CELLS");
  const int m = next_int(is);
  next_int(is);  // list length
  grid.triangles.resize(static_cast<std::size_t>(m));
  for (int t = 0; t < m; ++t) {
    if (next_int(is) != 3) vtk_fail("only triangle cells are supported");
    for (int k = 0; k < 3; ++k) grid.triangles[t][k] = next_int(is);
  }
  if (next_token(is) != "CELL_TYPES") vtk_fail("expected CELL_TYPES");
  next_int(is);
  for (int t = 0; t < m; ++t)
    if (next_int(is) != 5) vtk_fail("only VTK_TRIANGLE cells are supported");

  std::string tok;
  if (is >> tok) {
    if (tok != "POINT_DATA") vtk_fail("expected POINT_DATA, got '" + tok + "'");
    if (next_int(is) != n) vtk_fail("POINT_DATA count mismatch");
    while (is >> tok) {
      if (tok != "SCALARS") vtk_fail("expected SCALARS, got '" + tok + "'");
      const std::string name = next_token(is);
      next_token(is);  // data type
      next_token(is);  // components
      if (next_token(is) != "LOOKUP_TABLE") vtk_fail("expected LOOKUP_TABLE");
      next_token(is);
      Vector field(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) field[i] = next_double(is);
      grid.point_fields.emplace_back(name, std::move(field));
    }
  }
  return grid;
}

VtkGrid read_vtk_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_vtk(in);
}

}  // namespace domeheat
