#include "tepml/field_io.hpp"

#include <fstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "tepml/errors.hpp"

namespace tepml {

void write_vtk(const std::string& path, const DiscreteField& field) {
  if (!field.mesh) throw PreconditionFailed("field has no mesh");
  const HexMesh& mesh = *field.mesh;
  if (field.values.size() != Eigen::Index(mesh.num_dofs()))
    throw PreconditionFailed("field size does not match the mesh");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open VTK file for writing: " + path);

  // VTK hexahedron order from the lexicographic corner order
  static constexpr int kOrder[8] = {0, 1, 3, 2, 4, 5, 7, 6};
  const std::size_t nn = mesh.num_nodes(), nc = mesh.num_cells();
  fmt::print(out, "# vtk DataFile Version 3.0\ntepml field\nASCII\nDATASET UNSTRUCTURED_GRID\n");
  fmt::print(out, "POINTS {} double\n", nn);
  for (const auto& x : mesh.nodes) fmt::print(out, "{} {} {}\n", x[0], x[1], x[2]);
  fmt::print(out, "CELLS {} {}\n", nc, 9 * nc);
  for (const auto& c : mesh.cells) {
    fmt::print(out, "8");
    for (int v : kOrder) fmt::print(out, " {}", c[v]);
    fmt::print(out, "\n");
  }
  fmt::print(out, "CELL_TYPES {}\n", nc);
  for (std::size_t c = 0; c < nc; ++c) fmt::print(out, "12\n");
  fmt::print(out, "CELL_DATA {}\nSCALARS in_b1 int 1\nLOOKUP_TABLE default\n", nc);
  for (std::size_t c = 0; c < nc; ++c) fmt::print(out, "{}\n", mesh.cell_in_b1(c) ? 1 : 0);

  fmt::print(out, "POINT_DATA {}\n", nn);
  for (int part = 0; part < 2; ++part) {
    const char* suffix = part == 0 ? "re" : "im";
    const auto pick = [part](cplx z) { return part == 0 ? z.real() : z.imag(); };
    fmt::print(out, "VECTORS u_{} double\n", suffix);
    for (std::size_t n = 0; n < nn; ++n) {
      const CVec4 v = field.at_node(n);
      fmt::print(out, "{} {} {}\n", pick(v[0]), pick(v[1]), pick(v[2]));
    }
    fmt::print(out, "SCALARS p_{} double 1\nLOOKUP_TABLE default\n", suffix);
    for (std::size_t n = 0; n < nn; ++n) fmt::print(out, "{}\n", pick(field.at_node(n)[3]));
  }
  out.flush();
  if (!out) throw IoError("failed writing VTK file: " + path);
}

}  // namespace tepml
