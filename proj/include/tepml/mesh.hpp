#pragma once

/**
 * @file mesh.hpp
 * @brief Structured hexahedral meshes of B2 minus a box obstacle (Omega2) or
 * of the PML layer B2 minus B1, optionally reduced to the positive octant.
 */

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "tepml/pml_geometry.hpp"
#include "tepml/types.hpp"

namespace tepml {

enum class MeshDomain { kOmega2, kPmlLayer };

/// kOctant keeps x_j >= 0 only; valid for fields with reflection parity in
/// every coordinate (sources at the center of a centered geometry).
enum class Symmetry { kNone, kOctant };

enum NodeTag : std::uint8_t {
  kTagObstacle = 1,   ///< on the obstacle surface
  kTagOuter = 2,      ///< on the outer boundary of B2
  kTagInterface = 4,  ///< on the surface of B1
  kTagSymmetry0 = 8,  ///< on the plane x_0 = 0 (octant meshes)
  kTagSymmetry1 = 16,
  kTagSymmetry2 = 32,
};

struct MeshOptions {
  double h_target = 0.1;  ///< maximum cell edge length inside B1
  /// Maximum cell edge length outside B1 (the PML layer). Values up to
  /// h_target give a uniform mesh; larger values let the layer cells grow
  /// from h_target at the B1 surface by about layer_growth per cell.
  double h_layer = 0.0;
  double layer_growth = 1.2;
  MeshDomain domain = MeshDomain::kOmega2;
  Symmetry symmetry = Symmetry::kNone;
};

class HexMesh {
 public:
  std::array<std::vector<double>, 3> lines;  ///< grid lines per axis, ascending
  std::vector<Vec3> nodes;
  std::vector<std::array<int, 8>> cells;        ///< lexicographic corner order (x fastest)
  std::vector<std::array<int, 3>> cell_origin;  ///< grid index of each cell's lower corner
  std::vector<std::uint8_t> tags;
  double h = 0.0;  ///< longest cell edge
  MeshDomain domain = MeshDomain::kOmega2;
  Symmetry symmetry = Symmetry::kNone;
  Axes obstacle{};
  Axes l{};
  Axes outer{};

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_cells() const { return cells.size(); }
  std::size_t num_dofs() const { return 4 * nodes.size(); }

  /// Node id at grid index (i, j, k) or -1 when the node is not in the mesh.
  int node_at(int i, int j, int k) const;

  Vec3 cell_lower(std::size_t c) const;
  Vec3 cell_upper(std::size_t c) const;
  Vec3 cell_center(std::size_t c) const { return 0.5 * (cell_lower(c) + cell_upper(c)); }
  /// True when the cell lies inside B1 (the physical region Omega1 for kOmega2).
  bool cell_in_b1(std::size_t c) const;

  /// Integrals over the mesh equal this factor times the full-domain value
  /// for reflection-symmetric integrands (1, or 8 on octant meshes).
  double symmetry_factor() const { return symmetry == Symmetry::kOctant ? 8.0 : 1.0; }

  std::array<int, 3> grid_size() const {
    return {int(lines[0].size()), int(lines[1].size()), int(lines[2].size())};
  }

  std::vector<int> grid_to_node;  ///< flattened (i + nx (j + ny k)) -> node id or -1
  std::vector<std::array<int, 3>> node_index;  ///< grid index of each node
  std::vector<int> grid_to_cell;  ///< flattened cell grid index -> cell id or -1

  /// Cell id with lower grid corner (i, j, k) or -1.
  int cell_at(int i, int j, int k) const;
};

/// Grid lines contain every breakpoint (obstacle faces, l_j, lbar_j,
/// l_j + d_j, and 0) and split each gap uniformly. Throws InvalidGeometry
/// unless the obstacle lies strictly inside B1.
HexMesh build_mesh(const PmlProfile& profile, const Axes& obstacle, const MeshOptions& options);

}  // namespace tepml
