#include <gtest/gtest.h>

#include "tepml/errors.hpp"
#include "tepml/mesh.hpp"

namespace tepml {
namespace {

const Axes kObstacle{0.4, 0.4, 0.4};

PmlProfile profile(double d) { return PmlProfile::with_ramp_fraction({1, 1, 1}, {d, d, d}, 1.0, 2.5); }

TEST(Mesh, UniformFullDomainCounts) {
  MeshOptions o;
  o.h_target = 0.25;
  const HexMesh m = build_mesh(profile(1.0), kObstacle, o);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(m.lines[j].size(), 19u);
  EXPECT_EQ(m.num_cells(), 18u * 18u * 18u - 64u);
  EXPECT_EQ(m.num_nodes(), 19u * 19u * 19u - 27u);
  EXPECT_NEAR(m.h, 0.25, 1e-12);  // layer cells; 0.2 inside B1
  EXPECT_EQ(m.symmetry_factor(), 1.0);
}

TEST(Mesh, GridLinesContainBreakpoints) {
  MeshOptions o;
  o.h_target = 0.15;
  const HexMesh m = build_mesh(profile(1.0), kObstacle, o);
  for (double b : {-2.0, -1.5, -1.0, -0.4, 0.0, 0.4, 1.0, 1.5, 2.0}) {
    bool found = false;
    for (double x : m.lines[1]) found = found || std::abs(x - b) < 1e-12;
    EXPECT_TRUE(found) << b;
  }
}

TEST(Mesh, BoundaryTags) {
  MeshOptions o;
  o.h_target = 0.25;
  const HexMesh m = build_mesh(profile(1.0), kObstacle, o);
  std::size_t obstacle = 0, outer = 0, interface = 0;
  for (std::size_t n = 0; n < m.num_nodes(); ++n) {
    const Vec3& x = m.nodes[n];
    if (m.tags[n] & kTagObstacle) {
      ++obstacle;
      EXPECT_NEAR(x.cwiseAbs().maxCoeff(), 0.4, 1e-12);
    }
    if (m.tags[n] & kTagOuter) {
      ++outer;
      EXPECT_NEAR(x.cwiseAbs().maxCoeff(), 2.0, 1e-12);
    }
    if (m.tags[n] & kTagInterface) ++interface;
  }
  EXPECT_EQ(obstacle, 5u * 5u * 5u - 27u);
  EXPECT_EQ(outer, 19u * 19u * 19u - 17u * 17u * 17u);
  EXPECT_EQ(interface, 11u * 11u * 11u - 9u * 9u * 9u);
}

TEST(Mesh, OctantKeepsThePositiveCorner) {
  MeshOptions o;
  o.h_target = 0.25;
  o.symmetry = Symmetry::kOctant;
  const HexMesh m = build_mesh(profile(1.0), kObstacle, o);
  EXPECT_EQ(m.num_cells(), 9u * 9u * 9u - 8u);
  EXPECT_EQ(m.symmetry_factor(), 8.0);
  for (std::size_t n = 0; n < m.num_nodes(); ++n) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_GE(m.nodes[n][j], 0.0);
      EXPECT_EQ(bool(m.tags[n] & (kTagSymmetry0 << j)), m.nodes[n][j] == 0.0);
    }
  }
}

TEST(Mesh, LayerDomainExcludesB1) {
  MeshOptions o;
  o.h_target = 0.25;
  o.domain = MeshDomain::kPmlLayer;
  const HexMesh m = build_mesh(profile(1.0), kObstacle, o);
  // no obstacle breakpoints: 8 cells across B1, 4 across each side of the layer
  EXPECT_EQ(m.num_cells(), 16u * 16u * 16u - 8u * 8u * 8u);
  for (std::size_t c = 0; c < m.num_cells(); ++c) EXPECT_FALSE(m.cell_in_b1(c));
}

TEST(Mesh, LayerCellsGrowGeometrically) {
  MeshOptions o;
  o.h_target = 0.1;
  o.h_layer = 0.3;
  o.layer_growth = 1.2;
  o.symmetry = Symmetry::kOctant;
  const HexMesh m = build_mesh(profile(3.0), kObstacle, o);
  const auto& x = m.lines[0];
  double prev = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double w = x[i + 1] - x[i];
    if (x[i + 1] <= 1.0 + 1e-12) {
      EXPECT_LE(w, 0.1 + 1e-12);
    } else {
      EXPECT_LE(w, 0.3 + 1e-12);
      if (x[i] > 1.0 + 1e-12 && std::abs(x[i] - 2.5) > 1e-12) EXPECT_LE(w, 1.3 * prev);
    }
    prev = w;
  }
  // far fewer lines than the uniform mesh of the same interior size
  EXPECT_LE(x.size(), 26u);
  EXPECT_NEAR(m.h, 0.3, 0.05);
}

TEST(Mesh, GridLookups) {
  MeshOptions o;
  o.h_target = 0.5;
  const HexMesh m = build_mesh(profile(1.0), kObstacle, o);
  for (std::size_t n = 0; n < m.num_nodes(); ++n) {
    const auto& g = m.node_index[n];
    EXPECT_EQ(m.node_at(g[0], g[1], g[2]), int(n));
  }
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    const auto& g = m.cell_origin[c];
    EXPECT_EQ(m.cell_at(g[0], g[1], g[2]), int(c));
    EXPECT_EQ(m.nodes[std::size_t(m.cells[c][7])], m.cell_upper(c));
  }
  EXPECT_EQ(m.node_at(-1, 0, 0), -1);
}

TEST(Mesh, RejectsBadInput) {
  MeshOptions o;
  EXPECT_THROW(build_mesh(profile(1.0), {1.2, 0.4, 0.4}, o), InvalidGeometry);
  o.h_target = 0.0;
  EXPECT_THROW(build_mesh(profile(1.0), kObstacle, o), InvalidParameter);
  o.h_target = 0.1;
  o.layer_growth = 0.9;
  EXPECT_THROW(build_mesh(profile(1.0), kObstacle, o), InvalidParameter);
}

}  // namespace
}  // namespace tepml
