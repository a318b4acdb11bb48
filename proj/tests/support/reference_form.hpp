#pragma once

// Straightforward assembly of the unstretched thermoelastic form
//   int sigma(u) : grad v - rho omega^2 u . v - gamma p div v
//     + grad p . grad q - q p q - i omega eta q div u
// on trilinear hexahedra, written independently of the library assembly.

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/SparseCore>

#include "tepml/assembly.hpp"

namespace tepml::testing {

inline SparseMatrixC reference_thermoelastic_matrix(const HexMesh& mesh, const MaterialParams& p) {
  const double g = 1.0 / std::sqrt(3.0);
  const cplx rho_w2 = p.rho * p.omega * p.omega;
  const cplx q = I * p.omega / p.kappa;
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const Vec3 lo = mesh.cell_lower(c), hi = mesh.cell_upper(c);
    const Vec3 len = hi - lo;
    const double jac = len.prod() / 8.0;
    std::array<std::array<cplx, 32>, 32> E{};
    for (int gp = 0; gp < 8; ++gp) {
      const double xi[3] = {(gp & 1) ? g : -g, (gp & 2) ? g : -g, (gp & 4) ? g : -g};
      double phi[8];
      Vec3 dphi[8];
      for (int a = 0; a < 8; ++a) {
        double f[3], df[3];
        for (int j = 0; j < 3; ++j) {
          const double s = ((a >> j) & 1) ? 1.0 : -1.0;
          f[j] = 0.5 * (1.0 + s * xi[j]);
          df[j] = s / len[j];
        }
        phi[a] = f[0] * f[1] * f[2];
        dphi[a] = Vec3(df[0] * f[1] * f[2], f[0] * df[1] * f[2], f[0] * f[1] * df[2]);
      }
      for (int a = 0; a < 8; ++a)      // trial node
        for (int b = 0; b < 8; ++b) {  // test node
          const double dd = dphi[a].dot(dphi[b]), mm = phi[a] * phi[b];
          for (int ci = 0; ci < 4; ++ci)    // trial component
            for (int ei = 0; ei < 4; ++ei) {  // test component
              cplx v = 0.0;
              if (ci < 3 && ei < 3) {
                v = p.lame_lambda * dphi[a][ci] * dphi[b][ei] +
                    p.lame_mu * ((ci == ei ? dd : 0.0) + dphi[a][ei] * dphi[b][ci]);
                if (ci == ei) v -= rho_w2 * mm;
              } else if (ci == 3 && ei < 3) {
                v = -p.gamma * phi[a] * dphi[b][ei];
              } else if (ci < 3 && ei == 3) {
                v = -I * p.omega * p.eta * phi[b] * dphi[a][ci];
              } else {
                v = dd - q * mm;
              }
              E[4 * b + ei][4 * a + ci] += jac * v;
            }
        }
    }
    for (int r = 0; r < 32; ++r)
      for (int s = 0; s < 32; ++s)
        trip.emplace_back(4 * mesh.cells[c][r / 4] + r % 4, 4 * mesh.cells[c][s / 4] + s % 4, E[r][s]);
  }
  const auto n = Eigen::Index(mesh.num_dofs());
  SparseMatrixC K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

}  // namespace tepml::testing
