#include "tepml/assembly.hpp"

#include <algorithm>
#include <array>

#include "tepml/errors.hpp"
#include "tepml/parallel.hpp"

namespace tepml {

namespace {

constexpr double kGauss2[2] = {0.5 - 0.28867513459481288225, 0.5 + 0.28867513459481288225};

// Trilinear basis on an axis-aligned cell at one Gauss point.
struct BasisPoint {
  Vec3 x;
  double weight;
  std::array<double, 8> phi;
  std::array<Vec3, 8> grad;
};

std::array<BasisPoint, 8> cell_basis(const Vec3& lo, const Vec3& hi) {
  const Vec3 len = hi - lo;
  const double vol = len[0] * len[1] * len[2];
  std::array<BasisPoint, 8> pts;
  for (int g = 0; g < 8; ++g) {
    const double xi[3] = {kGauss2[g & 1], kGauss2[(g >> 1) & 1], kGauss2[(g >> 2) & 1]};
    BasisPoint& bp = pts[g];
    for (int j = 0; j < 3; ++j) bp.x[j] = lo[j] + xi[j] * len[j];
    bp.weight = vol / 8.0;
    for (int v = 0; v < 8; ++v) {
      double f[3], df[3];
      for (int j = 0; j < 3; ++j) {
        const bool up = (v >> j) & 1;
        f[j] = up ? xi[j] : 1.0 - xi[j];
        df[j] = (up ? 1.0 : -1.0) / len[j];
      }
      bp.phi[v] = f[0] * f[1] * f[2];
      bp.grad[v] = Vec3(df[0] * f[1] * f[2], f[0] * df[1] * f[2], f[0] * f[1] * df[2]);
    }
  }
  return pts;
}

using ElementMatrix = Eigen::Matrix<cplx, 32, 32>;

// Row 4a + c (test node a, component c), column 4b + c' (trial node b).
void element_matrix(const HexMesh& mesh, std::size_t cell, const MaterialParams& p,
                    const PmlProfile& profile, FormPart part, ElementMatrix& E) {
  E.setZero();
  const auto pts = cell_basis(mesh.cell_lower(cell), mesh.cell_upper(cell));
  const double lam = p.lame_lambda, mu = p.lame_mu;
  const cplx rw2 = p.rho * p.omega * p.omega, q = p.q(), iwe = I * p.omega * p.eta;
  const bool full = part == FormPart::kFull;
  for (const auto& bp : pts) {
    const PmlMatrices m = pml_matrices(profile, bp.x);
    const double w = bp.weight;
    for (int a = 0; a < 8; ++a) {
      const Vec3& ga = bp.grad[a];
      for (int b = 0; b < 8; ++b) {
        const Vec3& gb = bp.grad[b];
        const double pa_pb = bp.phi[a] * bp.phi[b];
        cplx kgg = 0.0;
        for (int k = 0; k < 3; ++k) kgg += m.K[k] * gb[k] * ga[k];
        for (int c = 0; c < 3; ++c)
          for (int cp = 0; cp < 3; ++cp) {
            cplx v = mu * m.B[c] * m.A[cp] * gb[c] * ga[cp] + lam * m.A[c] * m.B[cp] * ga[c] * gb[cp];
            if (c == cp) {
              v += mu * kgg;
              if (full) v -= rw2 * m.J * pa_pb;
            }
            E(4 * a + c, 4 * b + cp) += w * v;
          }
        cplx vpp = kgg;
        if (full) {
          vpp -= q * m.J * pa_pb;
          for (int c = 0; c < 3; ++c) {
            E(4 * a + c, 4 * b + 3) += w * (-p.gamma * bp.phi[b] * m.A[c] * ga[c]);
            E(4 * a + 3, 4 * b + c) += w * (-iwe * bp.phi[a] * m.A[c] * gb[c]);
          }
        }
        E(4 * a + 3, 4 * b + 3) += w * vpp;
      }
    }
  }
}

// CSC pattern with 4x4 node blocks; rows of one node are contiguous.
struct BlockPattern {
  std::vector<std::vector<int>> neighbors;  // sorted node neighbors (including self)
  std::vector<int> col_start;               // per dof column
};

BlockPattern build_pattern(const HexMesh& mesh) {
  BlockPattern bp;
  bp.neighbors.resize(mesh.num_nodes());
  for (const auto& cell : mesh.cells)
    for (int a : cell)
      for (int b : cell) bp.neighbors[a].push_back(b);
  for (auto& nb : bp.neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return bp;
}

template <class ElementFn>
SparseMatrixC assemble_with(const HexMesh& mesh, const ElementFn& element) {
  const BlockPattern pat = build_pattern(mesh);
  const std::size_t nn = mesh.num_nodes(), ndof = 4 * nn;
  SparseMatrixC M(static_cast<Eigen::Index>(ndof), static_cast<Eigen::Index>(ndof));
  std::vector<int> outer(ndof + 1, 0);
  for (std::size_t b = 0; b < nn; ++b)
    for (int c = 0; c < 4; ++c) outer[4 * b + c + 1] = int(4 * pat.neighbors[b].size());
  for (std::size_t i = 0; i < ndof; ++i) outer[i + 1] += outer[i];
  const std::size_t nnz = std::size_t(outer[ndof]);
  M.resizeNonZeros(Eigen::Index(nnz));
  std::copy(outer.begin(), outer.end(), M.outerIndexPtr());
  int* inner = M.innerIndexPtr();
  cplx* val = M.valuePtr();
  for (std::size_t b = 0; b < nn; ++b)
    for (int c = 0; c < 4; ++c) {
      int pos = outer[4 * b + c];
      for (int a : pat.neighbors[b])
        for (int r = 0; r < 4; ++r) inner[pos++] = 4 * a + r;
    }
  std::fill(val, val + nnz, cplx(0.0));

  // Cells of one parity color share no nodes, so each color can be
  // accumulated concurrently without races and in a fixed order per entry.
  std::array<std::vector<std::size_t>, 8> colors;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto& o = mesh.cell_origin[c];
    colors[(o[0] & 1) | ((o[1] & 1) << 1) | ((o[2] & 1) << 2)].push_back(c);
  }
  for (const auto& color : colors) {
    parallel_for(color.size(), [&](std::size_t idx) {
      const std::size_t cell = color[idx];
      ElementMatrix E;
      element(cell, E);
      const auto& nodes = mesh.cells[cell];
      for (int b = 0; b < 8; ++b) {
        const auto& nb = pat.neighbors[nodes[b]];
        for (int a = 0; a < 8; ++a) {
          const int slot = int(std::lower_bound(nb.begin(), nb.end(), nodes[a]) - nb.begin());
          for (int cp = 0; cp < 4; ++cp) {
            cplx* col = val + outer[4 * std::size_t(nodes[b]) + cp] + 4 * slot;
            for (int c = 0; c < 4; ++c) col[c] += E(4 * a + c, 4 * b + cp);
          }
        }
      }
    });
  }
  return M;
}

}  // namespace

SparseMatrixC assemble_form(const HexMesh& mesh, const MaterialParams& params,
                            const PmlProfile& profile, FormPart part) {
  return assemble_with(mesh, [&](std::size_t cell, ElementMatrix& E) {
    element_matrix(mesh, cell, params, profile, part, E);
  });
}

SparseMatrixC assemble_component_stiffness(const HexMesh& mesh) {
  return assemble_with(mesh, [&](std::size_t cell, ElementMatrix& E) {
    E.setZero();
    for (const auto& bp : cell_basis(mesh.cell_lower(cell), mesh.cell_upper(cell)))
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
          const double v = bp.weight * bp.grad[a].dot(bp.grad[b]);
          for (int c = 0; c < 4; ++c) E(4 * a + c, 4 * b + c) += v;
        }
  });
}

SparseMatrixC assemble_component_mass(const HexMesh& mesh) {
  return assemble_with(mesh, [&](std::size_t cell, ElementMatrix& E) {
    E.setZero();
    for (const auto& bp : cell_basis(mesh.cell_lower(cell), mesh.cell_upper(cell)))
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
          const double v = bp.weight * bp.phi[a] * bp.phi[b];
          for (int c = 0; c < 4; ++c) E(4 * a + c, 4 * b + c) += v;
        }
  });
}

AssembledSystem assemble_B(std::shared_ptr<const HexMesh> mesh, const MaterialParams& params,
                           const PmlProfile& profile, const VolumeSource& source) {
  AssembledSystem sys;
  sys.matrix = assemble_form(*mesh, params, profile, FormPart::kFull);
  sys.load = VectorC::Zero(Eigen::Index(mesh->num_dofs()));
  if (source) {
    for (std::size_t c = 0; c < mesh->num_cells(); ++c) {
      const auto pts = cell_basis(mesh->cell_lower(c), mesh->cell_upper(c));
      for (const auto& bp : pts) {
        const CVec4 Q = source(bp.x);
        for (int a = 0; a < 8; ++a)
          sys.load.segment<4>(4 * mesh->cells[c][a]) -= bp.weight * bp.phi[a] * Q;
      }
    }
  }
  if (params.gamma != 0.0 && params.eta != 0.0)
    sys.thermal_scale = std::sqrt(I * params.omega * params.eta / params.gamma);
  sys.mesh = std::move(mesh);
  return sys;
}

cplx evaluate_form(const HexMesh& mesh, const MaterialParams& p, const PmlProfile& profile,
                   const VectorC& trial, const VectorC& test, FormPart part) {
  if (trial.size() != Eigen::Index(mesh.num_dofs()) || test.size() != trial.size())
    throw InvalidParameter("field length does not match the mesh");
  const bool full = part == FormPart::kFull;
  cplx total = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto pts = cell_basis(mesh.cell_lower(c), mesh.cell_upper(c));
    for (const auto& bp : pts) {
      CVec4 U = CVec4::Zero(), V = CVec4::Zero();
      CGrad4 gU = CGrad4::Zero(), gV = CGrad4::Zero();
      for (int a = 0; a < 8; ++a) {
        const auto n = mesh.cells[c][a];
        const CVec4 ua = trial.segment<4>(4 * n), va = test.segment<4>(4 * n);
        U += bp.phi[a] * ua;
        V += bp.phi[a] * va;
        gU += ua * bp.grad[a].transpose().cast<cplx>();
        gV += va * bp.grad[a].transpose().cast<cplx>();
      }
      const PmlMatrices m = pml_matrices(profile, bp.x);
      const CMat3 A = m.A.asDiagonal(), B = m.B.asDiagonal(), K = m.K.asDiagonal();
      const CMat3 Du = gU.topRows<3>(), Dv = gV.topRows<3>();
      const CMat3 eps = 0.5 * (Du * B + B * Du.transpose());
      const CMat3 sigma = 2.0 * p.lame_mu * eps + p.lame_lambda * eps.trace() * CMat3::Identity();
      const CVec3 gp = gU.row(3).transpose(), gq = gV.row(3).transpose();
      cplx val = (sigma * A).cwiseProduct(Dv.conjugate()).sum() + gq.dot(K * gp);
      if (full) {
        const CVec3 u = U.head<3>(), v = V.head<3>();
        const cplx div_Au = (A * Du).trace();
        const cplx div_Av_conj = (A * Dv.conjugate()).trace();
        val += -p.rho * p.omega * p.omega * m.J * (u.transpose() * v.conjugate())(0, 0);
        val += -p.gamma * U[3] * div_Av_conj;
        val += -p.q() * m.J * U[3] * std::conj(V[3]);
        val += -I * p.omega * p.eta * std::conj(V[3]) * div_Au;
      }
      total += bp.weight * val;
    }
  }
  return total;
}

FieldNorms field_norms(const HexMesh& mesh, const VectorC& field) {
  if (field.size() != Eigen::Index(mesh.num_dofs()))
    throw InvalidParameter("field length does not match the mesh");
  FieldNorms n;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const auto pts = cell_basis(mesh.cell_lower(c), mesh.cell_upper(c));
    for (const auto& bp : pts) {
      CVec4 U = CVec4::Zero();
      CGrad4 gU = CGrad4::Zero();
      for (int a = 0; a < 8; ++a) {
        const CVec4 ua = field.segment<4>(4 * mesh.cells[c][a]);
        U += bp.phi[a] * ua;
        gU += ua * bp.grad[a].transpose().cast<cplx>();
      }
      n.grad_u2 += bp.weight * gU.topRows<3>().squaredNorm();
      n.grad_p2 += bp.weight * gU.row(3).squaredNorm();
      n.u2 += bp.weight * U.head<3>().squaredNorm();
      n.p2 += bp.weight * std::norm(U[3]);
    }
  }
  return n;
}

}  // namespace tepml
