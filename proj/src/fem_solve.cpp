#include "tepml/fem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tepml/errors.hpp"
#include "tepml/quadrature.hpp"

namespace tepml {

namespace {

bool odd_on_node_planes(const HexMesh& mesh, std::size_t node, int comp, int source_column) {
  if (mesh.symmetry != Symmetry::kOctant) return false;
  for (int m = 0; m < 3; ++m)
    if ((mesh.tags[node] & (kTagSymmetry0 << m)) && component_is_odd(comp, source_column, m)) return true;
  return false;
}

struct LocalBasis {
  std::array<double, 8> phi;
  std::array<Vec3, 8> grad;
};

LocalBasis local_basis(const Vec3& lo, const Vec3& hi, const Vec3& x) {
  LocalBasis b;
  const Vec3 len = hi - lo;
  double xi[3];
  for (int j = 0; j < 3; ++j) xi[j] = (x[j] - lo[j]) / len[j];
  for (int v = 0; v < 8; ++v) {
    double f[3], df[3];
    for (int j = 0; j < 3; ++j) {
      const bool up = (v >> j) & 1;
      f[j] = up ? xi[j] : 1.0 - xi[j];
      df[j] = (up ? 1.0 : -1.0) / len[j];
    }
    b.phi[v] = f[0] * f[1] * f[2];
    b.grad[v] = Vec3(df[0] * f[1] * f[2], f[0] * df[1] * f[2], f[0] * f[1] * df[2]);
  }
  return b;
}

}  // namespace

bool component_is_odd(int component, int source_column, int axis) {
  const int flips = (component == axis ? 1 : 0) + (source_column == axis ? 1 : 0);
  return flips % 2 == 1;
}

std::size_t DirichletSet::num_fixed() const {
  std::size_t n = 0;
  for (char f : fixed) n += f ? 1 : 0;
  return n;
}

DirichletSet make_dirichlet(const HexMesh& mesh, std::uint8_t boundary_tags, const PointFunction& g,
                            int source_column) {
  DirichletSet d;
  d.fixed.assign(mesh.num_dofs(), 0);
  d.values = VectorC::Zero(Eigen::Index(mesh.num_dofs()));
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    if (mesh.tags[n] & boundary_tags) {
      const CVec4 v = g ? g(mesh.nodes[n]) : CVec4::Zero();
      for (int c = 0; c < 4; ++c) {
        d.fixed[4 * n + c] = 1;
        d.values[Eigen::Index(4 * n + c)] = v[c];
      }
      continue;
    }
    for (int c = 0; c < 4; ++c)
      if (odd_on_node_planes(mesh, n, c, source_column)) d.fixed[4 * n + c] = 1;
  }
  return d;
}

SolveResult solve(const AssembledSystem& sys, const DirichletSet& dir, const SolveOptions& opt) {
  const SparseMatrixC& K = sys.matrix;
  const Eigen::Index n = K.rows();
  if (Eigen::Index(dir.fixed.size()) != n || dir.values.size() != n)
    throw InvalidParameter("Dirichlet set does not match the system");
  std::vector<int> free_index(std::size_t(n), -1);
  int nf = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!dir.fixed[std::size_t(i)]) free_index[std::size_t(i)] = nf++;

  VectorC g = VectorC::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (dir.fixed[std::size_t(i)]) g[i] = dir.values[i];
  const VectorC rhs_full = sys.load - K * g;
  VectorC b(nf);
  for (Eigen::Index i = 0; i < n; ++i)
    if (free_index[std::size_t(i)] >= 0) b[free_index[std::size_t(i)]] = rhs_full[i];

  SolveResult res;
  res.n_unknowns = std::size_t(nf);
  res.field.mesh = sys.mesh;
  res.field.values = g;
  if (nf == 0) return res;

  // free-free block in compressed column storage
  SparseMatrixC Kff(nf, nf);
  {
    std::vector<int> outer(std::size_t(nf) + 1, 0);
    std::size_t nnz = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (free_index[std::size_t(j)] < 0) continue;
      for (SparseMatrixC::InnerIterator it(K, j); it; ++it)
        if (free_index[std::size_t(it.row())] >= 0) ++nnz;
      outer[std::size_t(free_index[std::size_t(j)]) + 1] = int(nnz);
    }
    Kff.resizeNonZeros(Eigen::Index(nnz));
    std::copy(outer.begin(), outer.end(), Kff.outerIndexPtr());
    std::size_t pos = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (free_index[std::size_t(j)] < 0) continue;
      for (SparseMatrixC::InnerIterator it(K, j); it; ++it) {
        const int r = free_index[std::size_t(it.row())];
        if (r < 0) continue;
        Kff.innerIndexPtr()[pos] = r;
        Kff.valuePtr()[pos] = it.value();
        ++pos;
      }
    }
  }

  const double bnorm = b.norm();
  VectorC x = VectorC::Zero(nf);
  if (bnorm > 0.0) {
    bool solved = false;
    if (opt.solver != SolverKind::kLU) {
      std::vector<int> free_dof(std::size_t(nf), 0);
      for (Eigen::Index i = 0; i < n; ++i)
        if (free_index[std::size_t(i)] >= 0) free_dof[std::size_t(free_index[std::size_t(i)])] = int(i);
      const bool symmetric = sys.thermal_scale != 0.0;
      if (symmetric) {
        // row scale 1/t and column scale t on the thermal unknowns
        const cplx t = sys.thermal_scale;
        VectorC dc = VectorC::Ones(nf);
        for (int k = 0; k < nf; ++k)
          if (free_dof[std::size_t(k)] % 4 == 3) dc[k] = t;
        const VectorC dr = dc.cwiseInverse();
        SparseMatrixC Ks = Kff;
        for (int j = 0; j < nf; ++j)
          for (SparseMatrixC::InnerIterator it(Ks, j); it; ++it) it.valueRef() *= dr[it.row()] * dc[j];
        double asym = 0.0, scale = 0.0;
        {
          const SparseMatrixC Kt = Ks.transpose();
          for (int j = 0; j < nf; ++j) {
            SparseMatrixC::InnerIterator a(Ks, j), bt(Kt, j);
            for (; a && bt; ++a, ++bt) {
              if (a.row() != bt.row()) break;
              asym = std::max(asym, std::abs(a.value() - bt.value()));
              scale = std::max(scale, std::abs(a.value()));
            }
            if (a || bt) asym = std::numeric_limits<double>::infinity();
          }
        }
        if (asym <= 1e-10 * scale) {
          try {
            SymmetricFactor f(Ks, opt.ordering, opt.rcond_threshold);
            res.rcond = f.rcond();
            res.factor_seconds = f.factor_seconds();
            x = dc.cwiseProduct(f.solve(dr.cwiseProduct(b)));
            res.residual = (Kff * x - b).norm() / bnorm;
            solved = res.residual < opt.residual_tolerance;
            res.symmetric_factor = solved;
          } catch (const SolverBreakdown&) {
            if (opt.solver == SolverKind::kSymmetric) throw;
          }
        } else if (opt.solver == SolverKind::kSymmetric) {
          throw SolverBreakdown("scaled system is not complex symmetric", 0.0);
        }
      } else if (opt.solver == SolverKind::kSymmetric) {
        throw SolverBreakdown("system has one-sided thermal coupling and cannot be symmetrized", 0.0);
      }
    }
    if (!solved) {
      SparseLU lu(Kff, opt.ordering, opt.rcond_threshold);
      res.rcond = lu.rcond();
      res.factor_seconds = lu.factor_seconds();
      res.symmetric_factor = false;
      x = lu.solve(b);
      res.residual = (Kff * x - b).norm() / bnorm;
    }
    if (!(res.residual < opt.residual_tolerance))
      throw SolverBreakdown("solve residual " + std::to_string(res.residual) + " exceeds tolerance",
                            res.rcond);
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (free_index[std::size_t(i)] >= 0) res.field.values[i] = x[free_index[std::size_t(i)]];
  return res;
}

VectorC interpolate(const HexMesh& mesh, const PointFunction& f) {
  VectorC v(Eigen::Index(mesh.num_dofs()));
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) v.segment<4>(4 * Eigen::Index(n)) = f(mesh.nodes[n]);
  return v;
}

ColumnField evaluate_in_cell(const HexMesh& mesh, const VectorC& field, std::size_t cell, const Vec3& x) {
  const LocalBasis b = local_basis(mesh.cell_lower(cell), mesh.cell_upper(cell), x);
  ColumnField out;
  out.value.setZero();
  out.grad.setZero();
  for (int a = 0; a < 8; ++a) {
    const CVec4 ua = field.segment<4>(4 * Eigen::Index(mesh.cells[cell][a]));
    out.value += b.phi[a] * ua;
    out.grad += ua * b.grad[a].transpose().cast<cplx>();
  }
  return out;
}

H1Error h1_error(const DiscreteField& field, const PointFieldFunction& exact) {
  const HexMesh& mesh = *field.mesh;
  const GaussRule g = gauss_legendre(3, 0.0, 1.0);
  double err2 = 0.0, ref2 = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    if (!mesh.cell_in_b1(c)) continue;
    const Vec3 lo = mesh.cell_lower(c), len = mesh.cell_upper(c) - lo;
    const double vol = len[0] * len[1] * len[2];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const Vec3 x = lo + Vec3(g.nodes[i] * len[0], g.nodes[j] * len[1], g.nodes[k] * len[2]);
          const double w = vol * g.weights[i] * g.weights[j] * g.weights[k];
          const ColumnField uh = evaluate_in_cell(mesh, field.values, c, x);
          const ColumnField ue = exact(x);
          err2 += w * ((uh.value - ue.value).squaredNorm() + (uh.grad - ue.grad).squaredNorm());
          ref2 += w * (ue.value.squaredNorm() + ue.grad.squaredNorm());
        }
  }
  const double f = mesh.symmetry_factor();
  return {std::sqrt(f * err2), std::sqrt(f * ref2)};
}

DtnResult apply_discrete_dtn_hat(std::shared_ptr<const HexMesh> mesh_ptr, const PointFunction& G,
                                 const MaterialParams& params, const PmlProfile& profile,
                                 FluxRecovery recovery, int source_column, const SolveOptions& opt) {
  const HexMesh& mesh = *mesh_ptr;
  if (mesh.domain != MeshDomain::kPmlLayer) throw InvalidParameter("DtN approximation needs a layer mesh");
  const AssembledSystem sys = assemble_B(mesh_ptr, params, profile);
  DirichletSet dir = make_dirichlet(mesh, kTagInterface | kTagOuter, {}, source_column);
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n)
    if (mesh.tags[n] & kTagInterface) dir.values.segment<4>(4 * Eigen::Index(n)) = G(mesh.nodes[n]);

  DtnResult out;
  out.solve = solve(sys, dir, opt);
  const VectorC& U = out.solve.field.values;
  VectorC flux;
  if (recovery == FluxRecovery::kVariational) flux = sys.matrix * U;

  const auto& l = mesh.l;
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    if (!(mesh.tags[n] & kTagInterface)) continue;
    const Vec3& x = mesh.nodes[n];
    int face_axis = -1, on_faces = 0;
    for (int a = 0; a < 3; ++a)
      if (std::abs(std::abs(x[a]) - l[a]) <= 1e-12) {
        face_axis = a;
        ++on_faces;
      }
    if (on_faces != 1) continue;  // edges and corners of B1
    const int a = face_axis;
    Vec3 nu = Vec3::Zero();
    nu[a] = x[a] > 0 ? -1.0 : 1.0;

    // lumped surface mass from the neighbouring grid lines on the face
    const auto& idx = mesh.node_index[n];
    double w = 1.0;
    for (int t = 0; t < 3; ++t) {
      if (t == a) continue;
      const auto& ln = mesh.lines[t];
      const int i = idx[t];
      double s = 0.0;
      if (i > 0 && std::abs(ln[i - 1]) <= l[t] + 1e-12) s += 0.5 * (ln[i] - ln[i - 1]);
      if (i + 1 < int(ln.size()) && std::abs(ln[i + 1]) <= l[t] + 1e-12) s += 0.5 * (ln[i + 1] - ln[i]);
      w *= s;
    }

    CVec4 val;
    if (recovery == FluxRecovery::kVariational) {
      val = flux.segment<4>(4 * Eigen::Index(n)) / w;
    } else {
      CGrad4 grad = CGrad4::Zero();
      int count = 0;
      for (int dk = -1; dk <= 0; ++dk)
        for (int dj = -1; dj <= 0; ++dj)
          for (int di = -1; di <= 0; ++di) {
            const int c = mesh.cell_at(idx[0] + di, idx[1] + dj, idx[2] + dk);
            if (c < 0) continue;
            grad += evaluate_in_cell(mesh, U, std::size_t(c), x).grad;
            ++count;
          }
      grad /= double(count);
      if (mesh.symmetry == Symmetry::kOctant)
        for (int m = 0; m < 3; ++m) {
          if (!(mesh.tags[n] & (kTagSymmetry0 << m))) continue;
          for (int c = 0; c < 4; ++c) {
            // derivatives that are odd across the plane vanish on it
            for (int k = 0; k < 3; ++k) {
              const bool odd = component_is_odd(c, source_column, m) != (k == m);
              if (odd) grad(c, k) = 0.0;
            }
          }
        }
      val = apply_R(U.segment<4>(4 * Eigen::Index(n)), grad, nu, params);
    }
    for (int c = 0; c < 4; ++c)
      if (odd_on_node_planes(mesh, n, c, source_column)) val[c] = 0.0;
    out.nodes.push_back(int(n));
    out.normals.push_back(nu);
    out.weights.push_back(w);
    out.values.push_back(val);
  }
  return out;
}

}  // namespace tepml
