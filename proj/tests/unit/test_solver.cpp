#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "tepml/errors.hpp"
#include "tepml/sparse_solver.hpp"

namespace tepml {
namespace {

// Complex symmetric, diagonally dominant 3D Laplacian-like matrix.
SparseMatrixC complex_symmetric(int n, cplx shift) {
  std::vector<Eigen::Triplet<cplx>> t;
  const int m = n * n * n;
  auto id = [n](int i, int j, int k) { return i + n * (j + n * k); };
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int r = id(i, j, k);
        t.emplace_back(r, r, 6.0 + shift);
        if (i + 1 < n) t.emplace_back(r, id(i + 1, j, k), cplx(-1.0, 0.2)), t.emplace_back(id(i + 1, j, k), r, cplx(-1.0, 0.2));
        if (j + 1 < n) t.emplace_back(r, id(i, j + 1, k), -1.0), t.emplace_back(id(i, j + 1, k), r, -1.0);
        if (k + 1 < n) t.emplace_back(r, id(i, j, k + 1), cplx(-1.0, -0.1)), t.emplace_back(id(i, j, k + 1), r, cplx(-1.0, -0.1));
      }
  SparseMatrixC A(m, m);
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

VectorC rhs(Eigen::Index n) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  VectorC b(n);
  for (Eigen::Index i = 0; i < n; ++i) b[i] = cplx(g(rng), g(rng));
  return b;
}

TEST(SparseSolver, LuMatchesDenseSolve) {
  SparseMatrixC A = complex_symmetric(6, cplx(0.3, 0.5));
  A.coeffRef(0, 1) += cplx(0.4, 0.0);  // unsymmetric
  const VectorC b = rhs(A.rows());
  const VectorC ref = Eigen::MatrixXcd(A).partialPivLu().solve(b);
  for (FillOrdering o : {FillOrdering::kAmd, FillOrdering::kMetis}) {
    SparseLU lu(A, o);
    EXPECT_LE((lu.solve(b) - ref).norm(), 1e-12 * ref.norm());
    EXPECT_GT(lu.rcond(), 0.0);
    EXPECT_GT(lu.factor_nonzeros(), double(A.nonZeros()) / 2);
  }
}

TEST(SparseSolver, SymmetricFactorMatchesDenseSolve) {
  const SparseMatrixC A = complex_symmetric(9, cplx(-0.5, 0.8));
  const VectorC b = rhs(A.rows());
  const VectorC ref = Eigen::MatrixXcd(A).partialPivLu().solve(b);
  for (FillOrdering o : {FillOrdering::kAmd, FillOrdering::kMetis}) {
    SymmetricFactor f(A, o);
    EXPECT_LE((f.solve(b) - ref).norm(), 1e-12 * ref.norm());
    EXPECT_GT(f.rcond(), 0.0);
    EXPECT_LE(f.rcond(), 1.0);
  }
}

TEST(SparseSolver, SingularMatrixRaisesBreakdown) {
  SparseMatrixC A = complex_symmetric(4, 0.0);
  // zero out one row and column
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(A, k); it; ++it)
      if (it.row() == 5 || it.col() == 5) it.valueRef() = 0.0;
  EXPECT_THROW(SparseLU lu(A), SolverBreakdown);
  EXPECT_THROW(SymmetricFactor f(A), SolverBreakdown);
}

TEST(SparseSolver, RejectsNonSquare) {
  SparseMatrixC A(3, 4);
  EXPECT_ANY_THROW(SparseLU lu(A));
  EXPECT_ANY_THROW(SymmetricFactor f(A));
}

}  // namespace
}  // namespace tepml
