#pragma once

#include <string>
#include <vector>

#include "tepml/assembly.hpp"

namespace tepml {

enum class FillOrdering { kAmd, kMetis };

/// Complex unsymmetric sparse LU (UMFPACK). The factorization is computed in
/// the constructor; a singular or numerically singular matrix raises
/// SolverBreakdown carrying the reciprocal condition estimate.
class SparseLU {
 public:
  explicit SparseLU(const SparseMatrixC& A, FillOrdering ordering = FillOrdering::kMetis,
                    double rcond_threshold = 1e-14);
  ~SparseLU();
  SparseLU(const SparseLU&) = delete;
  SparseLU& operator=(const SparseLU&) = delete;

  VectorC solve(const VectorC& b) const;

  /// Reciprocal condition estimate (ratio of smallest to largest pivot).
  double rcond() const { return rcond_; }
  double factor_seconds() const { return factor_seconds_; }
  /// Nonzeros in L plus U.
  double factor_nonzeros() const { return lu_nnz_; }
  double peak_memory_bytes() const { return peak_bytes_; }

 private:
  const SparseMatrixC* A_;
  void* numeric_ = nullptr;
  double rcond_ = 0.0;
  double factor_seconds_ = 0.0;
  double lu_nnz_ = 0.0;
  double peak_bytes_ = 0.0;
};

/// Supernodal factorization P A P^T = L L^T of a complex symmetric matrix
/// (transpose, not conjugate transpose) without pivoting. The fill-reducing
/// ordering and supernodal structure come from CHOLMOD; the numeric phase
/// uses dense BLAS kernels on the supernode panels. A zero pivot, or a pivot
/// ratio below rcond_threshold, raises SolverBreakdown.
class SymmetricFactor {
 public:
  /// A must store both triangles; only the lower one is read.
  explicit SymmetricFactor(const SparseMatrixC& A, FillOrdering ordering = FillOrdering::kMetis,
                           double rcond_threshold = 1e-14);

  VectorC solve(const VectorC& b) const;

  /// min |pivot| / max |pivot| over the squared diagonal of L.
  double rcond() const { return rcond_; }
  double factor_seconds() const { return factor_seconds_; }
  /// Stored entries of L (including explicit zeros of relaxed supernodes).
  double factor_nonzeros() const { return double(x_.size()); }

 private:
  int n_ = 0;
  std::vector<int> perm_;   // row k of L is row perm_[k] of A
  std::vector<int> super_;  // first column of each supernode
  std::vector<int> pi_;     // start of each supernode's row pattern in s_
  std::vector<std::size_t> px_;  // start of each supernode's panel in x_
  std::vector<int> s_;      // row patterns
  std::vector<cplx> x_;     // column-major panels
  double rcond_ = 0.0;
  double factor_seconds_ = 0.0;
};

}  // namespace tepml
