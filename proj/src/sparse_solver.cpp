#include "tepml/sparse_solver.hpp"

#include <chrono>
#include <sstream>

#include <umfpack.h>

#include "tepml/errors.hpp"

namespace tepml {

namespace {

std::string status_text(int status) {
  std::ostringstream os;
  os << "UMFPACK status " << status;
  return os.str();
}

}  // namespace

SparseLU::SparseLU(const SparseMatrixC& A, FillOrdering ordering, double rcond_threshold) : A_(&A) {
  if (A.rows() != A.cols()) throw InvalidParameter("sparse LU needs a square matrix");
  if (!A.isCompressed()) throw InvalidParameter("sparse LU needs a compressed matrix");
  const auto t0 = std::chrono::steady_clock::now();
  double control[UMFPACK_CONTROL], info[UMFPACK_INFO];
  umfpack_zi_defaults(control);
  control[UMFPACK_ORDERING] =
      ordering == FillOrdering::kMetis ? UMFPACK_ORDERING_METIS : UMFPACK_ORDERING_AMD;
  control[UMFPACK_STRATEGY] = UMFPACK_STRATEGY_SYMMETRIC;
  const int n = int(A.rows());
  const double* ax = reinterpret_cast<const double*>(A.valuePtr());
  void* symbolic = nullptr;
  int status = umfpack_zi_symbolic(n, n, A.outerIndexPtr(), A.innerIndexPtr(), ax, nullptr, &symbolic,
                                   control, info);
  if (status != UMFPACK_OK) {
    if (symbolic) umfpack_zi_free_symbolic(&symbolic);
    throw SolverBreakdown("symbolic factorization failed: " + status_text(status), 0.0);
  }
  status = umfpack_zi_numeric(A.outerIndexPtr(), A.innerIndexPtr(), ax, nullptr, symbolic, &numeric_,
                              control, info);
  umfpack_zi_free_symbolic(&symbolic);
  rcond_ = info[UMFPACK_RCOND];
  lu_nnz_ = info[UMFPACK_LNZ] + info[UMFPACK_UNZ];
  peak_bytes_ = info[UMFPACK_PEAK_MEMORY] * info[UMFPACK_SIZE_OF_UNIT];
  factor_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (status == UMFPACK_WARNING_singular_matrix || (status == UMFPACK_OK && !(rcond_ > rcond_threshold))) {
    if (numeric_) umfpack_zi_free_numeric(&numeric_);
    std::ostringstream os;
    os << "matrix is numerically singular (reciprocal condition estimate " << rcond_ << ")";
    throw SolverBreakdown(os.str(), rcond_);
  }
  if (status != UMFPACK_OK) {
    if (numeric_) umfpack_zi_free_numeric(&numeric_);
    throw SolverBreakdown("numeric factorization failed: " + status_text(status), rcond_);
  }
}

SparseLU::~SparseLU() {
  if (numeric_) umfpack_zi_free_numeric(&numeric_);
}

VectorC SparseLU::solve(const VectorC& b) const {
  if (b.size() != A_->rows()) throw InvalidParameter("right-hand side has the wrong length");
  VectorC x(b.size());
  double control[UMFPACK_CONTROL], info[UMFPACK_INFO];
  umfpack_zi_defaults(control);
  const int status = umfpack_zi_solve(
      UMFPACK_A, A_->outerIndexPtr(), A_->innerIndexPtr(), reinterpret_cast<const double*>(A_->valuePtr()),
      nullptr, reinterpret_cast<double*>(x.data()), nullptr, reinterpret_cast<const double*>(b.data()),
      nullptr, numeric_, control, info);
  if (status != UMFPACK_OK) throw SolverBreakdown("triangular solve failed: " + status_text(status), rcond_);
  return x;
}

}  // namespace tepml
