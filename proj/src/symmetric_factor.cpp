#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <new>
#include <sstream>

#include <cblas.h>
#include <cholmod.h>

#include "tepml/errors.hpp"
#include "tepml/sparse_solver.hpp"

namespace tepml {

namespace {

constexpr int kBlock = 48;

// C = alpha * A * B^T + beta * C (plain transpose).
void gemm_nt(int m, int n, int k, cplx alpha, const cplx* A, int lda, const cplx* B, int ldb, cplx beta,
             cplx* C, int ldc) {
  cblas_zgemm(CblasColMajor, CblasNoTrans, CblasTrans, m, n, k, &alpha, A, lda, B, ldb, &beta, C, ldc);
}

struct PivotRange {
  double min = std::numeric_limits<double>::infinity();
  double max = 0.0;
};

// In-place L L^T of the nscol leading columns of an nsrow x nscol panel. The
// rows below the diagonal block receive L21 = A21 L11^{-T}.
void factor_panel(cplx* A, int nsrow, int nscol, PivotRange& piv) {
  for (int kb = 0; kb < nscol; kb += kBlock) {
    const int nb = std::min(kBlock, nscol - kb);
    for (int k = kb; k < kb + nb; ++k) {
      cplx* colk = A + std::size_t(k) * nsrow;
      const double mag = std::abs(colk[k]);
      piv.min = std::min(piv.min, mag);
      piv.max = std::max(piv.max, mag);
      if (mag == 0.0) throw SolverBreakdown("zero pivot in symmetric factorization", 0.0);
      const cplx lkk = std::sqrt(colk[k]);
      colk[k] = lkk;
      const cplx inv = 1.0 / lkk;
      for (int i = k + 1; i < nsrow; ++i) colk[i] *= inv;
      for (int j = k + 1; j < kb + nb; ++j) {
        const cplx ljk = colk[j];
        cplx* colj = A + std::size_t(j) * nsrow;
        for (int i = j; i < nsrow; ++i) colj[i] -= colk[i] * ljk;
      }
    }
    const int rest = kb + nb;
    if (rest < nscol) {
      cplx* Ab = A + std::size_t(kb) * nsrow + rest;
      gemm_nt(nsrow - rest, nscol - rest, nb, -1.0, Ab, nsrow, Ab, nsrow, 1.0,
              A + std::size_t(rest) * nsrow + rest, nsrow);
    }
  }
}

struct CholmodSymbolic {
  cholmod_common common;
  cholmod_sparse* pattern = nullptr;
  cholmod_factor* factor = nullptr;

  CholmodSymbolic() { cholmod_start(&common); }
  ~CholmodSymbolic() {
    if (factor) cholmod_free_factor(&factor, &common);
    if (pattern) cholmod_free_sparse(&pattern, &common);
    cholmod_finish(&common);
  }
};

}  // namespace

SymmetricFactor::SymmetricFactor(const SparseMatrixC& A, FillOrdering ordering, double rcond_threshold) {
  if (A.rows() != A.cols()) throw InvalidParameter("symmetric factorization needs a square matrix");
  if (!A.isCompressed()) throw InvalidParameter("symmetric factorization needs a compressed matrix");
  const auto t0 = std::chrono::steady_clock::now();
  n_ = int(A.rows());

  // lower-triangle pattern for the symbolic analysis
  std::size_t nnz_lower = 0;
  for (int j = 0; j < n_; ++j)
    for (SparseMatrixC::InnerIterator it(A, j); it; ++it)
      if (it.row() >= j) ++nnz_lower;

  CholmodSymbolic chol;
  chol.common.supernodal = CHOLMOD_SUPERNODAL;
  chol.common.nmethods = 1;
  chol.common.method[0].ordering = ordering == FillOrdering::kMetis ? CHOLMOD_METIS : CHOLMOD_AMD;
  chol.common.postorder = 1;
  chol.pattern = cholmod_allocate_sparse(std::size_t(n_), std::size_t(n_), nnz_lower, 1, 1, -1,
                                         CHOLMOD_PATTERN, &chol.common);
  if (!chol.pattern) throw SolverBreakdown("symbolic analysis: allocation failed", 0.0);
  {
    int* Sp = static_cast<int*>(chol.pattern->p);
    int* Si = static_cast<int*>(chol.pattern->i);
    std::size_t pos = 0;
    for (int j = 0; j < n_; ++j) {
      Sp[j] = int(pos);
      for (SparseMatrixC::InnerIterator it(A, j); it; ++it)
        if (it.row() >= j) Si[pos++] = int(it.row());
    }
    Sp[n_] = int(pos);
  }
  chol.factor = cholmod_analyze(chol.pattern, &chol.common);
  if (!chol.factor || chol.common.status != CHOLMOD_OK || !chol.factor->is_super)
    throw SolverBreakdown("symbolic analysis failed", 0.0);

  const cholmod_factor* L = chol.factor;
  const int nsuper = int(L->nsuper);
  const int* Lperm = static_cast<const int*>(L->Perm);
  const int* Lsuper = static_cast<const int*>(L->super);
  const int* Lpi = static_cast<const int*>(L->pi);
  const int* Lpx = static_cast<const int*>(L->px);
  const int* Ls = static_cast<const int*>(L->s);
  perm_.assign(Lperm, Lperm + n_);
  super_.assign(Lsuper, Lsuper + nsuper + 1);
  pi_.assign(Lpi, Lpi + nsuper + 1);
  px_.assign(Lpx, Lpx + nsuper + 1);
  s_.assign(Ls, Ls + Lpi[nsuper]);
  try {
    x_.assign(L->xsize, cplx(0.0));
  } catch (const std::bad_alloc&) {
    std::ostringstream os;
    os << "symmetric factorization needs " << double(L->xsize) * sizeof(cplx) / 1e9 << " GB for the factor";
    throw SolverBreakdown(os.str(), 0.0);
  }

  // lower triangle of P A P^T by columns
  std::vector<int> pinv(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) pinv[std::size_t(perm_[std::size_t(k)])] = k;
  std::vector<int> cp(std::size_t(n_) + 1, 0);
  for (int j = 0; j < n_; ++j)
    for (SparseMatrixC::InnerIterator it(A, j); it; ++it) {
      const int r = pinv[std::size_t(it.row())], c = pinv[std::size_t(j)];
      if (r >= c) ++cp[std::size_t(c) + 1];
    }
  for (int k = 0; k < n_; ++k) cp[std::size_t(k) + 1] += cp[std::size_t(k)];
  std::vector<int> ci(std::size_t(cp.back()));
  std::vector<cplx> cv(std::size_t(cp.back()));
  {
    std::vector<int> fill(cp.begin(), cp.end() - 1);
    for (int j = 0; j < n_; ++j)
      for (SparseMatrixC::InnerIterator it(A, j); it; ++it) {
        const int r = pinv[std::size_t(it.row())], c = pinv[std::size_t(j)];
        if (r < c) continue;
        const int p = fill[std::size_t(c)]++;
        ci[std::size_t(p)] = r;
        cv[std::size_t(p)] = it.value();
      }
  }

  // left-looking supernodal numeric factorization
  std::vector<int> supermap(static_cast<std::size_t>(n_));
  for (int s = 0; s < nsuper; ++s)
    for (int k = super_[std::size_t(s)]; k < super_[std::size_t(s) + 1]; ++k) supermap[std::size_t(k)] = s;
  std::vector<int> head(std::size_t(nsuper), -1), next(std::size_t(nsuper), -1), lpos(std::size_t(nsuper), 0);
  std::vector<int> map(std::size_t(n_), -1);
  std::vector<cplx> C;
  PivotRange piv;
  for (int s = 0; s < nsuper; ++s) {
    const int k1 = super_[std::size_t(s)], k2 = super_[std::size_t(s) + 1], nscol = k2 - k1;
    const int psi = pi_[std::size_t(s)], nsrow = pi_[std::size_t(s) + 1] - psi;
    cplx* Lxs = x_.data() + px_[std::size_t(s)];
    for (int i = 0; i < nsrow; ++i) map[std::size_t(s_[std::size_t(psi + i)])] = i;
    for (int k = k1; k < k2; ++k)
      for (int p = cp[std::size_t(k)]; p < cp[std::size_t(k) + 1]; ++p)
        Lxs[std::size_t(map[std::size_t(ci[std::size_t(p)])]) + std::size_t(k - k1) * nsrow] +=
            cv[std::size_t(p)];

    for (int d = head[std::size_t(s)]; d != -1;) {
      const int dnext = next[std::size_t(d)];
      const int ndcol = super_[std::size_t(d) + 1] - super_[std::size_t(d)];
      const int pdi = pi_[std::size_t(d)], ndrow = pi_[std::size_t(d) + 1] - pdi;
      const cplx* Lxd = x_.data() + px_[std::size_t(d)];
      const int p = lpos[std::size_t(d)];
      int q = p;
      while (q < ndrow && s_[std::size_t(pdi + q)] < k2) ++q;
      const int ndrow1 = q - p, ndrow2 = ndrow - p;
      if (C.size() < std::size_t(ndrow1) * ndrow2) C.resize(std::size_t(ndrow1) * ndrow2);
      gemm_nt(ndrow2, ndrow1, ndcol, 1.0, Lxd + p, ndrow, Lxd + p, ndrow, 0.0, C.data(), ndrow2);
      for (int j = 0; j < ndrow1; ++j) {
        cplx* col = Lxs + std::size_t(map[std::size_t(s_[std::size_t(pdi + p + j)])]) * nsrow;
        const cplx* cj = C.data() + std::size_t(j) * ndrow2;
        for (int i = j; i < ndrow2; ++i) col[map[std::size_t(s_[std::size_t(pdi + p + i)])]] -= cj[i];
      }
      lpos[std::size_t(d)] = q;
      if (q < ndrow) {
        const int t = supermap[std::size_t(s_[std::size_t(pdi + q)])];
        next[std::size_t(d)] = head[std::size_t(t)];
        head[std::size_t(t)] = d;
      }
      d = dnext;
    }
    head[std::size_t(s)] = -1;

    factor_panel(Lxs, nsrow, nscol, piv);
    lpos[std::size_t(s)] = nscol;
    if (nscol < nsrow) {
      const int t = supermap[std::size_t(s_[std::size_t(psi + nscol)])];
      next[std::size_t(s)] = head[std::size_t(t)];
      head[std::size_t(t)] = s;
    }
  }
  // pivots of L L^T are the squared diagonal entries already tracked before the square root
  rcond_ = piv.max > 0.0 ? piv.min / piv.max : 0.0;
  factor_seconds_ = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!(rcond_ > rcond_threshold)) {
    std::ostringstream os;
    os << "symmetric factorization is numerically singular (pivot ratio " << rcond_ << ")";
    throw SolverBreakdown(os.str(), rcond_);
  }
}

VectorC SymmetricFactor::solve(const VectorC& b) const {
  if (b.size() != n_) throw InvalidParameter("right-hand side has the wrong length");
  VectorC y(n_);
  for (int k = 0; k < n_; ++k) y[k] = b[perm_[std::size_t(k)]];
  const int nsuper = int(super_.size()) - 1;
  std::vector<cplx> tmp;
  const cplx one = 1.0, zero = 0.0, minus_one = -1.0;
  for (int s = 0; s < nsuper; ++s) {
    const int k1 = super_[std::size_t(s)], nscol = super_[std::size_t(s) + 1] - k1;
    const int psi = pi_[std::size_t(s)], nsrow = pi_[std::size_t(s) + 1] - psi;
    const cplx* Lxs = x_.data() + px_[std::size_t(s)];
    cblas_ztrsv(CblasColMajor, CblasLower, CblasNoTrans, CblasNonUnit, nscol, Lxs, nsrow, y.data() + k1, 1);
    const int nb = nsrow - nscol;
    if (nb == 0) continue;
    tmp.resize(std::size_t(nb));
    cblas_zgemv(CblasColMajor, CblasNoTrans, nb, nscol, &one, Lxs + nscol, nsrow, y.data() + k1, 1, &zero,
                tmp.data(), 1);
    for (int i = 0; i < nb; ++i) y[s_[std::size_t(psi + nscol + i)]] -= tmp[std::size_t(i)];
  }
  for (int s = nsuper - 1; s >= 0; --s) {
    const int k1 = super_[std::size_t(s)], nscol = super_[std::size_t(s) + 1] - k1;
    const int psi = pi_[std::size_t(s)], nsrow = pi_[std::size_t(s) + 1] - psi;
    const cplx* Lxs = x_.data() + px_[std::size_t(s)];
    const int nb = nsrow - nscol;
    if (nb > 0) {
      tmp.resize(std::size_t(nb));
      for (int i = 0; i < nb; ++i) tmp[std::size_t(i)] = y[s_[std::size_t(psi + nscol + i)]];
      cblas_zgemv(CblasColMajor, CblasTrans, nb, nscol, &minus_one, Lxs + nscol, nsrow, tmp.data(), 1, &one,
                  y.data() + k1, 1);
    }
    cblas_ztrsv(CblasColMajor, CblasLower, CblasTrans, CblasNonUnit, nscol, Lxs, nsrow, y.data() + k1, 1);
  }
  VectorC x(n_);
  for (int k = 0; k < n_; ++k) x[perm_[std::size_t(k)]] = y[k];
  return x;
}

}  // namespace tepml
