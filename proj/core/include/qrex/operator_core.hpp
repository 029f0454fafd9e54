#pragma once

#include <functional>
#include <vector>

#include "qrex/common.hpp"

namespace qrex {

/// Dense complex Hermitian operator. Construction symmetrizes the input via
/// (M + M^dag)/2 after checking the asymmetry stays below `hermitian_tol`
/// (max absolute entry of M - M^dag; pass a negative tolerance for the
/// default 1e-9 * max(1, max|M_ij|)).
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m, double hermitian_tol = -1.0);

  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

  double max_abs_entry() const;
  double trace_real() const { return mat_.trace().real(); }

 private:
  Matrix mat_;
};

/// Eigenvalues ascending, matching orthonormal eigenvector columns.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  double max_abs() const;
  /// Zero cutoff for this spectrum: dim * 1e-12 * max|eigenvalue|.
  double zero_cutoff() const { return eig_cutoff(dim(), max_abs()); }
  /// Count of eigenvalues above the zero cutoff.
  int rank() const;
};

/// Positive semidefinite operator with unit trace (or trace <= 1 when
/// subnormalized states are explicitly allowed).
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator op, double trace_tol = 1e-9,
                           bool allow_subnormalized = false);

  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

Spectrum spectral_decompose(const HermitianOperator& h);

/// Projection onto the span of eigenvectors with eigenvalue <= zero cutoff.
HermitianOperator proj_nonpos(const HermitianOperator& h);

/// Kronecker product, A-index major. Throws ResourceError past dim_cap().
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on A tensor B with dims (dim_a, dim_b).
HermitianOperator partial_trace(const HermitianOperator& m, int dim_a, int dim_b,
                                Subsystem keep);

/// d1(A, B) = half the sum of |eigenvalues| of A - B.
double trace_distance(const HermitianOperator& a, const HermitianOperator& b);

/// Tr[A (log2 A - log2 B)] for PSD A, B with the 0 log 0 = 0 convention;
/// +infinity when supp A is not contained in supp B.
double rel_entropy(const HermitianOperator& a, const HermitianOperator& b);

/// S(A) = -Tr[A log2 A] for PSD A.
double von_neumann(const HermitianOperator& a);

/// Minimum eigenvalue of sum_i C_i^dag f(X_i) C_i - f(sum_i C_i^dag X_i C_i)
/// for f = -log2, strictly positive X_i and sum_i C_i^dag C_i = I. The
/// operator-convexity of f makes the exact value nonnegative.
double jensen_gap(const std::vector<HermitianOperator>& xs,
                  const std::vector<Matrix>& cs);

/// f applied to the spectrum; eigenvalues within the zero cutoff map to
/// f_at_kernel (the 0 log 0 = 0 convention is f_at_kernel = 0).
Matrix apply_spectral(const Spectrum& s, const std::function<double(double)>& f,
                      double f_at_kernel = 0.0);

double trace_norm(const HermitianOperator& h);

int rank_by_cutoff(const HermitianOperator& h);

}  // namespace qrex
