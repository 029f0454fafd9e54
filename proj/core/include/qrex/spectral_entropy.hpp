#pragma once

#include <span>
#include <vector>

#include "qrex/cq_state.hpp"

namespace qrex {

/// One point of an eigenvalue distribution: mass `mass` sitting at
/// eigenvalue 2^log2_eigenvalue. Working in the log domain keeps tensor
/// powers representable.
struct LogAtom {
  double log2_eigenvalue;
  double mass;
};

struct EntropyCertificate {
  double lambda_star = 0.0;
  double achieved_mass = 0.0;
  double tol = 0.0;
  int breakpoints_examined = 0;
  /// Feasible mass measured at lambda_star + tol (envelope audit).
  double mass_beyond_tol = 0.0;
  /// True when lambda_star is the largest examined candidate rather than a
  /// refined envelope boundary.
  bool at_examined_ceiling = false;
};

/// Entropy value in bits plus the certificate that makes it auditable.
struct EntropyResult {
  double value = 0.0;
  double epsilon = 0.0;
  EntropyCertificate certificate;
};

/// Tr_A[rho_AB^2]; same support as rho_B and dominated by it.
HermitianOperator rho_tilde(const BipartiteState& rho);

/// Tr[P(lambda) rho_B] with P(lambda) the projection onto the nonpositive
/// part of rho_tilde - 2^-lambda rho_B^2. Piecewise constant in lambda.
double feasible_mass(double lambda, const BipartiteState& rho);

/// Information-spectrum collision entropy: the supremum of lambda with
/// feasible_mass(lambda) >= 1 - eps, located over the pencil breakpoints
/// (generalized eigenvalues of (rho_tilde, rho_B^2) on supp rho_B) plus
/// midpoints, then refined by bisection to `tol`. The returned lambda is
/// always re-checked feasible; monotonicity of the mass in lambda is never
/// assumed.
EntropyResult collision_entropy_R(const BipartiteState& rho, double eps,
                                  double tol = 1e-6);

/// Classical counterpart on a joint pmf over X x Y (rows x, columns y):
/// the largest distinct value r of R(X|Y=y) = -log2 sum_x Pr[X=x|Y=y]^2
/// with Pr[R >= r] >= 1 - eps. Exact quantile, no grid.
EntropyResult classical_collision_R(const Eigen::MatrixXd& joint, double eps);

/// Information-spectrum sup/inf entropy of a spectrum given as log atoms.
/// h_sup: smallest lambda with at least 1-eps mass on eigenvalues >= 2^-lambda;
/// h_inf: largest lambda with at least 1-eps mass on eigenvalues <= 2^-lambda.
double h_sup_atoms(std::span<const LogAtom> atoms, double eps);
double h_inf_atoms(std::span<const LogAtom> atoms, double eps);

double h_sup(const DensityOperator& rho, double eps);
double h_inf(const DensityOperator& rho, double eps);

/// S(A|B) = S(rho_AB) - S(rho_B).
double cond_vn(const BipartiteState& rho);

/// Atoms (log2 eigenvalue, eigenvalue) of the spectrum above the zero
/// cutoff, ascending.
std::vector<LogAtom> log_atoms(const DensityOperator& rho);

}  // namespace qrex
