#pragma once

#include <cstdint>
#include <vector>

#include "qrex/operator_core.hpp"

namespace qrex {

/// Classical-quantum state: symbol probabilities p_x paired with conditional
/// density operators rho_x of a common dimension.
class CQState {
 public:
  CQState(Eigen::VectorXd probs, std::vector<DensityOperator> conditionals);

  int alphabet_size() const { return static_cast<int>(probs_.size()); }
  int dim_b() const { return conditionals_.front().dim(); }
  const Eigen::VectorXd& probs() const { return probs_; }
  const std::vector<DensityOperator>& conditionals() const { return conditionals_; }

 private:
  Eigen::VectorXd probs_;
  std::vector<DensityOperator> conditionals_;
};

/// Density operator on A tensor B with the split recorded.
struct BipartiteState {
  BipartiteState(DensityOperator s, int da, int db);

  DensityOperator state;
  int dim_a;
  int dim_b;
};

/// Block-diagonal embedding sum_x p_x |x><x| (x) rho_x.
BipartiteState embed(const CQState& cq);

DensityOperator marginal_b(const CQState& cq);
Eigen::VectorXd marginal_x(const CQState& cq);

/// Deterministic in the seed. Probabilities are normalized exponentials;
/// each conditional is G G^dag normalized, G a d_b x rank_cap matrix of
/// standard complex normals.
CQState random_cq(std::uint64_t seed, int x_size, int d_b, int rank_cap);

BipartiteState random_bipartite(std::uint64_t seed, int d_a, int d_b, int rank_cap);

/// Reorders the flat index of an operator on factors `dims` so that factor
/// perm[k] of the input sits at position k of the output.
Matrix permute_subsystems(const Matrix& m, const std::vector<int>& dims,
                          const std::vector<int>& perm);

/// n-th tensor power with all A factors moved in front of all B factors,
/// so the result has dims (dim_a^n, dim_b^n).
BipartiteState tensor_power(const BipartiteState& rho, int n);

}  // namespace qrex
