#include "qrex/cq_state.hpp"

#include <cmath>

#include "qrex/rng.hpp"

namespace qrex {

CQState::CQState(Eigen::VectorXd probs, std::vector<DensityOperator> conditionals)
    : probs_(std::move(probs)), conditionals_(std::move(conditionals)) {
  if (probs_.size() == 0 ||
      static_cast<size_t>(probs_.size()) != conditionals_.size())
    throw std::invalid_argument("CQState: need one conditional per symbol");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs_.size(); ++i) {
    if (probs_(i) < -1e-12) throw std::invalid_argument("CQState: negative probability");
    sum += probs_(i);
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("CQState: probabilities must sum to 1");
  int db = conditionals_.front().dim();
  for (const auto& c : conditionals_)
    if (c.dim() != db)
      throw std::invalid_argument("CQState: conditionals must share one dimension");
}

BipartiteState::BipartiteState(DensityOperator s, int da, int db)
    : state(std::move(s)), dim_a(da), dim_b(db) {
  if (da <= 0 || db <= 0 || state.dim() != da * db)
    throw std::invalid_argument("BipartiteState: dims do not factor the state");
}

BipartiteState embed(const CQState& cq) {
  int dx = cq.alphabet_size(), db = cq.dim_b();
  Matrix out = Matrix::Zero(dx * db, dx * db);
  for (int x = 0; x < dx; ++x)
    out.block(x * db, x * db, db, db) = cq.probs()(x) * cq.conditionals()[x].matrix();
  return BipartiteState(DensityOperator(HermitianOperator(std::move(out))), dx, db);
}

DensityOperator marginal_b(const CQState& cq) {
  int db = cq.dim_b();
  Matrix out = Matrix::Zero(db, db);
  for (int x = 0; x < cq.alphabet_size(); ++x)
    out += cq.probs()(x) * cq.conditionals()[x].matrix();
  return DensityOperator(HermitianOperator(std::move(out)));
}

Eigen::VectorXd marginal_x(const CQState& cq) { return cq.probs(); }

namespace {

// Draw order is part of the format: entries row-major, real then imaginary.
Matrix random_gaussian(Rng& rng, int rows, int cols) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      double re = rng.normal();
      double im = rng.normal();
      g(i, j) = Complex(re, im);
    }
  return g;
}

DensityOperator random_density(Rng& rng, int dim, int rank_cap) {
  Matrix g = random_gaussian(rng, dim, rank_cap);
  Matrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityOperator(HermitianOperator(std::move(w)));
}

}  // namespace

CQState random_cq(std::uint64_t seed, int x_size, int d_b, int rank_cap) {
  if (x_size <= 0 || d_b <= 0 || rank_cap <= 0 || rank_cap > d_b)
    throw std::invalid_argument("random_cq: need x_size, d_b >= 1 and 1 <= rank_cap <= d_b");
  Rng rng(sub_seed(seed, 0));
  Eigen::VectorXd p(x_size);
  double sum = 0.0;
  for (int x = 0; x < x_size; ++x) {
    p(x) = rng.exponential();
    sum += p(x);
  }
  p /= sum;
  std::vector<DensityOperator> conds;
  conds.reserve(x_size);
  for (int x = 0; x < x_size; ++x) {
    Rng crng(sub_seed(seed, 1 + static_cast<std::uint64_t>(x)));
    conds.push_back(random_density(crng, d_b, rank_cap));
  }
  return CQState(std::move(p), std::move(conds));
}

BipartiteState random_bipartite(std::uint64_t seed, int d_a, int d_b, int rank_cap) {
  if (d_a <= 0 || d_b <= 0 || rank_cap <= 0 || rank_cap > d_a * d_b)
    throw std::invalid_argument(
        "random_bipartite: need d_a, d_b >= 1 and 1 <= rank_cap <= d_a*d_b");
  Rng rng(sub_seed(seed, 0));
  return BipartiteState(random_density(rng, d_a * d_b, rank_cap), d_a, d_b);
}

Matrix permute_subsystems(const Matrix& m, const std::vector<int>& dims,
                          const std::vector<int>& perm) {
  int f = static_cast<int>(dims.size());
  if (perm.size() != dims.size())
    throw std::invalid_argument("permute_subsystems: perm/dims length mismatch");
  long long total = 1;
  for (int d : dims) total *= d;
  if (m.rows() != total || m.cols() != total)
    throw std::invalid_argument("permute_subsystems: dims do not factor the matrix");

  // Strides of the input factors, most significant first.
  std::vector<long long> stride(f, 1);
  for (int k = f - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<long long> new_stride(f, 1);
  for (int k = f - 2; k >= 0; --k) new_stride[k] = new_stride[k + 1] * dims[perm[k + 1]];

  std::vector<long long> map(total);
  std::vector<int> idx(f, 0);
  for (long long flat = 0; flat < total; ++flat) {
    long long rem = flat;
    for (int k = 0; k < f; ++k) {
      idx[k] = static_cast<int>(rem / stride[k]);
      rem %= stride[k];
    }
    long long out = 0;
    for (int k = 0; k < f; ++k) out += static_cast<long long>(idx[perm[k]]) * new_stride[k];
    map[flat] = out;
  }

  Matrix result(total, total);
  for (long long j = 0; j < total; ++j)
    for (long long i = 0; i < total; ++i) result(map[i], map[j]) = m(i, j);
  return result;
}

BipartiteState tensor_power(const BipartiteState& rho, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: n must be >= 1");
  double log_dim = n * std::log2(static_cast<double>(rho.dim_a) * rho.dim_b);
  if (log_dim > std::log2(static_cast<double>(dim_cap())))
    throw ResourceError(
        "tensor_power: (dim_a*dim_b)^n exceeds the configured cap; use the "
        "log-spectrum convolution path for large n");
  if (n == 1) return rho;

  HermitianOperator acc = rho.state.op();
  for (int k = 1; k < n; ++k) acc = tensor(acc, rho.state.op());

  // Factors arrive interleaved (A1,B1,A2,B2,...); bring the A's to the front.
  std::vector<int> dims(2 * n), perm(2 * n);
  for (int k = 0; k < n; ++k) {
    dims[2 * k] = rho.dim_a;
    dims[2 * k + 1] = rho.dim_b;
    perm[k] = 2 * k;
    perm[n + k] = 2 * k + 1;
  }
  Matrix reordered = permute_subsystems(acc.matrix(), dims, perm);
  int da = 1, db = 1;
  for (int k = 0; k < n; ++k) {
    da *= rho.dim_a;
    db *= rho.dim_b;
  }
  return BipartiteState(DensityOperator(HermitianOperator(std::move(reordered))), da, db);
}

}  // namespace qrex
