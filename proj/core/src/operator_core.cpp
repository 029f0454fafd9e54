#include "qrex/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qrex {

namespace {

double max_abs(const Matrix& m) {
  double v = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v = std::max(v, std::abs(m(i, j)));
  return v;
}

bool is_exactly_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != Complex{0.0, 0.0}) return false;
  return true;
}

// Spectra of PSD-intended operators carry tiny negative noise; treat
// anything below -tol as a real violation.
void require_psd(const Spectrum& s, const char* what) {
  double tol = std::max(s.zero_cutoff(), 1e-14);
  if (s.eigenvalues.size() > 0 && s.eigenvalues(0) < -tol)
    throw std::invalid_argument(std::string(what) +
                                ": operator has a negative eigenvalue beyond tolerance");
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix m, double hermitian_tol) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("HermitianOperator: matrix must be square and nonempty");
  if (m.rows() > dim_cap())
    throw ResourceError("HermitianOperator: dimension exceeds QREX_DIM_CAP");
  Matrix adj = m.adjoint();
  double asym = max_abs(m - adj);
  if (hermitian_tol < 0.0) hermitian_tol = 1e-9 * std::max(1.0, max_abs(m));
  if (asym > hermitian_tol)
    throw std::invalid_argument("HermitianOperator: input exceeds Hermitian tolerance");
  mat_ = 0.5 * (m + adj);
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(Matrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(Matrix::Zero(dim, dim));
}

double HermitianOperator::max_abs_entry() const { return max_abs(mat_); }

double Spectrum::max_abs() const {
  double v = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    v = std::max(v, std::abs(eigenvalues(i)));
  return v;
}

int Spectrum::rank() const {
  double cut = zero_cutoff();
  int r = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) > cut) ++r;
  return r;
}

DensityOperator::DensityOperator(HermitianOperator op, double trace_tol,
                                 bool allow_subnormalized)
    : op_(std::move(op)) {
  Spectrum s = spectral_decompose(op_);
  if (s.eigenvalues(0) < -std::max(trace_tol, s.zero_cutoff()))
    throw std::invalid_argument("DensityOperator: not positive semidefinite");
  double tr = op_.trace_real();
  if (allow_subnormalized) {
    if (tr > 1.0 + trace_tol || tr < -trace_tol)
      throw std::invalid_argument("DensityOperator: trace must lie in [0, 1]");
  } else if (std::abs(tr - 1.0) > trace_tol) {
    throw std::invalid_argument("DensityOperator: trace must equal 1");
  }
}

Spectrum spectral_decompose(const HermitianOperator& h) {
  const Matrix& m = h.matrix();
  int n = h.dim();
  Spectrum out;
  if (is_exactly_diagonal(m)) {
    // Exact path: sorted diagonal with permuted standard basis vectors.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
      return m(i, i).real() < m(j, j).real();
    });
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      out.eigenvalues(k) = m(order[k], order[k]).real();
      out.eigenvectors(order[k], k) = 1.0;
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericalError("spectral_decompose: eigensolver did not converge");
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  return out;
}

HermitianOperator proj_nonpos(const HermitianOperator& h) {
  Spectrum s = spectral_decompose(h);
  double cut = s.zero_cutoff();
  Matrix p = Matrix::Zero(h.dim(), h.dim());
  for (int i = 0; i < s.dim(); ++i)
    if (s.eigenvalues(i) <= cut)
      p += s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint();
  return HermitianOperator(std::move(p));
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  long long prod = static_cast<long long>(a.dim()) * b.dim();
  if (prod > dim_cap())
    throw ResourceError("tensor: product dimension exceeds the configured cap");
  int da = a.dim(), db = b.dim(), d = static_cast<int>(prod);
  Matrix out(d, d);
  for (int ia = 0; ia < da; ++ia)
    for (int ja = 0; ja < da; ++ja)
      out.block(ia * db, ja * db, db, db) = a.matrix()(ia, ja) * b.matrix();
  return HermitianOperator(std::move(out));
}

HermitianOperator partial_trace(const HermitianOperator& m, int dim_a, int dim_b,
                                Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.dim() != dim_a * dim_b)
    throw std::invalid_argument("partial_trace: dims do not factor the operator");
  const Matrix& full = m.matrix();
  if (keep == Subsystem::B) {
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int a = 0; a < dim_a; ++a)
      out += full.block(a * dim_b, a * dim_b, dim_b, dim_b);
    return HermitianOperator(std::move(out));
  }
  Matrix out = Matrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i)
    for (int j = 0; j < dim_a; ++j) {
      Complex acc{0.0, 0.0};
      for (int b = 0; b < dim_b; ++b) acc += full(i * dim_b + b, j * dim_b + b);
      out(i, j) = acc;
    }
  return HermitianOperator(std::move(out));
}

double trace_distance(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Spectrum s = spectral_decompose(HermitianOperator(a.matrix() - b.matrix()));
  double sum = 0.0;
  for (int i = 0; i < s.dim(); ++i) sum += std::abs(s.eigenvalues(i));
  return 0.5 * sum;
}

double trace_norm(const HermitianOperator& h) {
  Spectrum s = spectral_decompose(h);
  double sum = 0.0;
  for (int i = 0; i < s.dim(); ++i) sum += std::abs(s.eigenvalues(i));
  return sum;
}

int rank_by_cutoff(const HermitianOperator& h) {
  return spectral_decompose(h).rank();
}

double rel_entropy(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("rel_entropy: dimension mismatch");
  Spectrum sa = spectral_decompose(a);
  Spectrum sb = spectral_decompose(b);
  require_psd(sa, "rel_entropy");
  require_psd(sb, "rel_entropy");

  double tr_a = a.trace_real();
  if (tr_a <= eig_cutoff(a.dim(), sa.max_abs())) return 0.0;

  // Support test: mass of A on the kernel of B.
  double cut_b = sb.zero_cutoff();
  double support_leak_tol = a.dim() * 1e-10 * std::max(1.0, tr_a);
  double leak = 0.0;
  for (int j = 0; j < sb.dim(); ++j) {
    if (sb.eigenvalues(j) <= cut_b) {
      leak += (sb.eigenvectors.col(j).adjoint() * a.matrix() * sb.eigenvectors.col(j))(0)
                  .real();
    }
  }
  if (leak > support_leak_tol) return std::numeric_limits<double>::infinity();

  double cut_a = sa.zero_cutoff();
  double term_a = 0.0;
  for (int i = 0; i < sa.dim(); ++i) {
    double e = sa.eigenvalues(i);
    if (e > cut_a) term_a += e * std::log2(e);
  }
  double term_b = 0.0;
  for (int j = 0; j < sb.dim(); ++j) {
    double e = sb.eigenvalues(j);
    if (e > cut_b) {
      double w = (sb.eigenvectors.col(j).adjoint() * a.matrix() * sb.eigenvectors.col(j))(0)
                     .real();
      term_b += w * std::log2(e);
    }
  }
  return term_a - term_b;
}

double von_neumann(const HermitianOperator& a) {
  Spectrum s = spectral_decompose(a);
  require_psd(s, "von_neumann");
  double cut = s.zero_cutoff();
  double out = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    double e = s.eigenvalues(i);
    if (e > cut) out -= e * std::log2(e);
  }
  return out;
}

Matrix apply_spectral(const Spectrum& s, const std::function<double(double)>& f,
                      double f_at_kernel) {
  double cut = s.zero_cutoff();
  Matrix out = Matrix::Zero(s.dim(), s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    double v = (std::abs(s.eigenvalues(i)) <= cut) ? f_at_kernel : f(s.eigenvalues(i));
    out += v * (s.eigenvectors.col(i) * s.eigenvectors.col(i).adjoint());
  }
  return out;
}

double jensen_gap(const std::vector<HermitianOperator>& xs,
                  const std::vector<Matrix>& cs) {
  if (xs.empty() || xs.size() != cs.size())
    throw std::invalid_argument("jensen_gap: need matching nonempty operator lists");
  int d = xs.front().dim();
  Matrix completeness = Matrix::Zero(d, d);
  for (const auto& c : cs) {
    if (c.rows() != d || c.cols() != d)
      throw std::invalid_argument("jensen_gap: dimension mismatch");
    completeness += c.adjoint() * c;
  }
  if (max_abs(completeness - Matrix::Identity(d, d)) > 1e-8)
    throw std::invalid_argument("jensen_gap: sum C^dag C must equal the identity");

  auto neg_log2 = [](double x) { return -std::log2(x); };
  Matrix lhs = Matrix::Zero(d, d);
  Matrix avg = Matrix::Zero(d, d);
  for (size_t i = 0; i < xs.size(); ++i) {
    Spectrum s = spectral_decompose(xs[i]);
    if (s.eigenvalues(0) <= s.zero_cutoff())
      throw std::invalid_argument("jensen_gap: operators must be strictly positive");
    lhs += cs[i].adjoint() * apply_spectral(s, neg_log2) * cs[i];
    avg += cs[i].adjoint() * xs[i].matrix() * cs[i];
  }
  HermitianOperator avg_h(std::move(avg));
  Matrix rhs = apply_spectral(spectral_decompose(avg_h), neg_log2);
  Spectrum gap = spectral_decompose(HermitianOperator(lhs - rhs));
  return gap.eigenvalues(0);
}

}  // namespace qrex
