#include "qrex/spectral_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrex {

HermitianOperator rho_tilde(const BipartiteState& rho) {
  const Matrix& m = rho.state.matrix();
  return partial_trace(HermitianOperator(m * m), rho.dim_a, rho.dim_b, Subsystem::B);
}

namespace {

struct PencilParts {
  Matrix tilde;
  Matrix b;
  Matrix b_sq;
  Spectrum spec_b;
};

PencilParts pencil_parts(const BipartiteState& rho) {
  PencilParts p;
  p.tilde = rho_tilde(rho).matrix();
  HermitianOperator b = partial_trace(rho.state.op(), rho.dim_a, rho.dim_b, Subsystem::B);
  p.b = b.matrix();
  p.b_sq = p.b * p.b;
  p.spec_b = spectral_decompose(b);
  return p;
}

double mass_at(double lambda, const PencilParts& p) {
  double t = std::exp2(-lambda);
  Matrix pencil;
  if (std::isfinite(t))
    pencil = p.tilde - t * p.b_sq;
  else
    pencil = -p.b_sq;
  Spectrum s = spectral_decompose(HermitianOperator(std::move(pencil)));
  double cut = s.zero_cutoff();
  double mass = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    if (s.eigenvalues(i) <= cut) {
      mass += (s.eigenvectors.col(i).adjoint() * p.b * s.eigenvectors.col(i))(0).real();
    }
  }
  return mass;
}

// Candidate lambdas where the pencil can become singular: generalized
// eigenvalues mu of rho_tilde with respect to rho_B^2 restricted to
// supp rho_B, mapped through lambda = -log2 mu. The (rho_tilde, rho_B)
// pencil values are added as harmless extra candidates.
std::vector<double> breakpoints(const PencilParts& p) {
  double cut = p.spec_b.zero_cutoff();
  std::vector<int> support;
  for (int i = 0; i < p.spec_b.dim(); ++i)
    if (p.spec_b.eigenvalues(i) > cut) support.push_back(i);
  int k = static_cast<int>(support.size());
  if (k == 0) throw std::invalid_argument("collision_entropy_R: rho_B vanishes");

  Matrix vs(p.spec_b.dim(), k);
  for (int c = 0; c < k; ++c) vs.col(c) = p.spec_b.eigenvectors.col(support[c]);
  Matrix tilde_s = vs.adjoint() * p.tilde * vs;

  std::vector<double> lambdas;
  for (int variant = 0; variant < 2; ++variant) {
    Eigen::VectorXd scale(k);
    for (int c = 0; c < k; ++c) {
      double e = p.spec_b.eigenvalues(support[c]);
      scale(c) = (variant == 0) ? 1.0 / e : 1.0 / std::sqrt(e);
    }
    Matrix w = scale.asDiagonal() * tilde_s * scale.asDiagonal();
    Spectrum sw = spectral_decompose(HermitianOperator(std::move(w)));
    for (int i = 0; i < sw.dim(); ++i) {
      double mu = sw.eigenvalues(i);
      if (mu > sw.zero_cutoff()) lambdas.push_back(-std::log2(mu));
    }
  }
  std::sort(lambdas.begin(), lambdas.end());
  // Merge near-duplicates.
  std::vector<double> out;
  for (double l : lambdas) {
    if (out.empty() || l - out.back() > 1e-12 * std::max(1.0, std::abs(l))) out.push_back(l);
  }
  return out;
}

}  // namespace

double feasible_mass(double lambda, const BipartiteState& rho) {
  return mass_at(lambda, pencil_parts(rho));
}

EntropyResult collision_entropy_R(const BipartiteState& rho, double eps, double tol) {
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("collision_entropy_R: eps must lie in [0, 1)");
  if (tol <= 0.0) throw std::invalid_argument("collision_entropy_R: tol must be positive");

  PencilParts parts = pencil_parts(rho);
  std::vector<double> bps = breakpoints(parts);

  std::vector<double> candidates;
  candidates.push_back(bps.front() - 1.0);
  for (size_t i = 0; i < bps.size(); ++i) {
    candidates.push_back(bps[i]);
    if (i + 1 < bps.size()) candidates.push_back(0.5 * (bps[i] + bps[i + 1]));
  }
  candidates.push_back(bps.back() + 1.0);

  double threshold = 1.0 - eps - kFeasSlack;
  auto feasible = [&](double lambda) { return mass_at(lambda, parts) >= threshold; };

  // Largest feasible candidate and the smallest infeasible one above it.
  double lo = std::numeric_limits<double>::quiet_NaN();
  double hi = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = candidates.size(); i-- > 0;) {
    if (feasible(candidates[i])) {
      lo = candidates[i];
      if (i + 1 < candidates.size()) hi = candidates[i + 1];
      break;
    }
  }
  if (std::isnan(lo))
    throw NumericalError("collision_entropy_R: no feasible candidate found");

  EntropyResult res;
  res.epsilon = eps;
  res.certificate.tol = tol;
  res.certificate.breakpoints_examined = static_cast<int>(candidates.size());

  if (std::isnan(hi)) {
    // Even the sentinel above every breakpoint is feasible; nothing to refine.
    res.certificate.at_examined_ceiling = true;
  } else {
    while (hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      if (feasible(mid))
        lo = mid;
      else
        hi = mid;
    }
  }

  res.value = lo;
  res.certificate.lambda_star = lo;
  res.certificate.achieved_mass = mass_at(lo, parts);
  res.certificate.mass_beyond_tol = mass_at(lo + tol, parts);
  if (res.certificate.achieved_mass < threshold)
    throw NumericalError("collision_entropy_R: returned point failed the feasibility recheck");
  return res;
}

EntropyResult classical_collision_R(const Eigen::MatrixXd& joint, double eps) {
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("classical_collision_R: eps must lie in [0, 1)");
  double total = joint.sum();
  if (joint.minCoeff() < -1e-12 || std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("classical_collision_R: joint pmf must be normalized");

  // Per-branch collision entropy R(X|Y=y) with its weight.
  std::vector<std::pair<double, double>> branches;
  for (Eigen::Index y = 0; y < joint.cols(); ++y) {
    double qy = joint.col(y).sum();
    if (qy <= 0.0) continue;
    double coll = 0.0;
    for (Eigen::Index x = 0; x < joint.rows(); ++x) {
      double c = joint(x, y) / qy;
      coll += c * c;
    }
    branches.emplace_back(-std::log2(coll), qy / total);
  }
  std::sort(branches.begin(), branches.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  // Merge ties, then take the largest r with Pr[R >= r] >= 1 - eps.
  std::vector<std::pair<double, double>> merged;
  for (const auto& br : branches) {
    if (!merged.empty() && merged.back().first - br.first <= 1e-12)
      merged.back().second += br.second;
    else
      merged.push_back(br);
  }

  EntropyResult res;
  res.epsilon = eps;
  res.certificate.tol = 0.0;
  res.certificate.breakpoints_examined = static_cast<int>(merged.size());
  double cum = 0.0;
  for (const auto& [r, w] : merged) {
    cum += w;
    if (cum >= 1.0 - eps - kFeasSlack) {
      res.value = r;
      res.certificate.lambda_star = r;
      res.certificate.achieved_mass = cum;
      return res;
    }
  }
  throw NumericalError("classical_collision_R: quantile accumulation failed");
}

double h_sup_atoms(std::span<const LogAtom> atoms, double eps) {
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("h_sup: eps must lie in [0, 1)");
  std::vector<LogAtom> sorted(atoms.begin(), atoms.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const LogAtom& a, const LogAtom& b) { return a.log2_eigenvalue > b.log2_eigenvalue; });
  double cum = 0.0;
  size_t i = 0;
  while (i < sorted.size()) {
    double x = sorted[i].log2_eigenvalue;
    // Equal positions enter the projection together.
    while (i < sorted.size() && x - sorted[i].log2_eigenvalue <= 1e-12) {
      cum += sorted[i].mass;
      ++i;
    }
    if (cum >= 1.0 - eps - kFeasSlack) return -x;
  }
  throw std::invalid_argument("h_sup: spectrum mass below 1 - eps");
}

double h_inf_atoms(std::span<const LogAtom> atoms, double eps) {
  if (eps < 0.0 || eps >= 1.0)
    throw std::invalid_argument("h_inf: eps must lie in [0, 1)");
  std::vector<LogAtom> sorted(atoms.begin(), atoms.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const LogAtom& a, const LogAtom& b) { return a.log2_eigenvalue < b.log2_eigenvalue; });
  double cum = 0.0;
  size_t i = 0;
  while (i < sorted.size()) {
    double x = sorted[i].log2_eigenvalue;
    while (i < sorted.size() && sorted[i].log2_eigenvalue - x <= 1e-12) {
      cum += sorted[i].mass;
      ++i;
    }
    if (cum >= 1.0 - eps - kFeasSlack) return -x;
  }
  throw std::invalid_argument("h_inf: spectrum mass below 1 - eps");
}

std::vector<LogAtom> log_atoms(const DensityOperator& rho) {
  Spectrum s = spectral_decompose(rho.op());
  double cut = s.zero_cutoff();
  std::vector<LogAtom> atoms;
  for (int i = 0; i < s.dim(); ++i) {
    double e = s.eigenvalues(i);
    if (e > cut) atoms.push_back({std::log2(e), e});
  }
  return atoms;
}

double h_sup(const DensityOperator& rho, double eps) {
  auto atoms = log_atoms(rho);
  return h_sup_atoms(atoms, eps);
}

double h_inf(const DensityOperator& rho, double eps) {
  auto atoms = log_atoms(rho);
  return h_inf_atoms(atoms, eps);
}

double cond_vn(const BipartiteState& rho) {
  HermitianOperator b = partial_trace(rho.state.op(), rho.dim_a, rho.dim_b, Subsystem::B);
  return von_neumann(rho.state.op()) - von_neumann(b);
}

}  // namespace qrex
