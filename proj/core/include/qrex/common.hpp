#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qrex {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Requested dimensions or family sizes exceed the configured limits.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An internal numerical routine failed to deliver its accuracy contract.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A verified inequality came out violated. Distinct from usage errors so
/// callers (and the CLI exit codes) can tell a defect signal apart.
struct BoundViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scale-aware cutoff for rank/support/projection decisions:
// eigenvalues within dim * 1e-12 * scale of zero are treated as zero.
inline constexpr double kEigCutoffScale = 1e-12;

inline double eig_cutoff(int dim, double max_abs_eig) {
  return static_cast<double>(dim) * kEigCutoffScale * max_abs_eig;
}

// Absolute slack used when testing "trace mass >= 1 - eps" feasibility.
inline constexpr double kFeasSlack = 1e-12;

// Hard cap on any materialized operator dimension; QREX_DIM_CAP overrides.
int dim_cap();

}  // namespace qrex
