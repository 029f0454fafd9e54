#pragma once

#include <cstdint>
#include <string>

#include "qrex/rng.hpp"

namespace qrex {

enum class FamilyKind { AllFunctions, LinearGF2, ToeplitzGF2 };

/// Two-universal hash family over finite sets, with canonical member
/// indexing so experiments can cite members across runs:
///
///   all_functions(|X|, |S|)  member index read base-|S|; digit x is g(x).
///   linear_gf2(n, m)         member is an m x n bit matrix, entry (r, c) at
///                            index bit r*n + c; input bit c is (x >> c) & 1;
///                            output bit r is the parity of row r AND x.
///   toeplitz_gf2(n, m)       member is an (n+m-1)-bit seed t; matrix entry
///                            (r, c) is bit r - c + n - 1 of t; evaluation
///                            as for the linear family.
class HashFamily {
 public:
  static HashFamily all_functions(std::uint64_t x_size, std::uint64_t s_size);
  static HashFamily linear_gf2(int n, int m);
  static HashFamily toeplitz_gf2(int n, int m);

  FamilyKind kind() const { return kind_; }
  std::uint64_t domain_size() const { return domain_; }
  std::uint64_t range_size() const { return range_; }
  std::uint64_t family_size() const { return family_size_; }
  double log2_family_size() const { return log2_family_size_; }
  /// Small enough for exact member enumeration (family_size <= 2^20).
  bool enumerable() const { return family_size_ <= (1u << 20); }
  int n_bits() const { return n_; }
  int m_bits() const { return m_; }

  std::uint64_t evaluate(std::uint64_t member, std::uint64_t x) const;
  std::uint64_t sample_member(Rng& rng) const;

  std::string kind_name() const;

 private:
  HashFamily() = default;
  FamilyKind kind_ = FamilyKind::AllFunctions;
  std::uint64_t domain_ = 0;
  std::uint64_t range_ = 0;
  std::uint64_t family_size_ = 0;
  double log2_family_size_ = 0.0;
  int n_ = 0;
  int m_ = 0;
};

struct CollisionProb {
  double value = 0.0;
  bool exact = false;
  std::uint64_t sample_count = 0;
};

/// Pr over a uniform member that x0 and x1 collide. Exact enumeration when
/// the family is enumerable, otherwise a seeded estimate.
CollisionProb collision_prob(const HashFamily& fam, std::uint64_t x0, std::uint64_t x1,
                             std::uint64_t seed = 1, std::uint64_t samples = 200000);

struct TwoUniversalReport {
  double max_collision_prob = 0.0;
  bool exhaustive = false;
  std::uint64_t pairs_checked = 0;
  bool holds = false;
};

/// Checks Pr[collision] <= 1/|S| over distinct pairs: every pair when the
/// domain is small, a seeded pair sample otherwise.
TwoUniversalReport check_two_universal(const HashFamily& fam, std::uint64_t seed = 1,
                                       std::uint64_t pair_cap = 4096,
                                       std::uint64_t samples = 200000);

}  // namespace qrex
