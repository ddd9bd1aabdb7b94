// bounds.hpp
//
// Analytic side of the upper bound on |S(a)|: the area of
// {(x, y) in [0,1]^2 : y^2 - x^2 >= alpha}, the function h it feeds, the
// exact count of index pairs whose identity-sequence interval sum clears
// alpha (n+1)^2 / 2, and gcd / totient sum diagnostics.

#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "csums/sequence.hpp"

namespace csums {

struct MathConstants {
  double c4;          // (e^2 - 1) / (2 (e^2 + 1))
  double alpha_star;  // (2e / (e^2 + 1))^2
  double h_min;       // (e^2 - 1) / (e^2 + 1)
  double konieczny;   // (1 + e^-2) / 4
  double eft_delta;   // 1 - (1 + log log 2) / log 2
  double c2_rough;    // 2e-2
  double c3_rough;    // 2e-3
};

const MathConstants& math_constants();

/// Closed-form area; throws PreconditionError outside (0, 1).
double lambda_measure(double alpha);
double h(double alpha);
double h_prime(double alpha);

struct HMinimum {
  double alpha;
  double value;
};

/// Bisection on h' over (1e-9, 1 - 1e-9).
HMinimum minimize_h();

inline constexpr std::uint64_t kLatticeMaxN = 100000;

struct LatticeCount {
  std::uint64_t n = 0;
  double alpha = 0.0;
  std::uint64_t count = 0;
  double ratio = 0.0;    // count / (n+1)^2
  double measure = 0.0;  // lambda_measure(alpha)
};

/// ceil(alpha (n+1)^2 / 2), computed exactly from the binary value of alpha.
std::uint64_t half_alpha_threshold(std::uint64_t n, double alpha);

/// #{0 <= i < j <= n : (j - i)(i + j + 1) / 2 >= alpha (n+1)^2 / 2}.
LatticeCount lattice_count(std::uint64_t n, double alpha);

struct UpperBoundCheck {
  std::uint64_t n = 0;
  double alpha = 0.0;
  std::uint64_t lhs = 0;          // |S(a)|
  std::uint64_t small_part = 0;   // ceil(alpha (n+1)^2 / 2)
  std::uint64_t lattice = 0;      // |L_n|
  std::uint64_t rhs = 0;
  bool ok = false;
};

/// a must be strictly increasing with values in [1, a.n].
UpperBoundCheck upper_bound_check(const Sequence& a, double alpha,
                                  std::uint64_t mem_cap_bytes = kDefaultMemCapBytes);

/// phi(0..n) via linear sieve, shared read-only across calls.
std::shared_ptr<const std::vector<std::uint32_t>> totients(std::uint64_t n);

inline constexpr std::uint64_t kGcdDirectMaxN = 100000;
inline constexpr std::uint64_t kGcdSumMaxN = 10000000;
inline constexpr std::uint64_t kPillaiMaxL = 1000000;

/// sum_{l <= n} l^{-3/2} sum_{k <= l} gcd(k, l), via sum_{d | l} d phi(l/d).
double gcd_sum(std::uint64_t n);
/// Same sum with the inner gcd sum done by a direct loop.
double gcd_sum_direct(std::uint64_t n);

/// sum_{k <= l} gcd(k, l) == sum_{d | l} d phi(l/d) for all l <= l_max.
bool pillai_check(std::uint64_t l_max);

}  // namespace csums
