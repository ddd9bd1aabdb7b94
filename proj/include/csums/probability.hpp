// probability.hpp
//
// Binomial(m, 1/2) and m-step Rademacher-sum mass functions, and the
// probability that a symmetric binomial variable is divisible by m.
//
// Two backends: rows with m <= 2000 carry exact dyadic numerators C(m, k)
// over 2^m; longer rows are floating only (ratio recurrence from the mode,
// normalised with compensated summation).

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace csums {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kExactPmfMaxSteps = 2000;
inline constexpr std::uint64_t kPmfMaxSteps = 1000000;

/// numerator / 2^exponent
struct Dyadic {
  BigInt numerator;
  std::uint64_t exponent = 0;

  double to_double() const;
};

struct PmfTable {
  std::uint64_t m = 0;
  std::vector<double> masses;       // index k in [0, m]
  std::vector<BigInt> numerators;   // C(m, k); empty in floating mode

  bool exact() const { return !numerators.empty(); }
  Dyadic exact_mass(std::uint64_t k) const;
  double mass(std::uint64_t k) const { return k <= m ? masses[k] : 0.0; }
};

/// Cached per process; throws GuardError for m > 10^6.
std::shared_ptr<const PmfTable> binomial_pmf(std::uint64_t m);

/// Mass function of eps_1 + ... + eps_m, supported on s in {-m, -m+2, ..., m}.
class RademacherPmf {
 public:
  explicit RademacherPmf(std::shared_ptr<const PmfTable> table) : table_(std::move(table)) {}

  std::uint64_t steps() const { return table_->m; }
  double mass(std::int64_t s) const;
  Dyadic exact_mass(std::int64_t s) const;
  const PmfTable& binomial() const { return *table_; }

 private:
  std::shared_ptr<const PmfTable> table_;
};

RademacherPmf rademacher_sum_pmf(std::uint64_t m);

/// Exact P(X = 0 mod m) for X ~ Bin(n, 1/2); n <= 2000.
Dyadic prob_divisible_exact(std::uint64_t n, std::uint64_t m);

/// P(X = 0 mod m); exact below 2000 steps, compensated floating sum above.
double prob_divisible(std::uint64_t n, std::uint64_t m);

/// Exact decision of p <= 1/m + 2/sqrt(n) by squaring.
bool within_divisibility_bound(const Dyadic& p, std::uint64_t n, std::uint64_t m);

struct LemmaRow {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  double probability = 0.0;
  double bound = 0.0;
  bool ok = false;
};

/// Every (n, m) in [1, n_max] x [1, m_max], exact mode; n_max * m_max <= 10^6.
std::vector<LemmaRow> lemma_bound_check(std::uint64_t n_max, std::uint64_t m_max);

}  // namespace csums
