#include "csums/probability.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "csums/errors.hpp"

namespace csums {

namespace {

double big_ratio_to_double(const BigInt& num, std::uint64_t exponent) {
  if (num.is_zero()) return 0.0;
  const std::uint64_t bits = boost::multiprecision::msb(num) + 1;
  if (bits <= 60) return std::ldexp(static_cast<double>(num), -static_cast<int>(exponent));
  const std::uint64_t shift = bits - 60;
  const BigInt top = num >> shift;
  return std::ldexp(static_cast<double>(top),
                    static_cast<int>(shift) - static_cast<int>(exponent));
}

std::shared_ptr<PmfTable> build_exact(std::uint64_t m) {
  auto t = std::make_shared<PmfTable>();
  t->m = m;
  t->numerators.resize(m + 1);
  t->masses.resize(m + 1);
  BigInt c = 1;
  for (std::uint64_t k = 0; k <= m; ++k) {
    t->numerators[k] = c;
    t->masses[k] = big_ratio_to_double(c, m);
    c = c * (m - k) / (k + 1);
  }
  return t;
}

std::shared_ptr<PmfTable> build_floating(std::uint64_t m) {
  auto t = std::make_shared<PmfTable>();
  t->m = m;
  t->masses.assign(m + 1, 0.0);
  const std::uint64_t mode = m / 2;
  t->masses[mode] = 1.0;
  for (std::uint64_t k = mode; k < m; ++k) {
    t->masses[k + 1] = t->masses[k] * static_cast<double>(m - k) / static_cast<double>(k + 1);
  }
  for (std::uint64_t k = mode; k > 0; --k) {
    t->masses[k - 1] = t->masses[k] * static_cast<double>(k) / static_cast<double>(m - k + 1);
  }
  // Kahan
  double sum = 0.0, carry = 0.0;
  for (double x : t->masses) {
    const double y = x - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
  }
  for (double& x : t->masses) x /= sum;
  return t;
}

class PmfCache {
 public:
  std::shared_ptr<const PmfTable> get(std::uint64_t m) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = tables_.find(m); it != tables_.end()) return it->second;
    }
    std::shared_ptr<const PmfTable> built = m <= kExactPmfMaxSteps ? build_exact(m) : build_floating(m);
    std::unique_lock lock(mutex_);
    return tables_.try_emplace(m, std::move(built)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, std::shared_ptr<const PmfTable>> tables_;
};

PmfCache& cache() {
  static PmfCache instance;
  return instance;
}

}  // namespace

double Dyadic::to_double() const { return big_ratio_to_double(numerator, exponent); }

Dyadic PmfTable::exact_mass(std::uint64_t k) const {
  if (!exact()) throw PreconditionError("exact_mass: table for m = " + std::to_string(m) + " is floating");
  return Dyadic{k <= m ? numerators[k] : BigInt(0), m};
}

std::shared_ptr<const PmfTable> binomial_pmf(std::uint64_t m) {
  if (m > kPmfMaxSteps) {
    throw GuardError("binomial_pmf: m = " + std::to_string(m) + " exceeds " + std::to_string(kPmfMaxSteps));
  }
  return cache().get(m);
}

namespace {

// s -> k = (s + m) / 2, or nullopt off the lattice.
std::optional<std::uint64_t> rademacher_index(std::int64_t s, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  if (s < -mm || s > mm || ((s + mm) & 1) != 0) return std::nullopt;
  return static_cast<std::uint64_t>((s + mm) / 2);
}

}  // namespace

double RademacherPmf::mass(std::int64_t s) const {
  const auto k = rademacher_index(s, table_->m);
  return k ? table_->masses[*k] : 0.0;
}

Dyadic RademacherPmf::exact_mass(std::int64_t s) const {
  const auto k = rademacher_index(s, table_->m);
  return k ? table_->exact_mass(*k) : Dyadic{0, table_->m};
}

RademacherPmf rademacher_sum_pmf(std::uint64_t m) { return RademacherPmf(binomial_pmf(m)); }

Dyadic prob_divisible_exact(std::uint64_t n, std::uint64_t m) {
  if (m < 1) throw PreconditionError("prob_divisible: m must be >= 1");
  if (n > kExactPmfMaxSteps) {
    throw GuardError("prob_divisible_exact: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kExactPmfMaxSteps));
  }
  const auto table = binomial_pmf(n);
  Dyadic p{0, n};
  for (std::uint64_t k = 0; k <= n; k += m) p.numerator += table->numerators[k];
  return p;
}

double prob_divisible(std::uint64_t n, std::uint64_t m) {
  if (m < 1) throw PreconditionError("prob_divisible: m must be >= 1");
  if (n <= kExactPmfMaxSteps) return prob_divisible_exact(n, m).to_double();
  const auto table = binomial_pmf(n);
  double sum = 0.0, carry = 0.0;
  for (std::uint64_t k = 0; k <= n; k += m) {
    const double y = table->masses[k] - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
  }
  return sum;
}

bool within_divisibility_bound(const Dyadic& p, std::uint64_t n, std::uint64_t m) {
  // p = N / 2^e. p - 1/m = (N m - 2^e) / (m 2^e) <= 2 / sqrt(n)
  //   <=> N m <= 2^e, or n (N m - 2^e)^2 <= 4 m^2 4^e.
  const BigInt pow2 = BigInt(1) << p.exponent;
  const BigInt excess = p.numerator * m - pow2;
  if (excess <= 0) return true;
  return BigInt(n) * excess * excess <= BigInt(4) * m * m * pow2 * pow2;
}

std::vector<LemmaRow> lemma_bound_check(std::uint64_t n_max, std::uint64_t m_max) {
  if (n_max < 1 || m_max < 1) throw PreconditionError("lemma_bound_check: n_max and m_max must be >= 1");
  if (n_max * m_max > 1000000) throw GuardError("lemma_bound_check: grid exceeds 10^6 entries");
  if (n_max > kExactPmfMaxSteps) throw GuardError("lemma_bound_check: n_max exceeds exact range");
  std::vector<LemmaRow> rows;
  rows.reserve(n_max * m_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    for (std::uint64_t m = 1; m <= m_max; ++m) {
      const Dyadic p = prob_divisible_exact(n, m);
      rows.push_back({n, m, p.to_double(),
                      1.0 / static_cast<double>(m) + 2.0 / std::sqrt(static_cast<double>(n)),
                      within_divisibility_bound(p, n, m)});
    }
  }
  return rows;
}

}  // namespace csums
