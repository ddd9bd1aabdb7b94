#include "csums/bounds.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "csums/errors.hpp"

namespace csums {

namespace {

void require_open_unit(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw PreconditionError(std::string(what) + ": alpha must lie in (0, 1)");
  }
}

// log((1 + sqrt(1 - a)) / sqrt(a))
double log_term(double alpha) {
  return std::log((1.0 + std::sqrt(1.0 - alpha)) / std::sqrt(alpha));
}

double kahan_total(const std::vector<double>& terms) {
  double sum = 0.0, carry = 0.0;
  for (double x : terms) {
    const double y = x - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
  }
  return sum;
}

}  // namespace

const MathConstants& math_constants() {
  static const MathConstants c = [] {
    const double e = std::numbers::e;
    const double e2 = e * e;
    MathConstants m{};
    m.h_min = (e2 - 1.0) / (e2 + 1.0);
    m.c4 = m.h_min / 2.0;
    m.alpha_star = std::pow(2.0 * e / (e2 + 1.0), 2);
    m.konieczny = (1.0 + 1.0 / e2) / 4.0;
    m.eft_delta = 1.0 - (1.0 + std::log(std::log(2.0))) / std::log(2.0);
    m.c2_rough = 2e-2;
    m.c3_rough = 2e-3;
    return m;
  }();
  return c;
}

double lambda_measure(double alpha) {
  require_open_unit(alpha, "lambda_measure");
  return 0.5 * (std::sqrt(1.0 - alpha) - alpha * log_term(alpha));
}

double h(double alpha) {
  require_open_unit(alpha, "h");
  return alpha + std::sqrt(1.0 - alpha) - alpha * log_term(alpha);
}

double h_prime(double alpha) {
  require_open_unit(alpha, "h_prime");
  return 1.0 - log_term(alpha);
}

HMinimum minimize_h() {
  // h' increases from -inf at 0+ to 1 at 1-.
  double lo = 1e-9, hi = 1.0 - 1e-9;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    mid = 0.5 * (lo + hi);
    const double d = h_prime(mid);
    if (d == 0.0) break;
    if (d < 0.0) lo = mid; else hi = mid;
  }
  return {mid, h(mid)};
}

std::uint64_t half_alpha_threshold(std::uint64_t n, double alpha) {
  require_open_unit(alpha, "half_alpha_threshold");
  using u128 = unsigned __int128;
  int exp = 0;
  const double mant = std::frexp(alpha, &exp);  // alpha = mant * 2^exp, mant in [0.5, 1)
  const auto mant_int = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  // alpha = mant_int * 2^-(53 - exp); divide a further factor 2 for the half.
  const int shift = 53 - exp + 1;
  const u128 side = static_cast<u128>(n) + 1;
  const u128 num = static_cast<u128>(mant_int) * side * side;
  if (shift >= 120) return 1;
  const u128 q = num >> shift;
  const bool exact = (q << shift) == num;
  return static_cast<std::uint64_t>(exact ? q : q + 1);
}

LatticeCount lattice_count(std::uint64_t n, double alpha) {
  if (n < 1) throw PreconditionError("lattice_count: n must be >= 1");
  if (n > kLatticeMaxN) {
    throw GuardError("lattice_count: n = " + std::to_string(n) + " exceeds " + std::to_string(kLatticeMaxN));
  }
  const std::uint64_t threshold = half_alpha_threshold(n, alpha);
  auto tri = [](std::uint64_t x) { return x * (x + 1) / 2; };

  // For each j the admissible i form a prefix [0, i_end) whose end only grows.
  std::uint64_t count = 0;
  std::uint64_t i_end = 0;
  for (std::uint64_t j = 1; j <= n; ++j) {
    if (tri(j) < threshold) continue;
    const std::uint64_t limit = tri(j) - threshold;
    while (i_end < j && tri(i_end) <= limit) ++i_end;
    count += i_end;
  }

  LatticeCount out;
  out.n = n;
  out.alpha = alpha;
  out.count = count;
  const double side = static_cast<double>(n + 1);
  out.ratio = static_cast<double>(count) / (side * side);
  out.measure = lambda_measure(alpha);
  return out;
}

UpperBoundCheck upper_bound_check(const Sequence& a, double alpha, std::uint64_t mem_cap_bytes) {
  if (!a.strictly_increasing()) {
    throw PreconditionError("upper_bound_check: sequence must be strictly increasing");
  }
  for (std::uint64_t v : a.values) {
    if (v < 1 || v > a.n) {
      throw PreconditionError("upper_bound_check: value " + std::to_string(v) + " outside [1, " +
                              std::to_string(a.n) + "]");
    }
  }
  UpperBoundCheck c;
  c.n = a.n;
  c.alpha = alpha;
  c.lhs = count_distinct_sums(a, mem_cap_bytes);
  c.small_part = half_alpha_threshold(a.n, alpha);
  c.lattice = lattice_count(a.n, alpha).count;
  c.rhs = c.small_part + c.lattice;
  c.ok = c.lhs <= c.rhs;
  return c;
}

std::shared_ptr<const std::vector<std::uint32_t>> totients(std::uint64_t n) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<std::uint32_t>> table;
  std::lock_guard lock(mutex);
  if (table && table->size() > n) return table;

  auto phi = std::make_shared<std::vector<std::uint32_t>>(n + 1, 0);
  auto& f = *phi;
  std::vector<std::uint32_t> primes;
  if (n >= 1) f[1] = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (f[i] == 0) {
      f[i] = static_cast<std::uint32_t>(i - 1);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > n) break;
      if (i % p == 0) {
        f[ip] = f[i] * p;
        break;
      }
      f[ip] = f[i] * (p - 1);
    }
  }
  table = phi;
  return table;
}

namespace {

// P(l) = sum_{d | l} d phi(l / d) for l in [0, n].
std::vector<std::uint64_t> pillai_table(std::uint64_t n) {
  const auto phi = totients(n);
  std::vector<std::uint64_t> out(n + 1, 0);
  for (std::uint64_t d = 1; d <= n; ++d) {
    for (std::uint64_t l = d, q = 1; l <= n; l += d, ++q) out[l] += d * (*phi)[q];
  }
  return out;
}

}  // namespace

double gcd_sum(std::uint64_t n) {
  if (n < 1) throw PreconditionError("gcd_sum: n must be >= 1");
  if (n > kGcdSumMaxN) throw GuardError("gcd_sum: n exceeds " + std::to_string(kGcdSumMaxN));
  const auto pillai = pillai_table(n);
  std::vector<double> terms(n);
  for (std::uint64_t l = 1; l <= n; ++l) {
    const auto ld = static_cast<double>(l);
    terms[l - 1] = static_cast<double>(pillai[l]) / (ld * std::sqrt(ld));
  }
  return kahan_total(terms);
}

double gcd_sum_direct(std::uint64_t n) {
  if (n < 1) throw PreconditionError("gcd_sum_direct: n must be >= 1");
  if (n > kGcdDirectMaxN) throw GuardError("gcd_sum_direct: n exceeds " + std::to_string(kGcdDirectMaxN));
  std::vector<double> terms(n);
  for (std::uint64_t l = 1; l <= n; ++l) {
    std::uint64_t inner = 0;
    for (std::uint64_t k = 1; k <= l; ++k) inner += std::gcd(k, l);
    const auto ld = static_cast<double>(l);
    terms[l - 1] = static_cast<double>(inner) / (ld * std::sqrt(ld));
  }
  return kahan_total(terms);
}

bool pillai_check(std::uint64_t l_max) {
  if (l_max > kPillaiMaxL) throw GuardError("pillai_check: l_max exceeds " + std::to_string(kPillaiMaxL));
  const auto pillai = pillai_table(l_max);
  for (std::uint64_t l = 1; l <= l_max; ++l) {
    std::uint64_t direct = 0;
    for (std::uint64_t k = 1; k <= l; ++k) direct += std::gcd(k, l);
    if (direct != pillai[l]) return false;
  }
  return true;
}

}  // namespace csums
