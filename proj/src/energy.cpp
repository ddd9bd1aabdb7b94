#include "csums/energy.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "csums/errors.hpp"

namespace csums {

namespace {

using u128 = unsigned __int128;

u128 fourth_power(std::uint64_t m) {
  const u128 sq = static_cast<u128>(m) * m;
  return sq * sq;
}

}  // namespace

EnergyReport additive_energy(std::span<const std::uint64_t> sorted, const EnergyLimits& limits) {
  const std::size_t m = sorted.size();
  if (m == 0) throw PreconditionError("additive_energy: empty set");
  if (m > limits.max_set_size) {
    throw GuardError("additive_energy: |P| = " + std::to_string(m) + " exceeds guard " +
                     std::to_string(limits.max_set_size));
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (sorted[i - 1] >= sorted[i]) {
      throw PreconditionError("additive_energy: input must be strictly increasing");
    }
  }
  const std::uint64_t pairs = static_cast<std::uint64_t>(m) * (m - 1) / 2;
  if (pairs > limits.mem_cap_bytes / sizeof(std::uint64_t)) {
    std::ostringstream msg;
    msg << "additive_energy: " << pairs * sizeof(std::uint64_t)
        << " bytes of differences exceed cap " << limits.mem_cap_bytes;
    throw GuardError(msg.str());
  }

  std::vector<std::uint64_t> diffs;
  diffs.reserve(pairs);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) diffs.push_back(sorted[j] - sorted[i]);
  }
  std::sort(diffs.begin(), diffs.end());

  std::uint64_t sum_sq = 0;
  std::uint64_t distinct_positive = 0;
  for (std::size_t i = 0; i < diffs.size();) {
    std::size_t j = i + 1;
    while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
    const std::uint64_t run = j - i;
    sum_sq += run * run;
    ++distinct_positive;
    i = j;
  }

  EnergyReport r;
  r.set_size = m;
  r.energy = 2 * sum_sq + static_cast<std::uint64_t>(m) * m;
  r.diff_support = 2 * distinct_positive + 1;
  r.cs_lower_bound = static_cast<std::uint64_t>(fourth_power(m) / r.diff_support);
  r.distinct_sums = distinct_positive;
  return r;
}

std::uint64_t distinct_sums_from_energy(const EnergyReport& report) {
  if (report.energy == 0) throw PreconditionError("distinct_sums_from_energy: energy must be >= 1");
  // (x/E - 1)/2 = (x - E) / (2E); E <= |P|^3 <= x so the numerator is >= 0.
  const u128 x = fourth_power(report.set_size);
  const u128 e = report.energy;
  if (x < e) return 0;
  return static_cast<std::uint64_t>((x - e) / (2 * e));
}

bool cauchy_schwarz_holds(const EnergyReport& report) {
  return static_cast<u128>(report.energy) * report.diff_support >= fourth_power(report.set_size);
}

DecompositionCheck energy_decomposition_check(const PartialSumSet& p) {
  const std::size_t m = p.size();
  if (m > kDecompositionMaxSetSize) {
    throw GuardError("energy_decomposition_check: |P| = " + std::to_string(m) + " exceeds " +
                     std::to_string(kDecompositionMaxSetSize));
  }
  const auto& s = p.sums;
  std::uint64_t coincidences = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const std::uint64_t d = s[j] - s[i];
      for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = k + 1; l < m; ++l) {
          if (s[l] - s[k] == d) ++coincidences;
        }
      }
    }
  }
  DecompositionCheck c;
  c.energy = additive_energy(p).energy;
  c.ordered_coincidences = coincidences;
  c.set_size = m;
  c.holds = c.energy == 2 * coincidences + static_cast<std::uint64_t>(m) * m;
  return c;
}

nlohmann::ordered_json to_json(const EnergyReport& r) {
  nlohmann::ordered_json j;
  j["set_size"] = r.set_size;
  j["energy"] = r.energy;
  j["diff_support"] = r.diff_support;
  j["cs_lower_bound"] = r.cs_lower_bound;
  j["distinct_sums"] = r.distinct_sums;
  return j;
}

}  // namespace csums
