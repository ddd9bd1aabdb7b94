// energy.hpp
//
// Additive energy E(P) = #{(x,y,z,w) in P^4 : x - y = z - w} of a finite
// set of non-negative integers, computed exactly by sorting the multiset of
// positive differences and summing squared run lengths:
//
//   E(P) = |P|^2 + 2 * sum_{t > 0} r_P(t)^2.
//
// The t = 0 term contributes |P|^2 and r_P(-t) = r_P(t).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include <json.hpp>

#include "csums/sequence.hpp"

namespace csums {

inline constexpr std::size_t kEnergyMaxSetSize = 12001;

struct EnergyLimits {
  std::size_t max_set_size = kEnergyMaxSetSize;
  std::uint64_t mem_cap_bytes = kDefaultMemCapBytes;
};

struct EnergyReport {
  std::uint64_t set_size = 0;
  std::uint64_t energy = 0;
  std::uint64_t diff_support = 0;    // |P - P|, always odd
  std::uint64_t cs_lower_bound = 0;  // floor(|P|^4 / |P - P|)
  std::uint64_t distinct_sums = 0;   // (|P - P| - 1) / 2

  friend bool operator==(const EnergyReport&, const EnergyReport&) = default;
};

/// `sorted` must be strictly increasing. Throws GuardError past the limits.
EnergyReport additive_energy(std::span<const std::uint64_t> sorted, const EnergyLimits& limits = {});
inline EnergyReport additive_energy(const PartialSumSet& p, const EnergyLimits& limits = {}) {
  return additive_energy(p.sums, limits);
}

/// floor((|P|^4 / E - 1) / 2), a certified lower bound on |S(a)|.
std::uint64_t distinct_sums_from_energy(const EnergyReport& report);

/// E(P) * |P - P| >= |P|^4 in exact integer arithmetic.
bool cauchy_schwarz_holds(const EnergyReport& report);

inline constexpr std::size_t kDecompositionMaxSetSize = 400;

struct DecompositionCheck {
  std::uint64_t energy = 0;            // from additive_energy
  std::uint64_t ordered_coincidences = 0;  // #{i<j, k<l : p_j - p_i = p_l - p_k}
  std::uint64_t set_size = 0;
  bool holds = false;                  // energy == 2 * coincidences + |P|^2
};

/// Index-quadruple enumeration; |P| <= 400.
DecompositionCheck energy_decomposition_check(const PartialSumSet& p);

nlohmann::ordered_json to_json(const EnergyReport& r);

}  // namespace csums
