// sequence.hpp
//
// Sequence families and consecutive-sum counting.
//
// For a = (a_1..a_k) the consecutive sums are exactly the positive
// differences p_j - p_i (i < j) of the prefix sums p_0 = 0 < p_1 < ... < p_k,
// so |S(a)| is counted by marking those differences in a bit array of
// length p_k + 1.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "csums/rng.hpp"

namespace csums {

inline constexpr std::uint64_t kMiB = 1024ULL * 1024ULL;
inline constexpr std::uint64_t kDefaultMemCapBytes = 512 * kMiB;
inline constexpr std::size_t kBruteForceMaxLength = 2000;

enum class SequenceKind { identity, rademacher, block, permutation, prandom, explicit_values };

std::string_view to_string(SequenceKind kind);
SequenceKind parse_kind(std::string_view name);

struct Sequence {
  SequenceKind kind = SequenceKind::explicit_values;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> b;  // block
  std::optional<double> p;         // prandom
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> values;

  std::size_t length() const { return values.size(); }
  bool strictly_increasing() const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
};

struct PartialSumSet {
  std::vector<std::uint64_t> sums;  // 0 = p_0 < p_1 < ... < p_k

  std::size_t size() const { return sums.size(); }
  std::uint64_t total() const { return sums.back(); }
};

using WarningSink = std::function<void(std::string_view)>;

Sequence make_identity(std::uint64_t n);

/// a_i = 3i + eps_i, eps_i = +1 when the top bit of the next draw is set.
template <class Gen>
Sequence make_rademacher(std::uint64_t n, Gen& gen) {
  Sequence s{.kind = SequenceKind::rademacher, .n = n};
  s.values.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    const bool plus = (gen() >> 63) != 0;
    s.values.push_back(plus ? 3 * i + 1 : 3 * i - 1);
  }
  return s;
}

Sequence make_rademacher(std::uint64_t n, std::uint64_t seed);

/// Human-readable warning when b is outside [log n, n / (log n)^2], else nullopt.
std::optional<std::string> block_range_warning(std::uint64_t n, std::uint64_t b);

Sequence make_block(std::uint64_t n, std::uint64_t b, const WarningSink& warn = {});
Sequence make_permutation(std::uint64_t n, std::uint64_t seed);
Sequence make_prandom(std::uint64_t n, double p, std::uint64_t seed);
Sequence make_explicit(std::vector<std::uint64_t> values, std::optional<std::uint64_t> n = std::nullopt);

/// Throws GuardError when the total overflows 64 bits.
PartialSumSet partial_sums(std::span<const std::uint64_t> values);
inline PartialSumSet partial_sums(const Sequence& a) { return partial_sums(a.values); }

/// Bit-sieve count of |S(a)|. Throws GuardError if the p_k + 1 bit array
/// exceeds mem_cap_bytes.
std::uint64_t count_distinct_sums(std::span<const std::uint64_t> values,
                                  std::uint64_t mem_cap_bytes = kDefaultMemCapBytes);
inline std::uint64_t count_distinct_sums(const Sequence& a,
                                         std::uint64_t mem_cap_bytes = kDefaultMemCapBytes) {
  return count_distinct_sums(a.values, mem_cap_bytes);
}

/// Hash-set enumeration of all interval sums; k <= 2000.
std::uint64_t brute_distinct_sums(std::span<const std::uint64_t> values);
inline std::uint64_t brute_distinct_sums(const Sequence& a) { return brute_distinct_sums(a.values); }

nlohmann::ordered_json to_json(const Sequence& a);
Sequence sequence_from_json(const nlohmann::json& j);

}  // namespace csums
