#include "csums/sequence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "csums/errors.hpp"

namespace csums {

namespace {

constexpr std::string_view kKindNames[] = {"identity", "rademacher", "block",
                                           "permutation", "prandom", "explicit"};

}  // namespace

std::string_view to_string(SequenceKind kind) { return kKindNames[static_cast<int>(kind)]; }

SequenceKind parse_kind(std::string_view name) {
  for (int i = 0; i < 6; ++i) {
    if (kKindNames[i] == name) return static_cast<SequenceKind>(i);
  }
  throw PreconditionError("unknown sequence kind '" + std::string(name) + "'");
}

bool Sequence::strictly_increasing() const {
  return std::adjacent_find(values.begin(), values.end(),
                            [](auto x, auto y) { return x >= y; }) == values.end();
}

Sequence make_identity(std::uint64_t n) {
  if (n < 1) throw PreconditionError("identity: n must be >= 1");
  Sequence s{.kind = SequenceKind::identity, .n = n};
  s.values.resize(n);
  std::iota(s.values.begin(), s.values.end(), std::uint64_t{1});
  return s;
}

Sequence make_rademacher(std::uint64_t n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("rademacher: n must be >= 1");
  Engine gen = make_engine(seed);
  Sequence s = make_rademacher(n, gen);
  s.seed = seed;
  return s;
}

std::optional<std::string> block_range_warning(std::uint64_t n, std::uint64_t b) {
  const double log_n = std::log(static_cast<double>(n));
  const double upper = n > 1 ? static_cast<double>(n) / (log_n * log_n)
                             : std::numeric_limits<double>::infinity();
  const auto bd = static_cast<double>(b);
  if (bd >= log_n && bd <= upper) return std::nullopt;
  std::ostringstream msg;
  msg << "block: b=" << b << " outside [log n, n/(log n)^2] = [" << log_n << ", " << upper
      << "] for n=" << n << "; constructing anyway";
  return msg.str();
}

Sequence make_block(std::uint64_t n, std::uint64_t b, const WarningSink& warn) {
  if (n < 1 || b < 1) throw PreconditionError("block: n and b must be >= 1");
  if (warn) {
    if (auto w = block_range_warning(n, b)) warn(*w);
  }
  Sequence s{.kind = SequenceKind::block, .n = n, .b = b};
  s.values.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) s.values.push_back(i % b == 0 ? 2 * i : 2 * i - 1);
  return s;
}

Sequence make_permutation(std::uint64_t n, std::uint64_t seed) {
  Sequence s = make_identity(n);
  s.kind = SequenceKind::permutation;
  s.seed = seed;
  Engine gen = make_engine(seed);
  // Fisher-Yates
  for (std::uint64_t i = n - 1; i > 0; --i) {
    std::swap(s.values[i], s.values[uniform_below(gen, i + 1)]);
  }
  return s;
}

Sequence make_prandom(std::uint64_t n, double p, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("prandom: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("prandom: p must lie in [0, 1]");
  Sequence s{.kind = SequenceKind::prandom, .n = n, .p = p, .seed = seed};
  Engine gen = make_engine(seed);
  for (std::uint64_t i = 1; i <= n; ++i) {
    if (uniform01(gen) < p) s.values.push_back(i);
  }
  return s;
}

Sequence make_explicit(std::vector<std::uint64_t> values, std::optional<std::uint64_t> n) {
  if (std::find(values.begin(), values.end(), 0) != values.end()) {
    throw PreconditionError("explicit: values must be >= 1");
  }
  Sequence s{.kind = SequenceKind::explicit_values};
  s.n = n ? *n : (values.empty() ? 0 : *std::max_element(values.begin(), values.end()));
  s.values = std::move(values);
  return s;
}

PartialSumSet partial_sums(std::span<const std::uint64_t> values) {
  PartialSumSet p;
  p.sums.reserve(values.size() + 1);
  std::uint64_t acc = 0;
  p.sums.push_back(acc);
  for (std::uint64_t v : values) {
    if (__builtin_add_overflow(acc, v, &acc)) {
      throw GuardError("partial sums overflow 64-bit integers");
    }
    p.sums.push_back(acc);
  }
  return p;
}

std::uint64_t count_distinct_sums(std::span<const std::uint64_t> values, std::uint64_t mem_cap_bytes) {
  if (values.empty()) return 0;
  const PartialSumSet p = partial_sums(values);
  const std::uint64_t top = p.total();
  const std::uint64_t words = top / 64 + 1;
  if (words > mem_cap_bytes / 8) {
    std::ostringstream msg;
    msg << "sieve too large: " << words * 8 << " bytes needed for sum " << top << ", cap "
        << mem_cap_bytes << " bytes";
    throw GuardError(msg.str());
  }
  std::vector<std::uint64_t> bits(words, 0);
  const auto& s = p.sums;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const std::uint64_t base = s[i];
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const std::uint64_t d = s[j] - base;
      bits[d >> 6] |= std::uint64_t{1} << (d & 63);
    }
  }
  std::uint64_t count = 0;
  for (std::uint64_t w : bits) count += static_cast<std::uint64_t>(std::popcount(w));
  return count;
}

std::uint64_t brute_distinct_sums(std::span<const std::uint64_t> values) {
  if (values.size() > kBruteForceMaxLength) {
    throw GuardError("brute_distinct_sums: length " + std::to_string(values.size()) +
                     " exceeds " + std::to_string(kBruteForceMaxLength));
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(values.size() * (values.size() + 1) / 2);
  for (std::size_t u = 0; u < values.size(); ++u) {
    std::uint64_t sum = 0;
    for (std::size_t v = u; v < values.size(); ++v) {
      sum += values[v];
      seen.insert(sum);
    }
  }
  return seen.size();
}

nlohmann::ordered_json to_json(const Sequence& a) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(a.kind);
  j["n"] = a.n;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (a.b) params["b"] = *a.b;
  if (a.p) params["p"] = *a.p;
  j["params"] = params;
  if (a.seed) j["seed"] = *a.seed;
  j["values"] = a.values;
  return j;
}

Sequence sequence_from_json(const nlohmann::json& j) {
  Sequence s;
  try {
    s.kind = parse_kind(j.at("kind").get<std::string>());
    s.n = j.at("n").get<std::uint64_t>();
    if (j.contains("params")) {
      const auto& params = j.at("params");
      if (params.contains("b")) s.b = params.at("b").get<std::uint64_t>();
      if (params.contains("p")) s.p = params.at("p").get<double>();
    }
    if (j.contains("seed") && !j.at("seed").is_null()) s.seed = j.at("seed").get<std::uint64_t>();
    s.values = j.at("values").get<std::vector<std::uint64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed sequence JSON: ") + e.what());
  }
  if (std::find(s.values.begin(), s.values.end(), 0) != s.values.end()) {
    throw PreconditionError("sequence values must be >= 1");
  }
  return s;
}

}  // namespace csums
