#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>

#include "csums/errors.hpp"
#include "csums/sequence.hpp"
#include "oracles.hpp"

using namespace csums;

namespace {

struct ConstantGen {
  std::uint64_t word;
  std::uint64_t operator()() const { return word; }
};

}  // namespace

TEST_CASE("identity construction") {
  CHECK(make_identity(1).values == std::vector<std::uint64_t>{1});
  CHECK(make_identity(4).values == std::vector<std::uint64_t>{1, 2, 3, 4});
  const Sequence ten = make_identity(10);
  CHECK(ten.length() == 10);
  CHECK(ten.values.back() == 10);
  CHECK_THROWS_AS(make_identity(0), PreconditionError);
}

TEST_CASE("rademacher construction") {
  ConstantGen all_plus{~std::uint64_t{0}};
  ConstantGen all_minus{0};
  CHECK(make_rademacher(3, all_plus).values == std::vector<std::uint64_t>{4, 7, 10});
  CHECK(make_rademacher(3, all_minus).values == std::vector<std::uint64_t>{2, 5, 8});

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Sequence a = make_rademacher(200, seed);
    CHECK(a.strictly_increasing());
    CHECK(a.values.back() <= 3 * 200 + 1);
    for (std::size_t i = 0; i + 1 < a.length(); ++i) {
      const auto gap = a.values[i + 1] - a.values[i];
      CHECK((gap >= 1 && gap <= 5));
    }
    for (std::size_t i = 0; i < a.length(); ++i) {
      const std::uint64_t base = 3 * (i + 1);
      CHECK((a.values[i] == base + 1 || a.values[i] == base - 1));
    }
  }
  CHECK(make_rademacher(100, 7) == make_rademacher(100, 7));
  CHECK(make_rademacher(100, 7).values != make_rademacher(100, 8).values);
}

TEST_CASE("rademacher interval sums stay within the signed window") {
  const Sequence a = make_rademacher(120, 3);
  const PartialSumSet p = partial_sums(a);
  for (std::uint64_t u = 0; u < 120; ++u) {
    for (std::uint64_t v = u + 1; v <= 120; ++v) {
      const auto sum = static_cast<std::int64_t>(p.sums[v] - p.sums[u]);
      const auto tri = static_cast<std::int64_t>(3 * (v * (v + 1) / 2 - u * (u + 1) / 2));
      const std::int64_t dev = sum - tri;
      const auto len = static_cast<std::int64_t>(v - u);
      CHECK(std::abs(dev) <= len);
      CHECK(((dev - len) % 2 + 2) % 2 == 0);
    }
  }
}

TEST_CASE("block construction") {
  CHECK(make_block(5, 2).values == std::vector<std::uint64_t>{1, 4, 5, 8, 9});
  CHECK(make_block(4, 10).values == std::vector<std::uint64_t>{1, 3, 5, 7});

  std::vector<std::string> warnings;
  make_block(4, 10, [&](std::string_view w) { warnings.emplace_back(w); });
  CHECK(warnings.size() == 1);
  warnings.clear();
  make_block(10000, 100, [&](std::string_view w) { warnings.emplace_back(w); });
  CHECK(warnings.empty());
  CHECK_THROWS_AS(make_block(5, 0), PreconditionError);
}

TEST_CASE("block interval sums follow v^2 - u^2 + floor((v-u)/b) + {0,1}") {
  const std::uint64_t n = 500, b = 13;
  const Sequence a = make_block(n, b);
  for (std::uint64_t u = 0; u < n; ++u) {
    std::uint64_t sum = 0;
    for (std::uint64_t v = u + 1; v <= n; ++v) {
      sum += a.values[v - 1];
      const std::uint64_t closed = v * v - u * u + (v - u) / b;
      REQUIRE(sum >= closed);
      REQUIRE(sum - closed <= 1);
    }
  }
}

TEST_CASE("permutation construction") {
  CHECK(make_permutation(1, 5).values == std::vector<std::uint64_t>{1});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Sequence a = make_permutation(50, seed);
    std::sort(a.values.begin(), a.values.end());
    CHECK(a.values == make_identity(50).values);
  }
}

TEST_CASE("permutations of 3 are uniform (chi-square, 6000 draws)") {
  std::map<std::vector<std::uint64_t>, int> hist;
  for (std::uint64_t seed = 0; seed < 6000; ++seed) ++hist[make_permutation(3, seed).values];
  REQUIRE(hist.size() == 6);
  double chi2 = 0.0;
  for (const auto& [perm, count] : hist) chi2 += (count - 1000.0) * (count - 1000.0) / 1000.0;
  // 5 degrees of freedom, p = 0.001 critical value
  CHECK(chi2 < 20.515);
}

TEST_CASE("prandom construction") {
  CHECK(make_prandom(30, 1.0, 9).values == make_identity(30).values);
  CHECK(make_prandom(30, 0.0, 9).values.empty());
  const Sequence half = make_prandom(1000, 0.5, 11);
  CHECK(half.length() >= 420);
  CHECK(half.length() <= 580);
  CHECK(half.strictly_increasing());
  CHECK_THROWS_AS(make_prandom(10, 1.5, 0), PreconditionError);
}

TEST_CASE("partial sums") {
  CHECK(partial_sums(make_identity(4)).sums == std::vector<std::uint64_t>{0, 1, 3, 6, 10});
  CHECK(partial_sums(std::vector<std::uint64_t>{}).sums == std::vector<std::uint64_t>{0});
  CHECK(partial_sums(make_identity(10)).total() == 55);
  const std::vector<std::uint64_t> huge{std::uint64_t{1} << 63, std::uint64_t{1} << 63};
  CHECK_THROWS_AS(partial_sums(huge), GuardError);
}

TEST_CASE("distinct consecutive sums on fixtures") {
  const std::vector<std::uint64_t> v{1, 2, 3, 4};
  CHECK(oracle::consecutive_sums(v) == std::set<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 9, 10});
  CHECK(count_distinct_sums(v) == 9);
  CHECK(brute_distinct_sums(v) == 9);
  CHECK(count_distinct_sums(std::vector<std::uint64_t>{1}) == 1);
  CHECK(count_distinct_sums(std::vector<std::uint64_t>{}) == 0);
  CHECK(brute_distinct_sums(std::vector<std::uint64_t>{}) == 0);

  // Powers of two: every block is a distinct run of bits.
  std::vector<std::uint64_t> pow2;
  for (int i = 0; i < 12; ++i) pow2.push_back(std::uint64_t{1} << i);
  CHECK(oracle::consecutive_sums(pow2).size() == 12 * 13 / 2);
  CHECK(count_distinct_sums(pow2) == 12 * 13 / 2);
  // A non-monotone sequence with all consecutive sums distinct.
  const std::vector<std::uint64_t> mixed{5, 1, 12, 2, 30};
  REQUIRE(oracle::consecutive_sums(mixed).size() == 15);
  CHECK(count_distinct_sums(mixed) == 15);
}

TEST_CASE("sieve and brute-force guards") {
  CHECK_THROWS_AS(count_distinct_sums(make_identity(100), 8), GuardError);
  CHECK_NOTHROW(count_distinct_sums(make_identity(100), 1024));
  CHECK_THROWS_AS(brute_distinct_sums(make_identity(2001)), GuardError);
}

TEST_CASE("property: sieve count equals brute force and respects k <= |S| <= k(k+1)/2") {
  Engine gen = make_engine(1234);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t n = 1 + uniform_below(gen, 300);
    const std::uint64_t seed = gen();
    Sequence a;
    switch (trial % 5) {
      case 0: a = make_identity(n); break;
      case 1: a = make_rademacher(n, seed); break;
      case 2: a = make_block(n, 1 + uniform_below(gen, 20)); break;
      case 3: a = make_permutation(n, seed); break;
      default: a = make_prandom(n, uniform01(gen), seed); break;
    }
    const std::uint64_t fast = count_distinct_sums(a);
    CHECK(fast == brute_distinct_sums(a));
    const std::uint64_t k = a.length();
    if (k > 0 && a.strictly_increasing()) {
      CHECK(fast >= k);
      CHECK(fast <= k * (k + 1) / 2);
    }
  }
}

TEST_CASE("sequence JSON") {
  const Sequence a = make_prandom(40, 0.3, 17);
  const std::string once = to_json(a).dump();
  CHECK(once == to_json(make_prandom(40, 0.3, 17)).dump());
  CHECK(sequence_from_json(nlohmann::json::parse(once)) == a);

  const auto block = to_json(make_block(6, 3));
  CHECK(block.dump() == R"({"kind":"block","n":6,"params":{"b":3},"values":[1,3,6,7,9,12]})");

  CHECK_THROWS_AS(sequence_from_json(nlohmann::json::parse(R"({"kind":"nope","n":1,"values":[1]})")),
                  PreconditionError);
  CHECK_THROWS_AS(sequence_from_json(nlohmann::json::parse(R"({"kind":"explicit","n":1,"values":[0]})")),
                  PreconditionError);
}
