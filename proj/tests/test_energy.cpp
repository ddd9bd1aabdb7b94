#include <doctest.h>

#include "csums/energy.hpp"
#include "csums/errors.hpp"
#include "oracles.hpp"

using namespace csums;

namespace {

std::vector<std::int64_t> as_signed(const std::vector<std::uint64_t>& v) {
  return {v.begin(), v.end()};
}

std::vector<std::uint64_t> random_set(Engine& gen, std::size_t size, std::uint64_t range) {
  std::set<std::uint64_t> s;
  while (s.size() < size) s.insert(uniform_below(gen, range));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("energy of tiny sets") {
  const EnergyReport one = additive_energy(std::vector<std::uint64_t>{0});
  CHECK(one.energy == 1);
  CHECK(one.diff_support == 1);
  CHECK(one.distinct_sums == 0);

  const EnergyReport two = additive_energy(std::vector<std::uint64_t>{0, 1});
  CHECK(two.energy == 6);
  CHECK(two.diff_support == 3);
  CHECK(two.cs_lower_bound == 5);
  CHECK(distinct_sums_from_energy(two) == 0);
}

TEST_CASE("energy matches quadruple enumeration") {
  const auto p = partial_sums(make_identity(4)).sums;  // {0,1,3,6,10}
  const std::uint64_t brute = oracle::energy_quadruples(as_signed(p));
  const EnergyReport r = additive_energy(p);
  CHECK(r.energy == brute);
  CHECK(r.energy == 49);

  Engine gen = make_engine(99);
  for (int t = 0; t < 25; ++t) {
    const auto s = random_set(gen, 1 + uniform_below(gen, 25), 60);
    CHECK(additive_energy(s).energy == oracle::energy_quadruples(as_signed(s)));
  }
}

TEST_CASE("Sidon set: minimal energy and the derived lower bound") {
  const std::vector<std::uint64_t> sidon{0, 1, 3, 7};
  const EnergyReport r = additive_energy(sidon);
  CHECK(r.energy == 2 * 6 + 16);
  CHECK(r.energy == r.set_size * r.set_size + 2 * (r.set_size * (r.set_size - 1) / 2));
  CHECK(r.distinct_sums == 6);
  CHECK(distinct_sums_from_energy(r) == 4);
  CHECK(distinct_sums_from_energy(r) <= r.distinct_sums);

  // Non-Sidon sets exceed |P|^2 + |P|(|P|-1).
  const EnergyReport ap = additive_energy(std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(ap.energy > 2 * 6 + 16);
}

TEST_CASE("energy report invariants") {
  Engine gen = make_engine(5);
  for (int t = 0; t < 40; ++t) {
    const auto s = random_set(gen, 1 + uniform_below(gen, 200), 5000);
    const EnergyReport r = additive_energy(s);
    CHECK(cauchy_schwarz_holds(r));
    CHECK(r.energy >= r.cs_lower_bound);
    CHECK(r.diff_support % 2 == 1);
    CHECK(r.energy >= r.set_size * r.set_size);
    CHECK(distinct_sums_from_energy(r) <= (r.diff_support - 1) / 2);
  }
}

TEST_CASE("energy is invariant under translation, reflection and dilation") {
  Engine gen = make_engine(8);
  for (int t = 0; t < 20; ++t) {
    const auto s = random_set(gen, 2 + uniform_below(gen, 80), 1000);
    const std::uint64_t e = additive_energy(s).energy;
    const std::uint64_t c = 1 + uniform_below(gen, 1000000);
    const std::uint64_t lambda = 1 + uniform_below(gen, 50);
    std::vector<std::uint64_t> shifted, reflected, dilated;
    for (auto x : s) {
      shifted.push_back(x + c);
      dilated.push_back(x * lambda);
    }
    for (auto it = s.rbegin(); it != s.rend(); ++it) reflected.push_back(s.back() + c - *it);
    CHECK(additive_energy(shifted).energy == e);
    CHECK(additive_energy(reflected).energy == e);
    CHECK(additive_energy(dilated).energy == e);
  }
}

TEST_CASE("distinct sums from energy agree with the sieve") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Sequence a = make_rademacher(150, seed);
    CHECK(additive_energy(partial_sums(a)).distinct_sums == count_distinct_sums(a));
  }
  CHECK(additive_energy(partial_sums(make_identity(300))).distinct_sums ==
        count_distinct_sums(make_identity(300)));
}

TEST_CASE("energy decomposition") {
  const auto single = energy_decomposition_check(PartialSumSet{{0}});
  CHECK(single.holds);
  CHECK(single.energy == 1);
  CHECK(single.ordered_coincidences == 0);

  const auto pair = energy_decomposition_check(PartialSumSet{{0, 1}});
  CHECK(pair.holds);
  CHECK(pair.energy == 6);
  CHECK(pair.ordered_coincidences == 1);

  const auto id20 = energy_decomposition_check(partial_sums(make_identity(20)));
  CHECK(id20.holds);
  CHECK(id20.energy == oracle::energy_quadruples(as_signed(partial_sums(make_identity(20)).sums)));

  CHECK_THROWS_AS(energy_decomposition_check(partial_sums(make_identity(400))), GuardError);
}

TEST_CASE("energy guards and preconditions") {
  CHECK_THROWS_AS(additive_energy(std::vector<std::uint64_t>{}), PreconditionError);
  CHECK_THROWS_AS(additive_energy(std::vector<std::uint64_t>{3, 1}), PreconditionError);
  CHECK_THROWS_AS(additive_energy(partial_sums(make_identity(100)), EnergyLimits{50, kDefaultMemCapBytes}),
                  GuardError);
  CHECK_THROWS_AS(additive_energy(partial_sums(make_identity(100)), EnergyLimits{kEnergyMaxSetSize, 1024}),
                  GuardError);
}

TEST_CASE("energy report JSON keys") {
  const auto j = to_json(additive_energy(std::vector<std::uint64_t>{0, 1}));
  CHECK(j.dump() == R"({"set_size":2,"energy":6,"diff_support":3,"cs_lower_bound":5,"distinct_sums":1})");
}
