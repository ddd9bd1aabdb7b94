#include "csums/experiments.hpp"

#include <chrono>
#include <cmath>

#include "csums/energy.hpp"
#include "csums/errors.hpp"

namespace csums {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

double square(std::uint64_t n) { return static_cast<double>(n) * static_cast<double>(n); }

// Emits bit i of `mask` as the top bit of the i-th draw.
struct SignPattern {
  std::uint64_t mask;
  unsigned next = 0;
  std::uint64_t operator()() { return ((mask >> next++) & 1) << 63; }
};

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

MeanEstimate summarize(const std::vector<double>& samples) {
  MeanEstimate est;
  est.trials = samples.size();
  if (samples.empty()) return est;
  // Welford, in index order.
  double mean = 0.0, m2 = 0.0;
  std::uint64_t count = 0;
  for (double x : samples) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  est.mean = mean;
  if (count > 1) {
    const double var = m2 / static_cast<double>(count - 1);
    est.std_error = std::sqrt(var / static_cast<double>(count));
  }
  return est;
}

EnergyEstimate mc_expected_energy(std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                                  const RunOptions& opts) {
  if (n < 1) throw PreconditionError("mc_expected_energy: n must be >= 1");
  if (trials < 1) throw PreconditionError("mc_expected_energy: trials must be >= 1");
  if (n + 1 > kEnergyMaxSetSize) {
    throw GuardError("mc_expected_energy: n = " + std::to_string(n) + " exceeds the energy guard");
  }
  const EnergyLimits limits{kEnergyMaxSetSize, opts.mem_cap_bytes};
  std::vector<double> energies(trials);
  parallel_for(trials, opts.threads, [&](std::uint64_t t) {
    const Sequence a = make_rademacher(n, stream_seed(seed, t));
    energies[t] = static_cast<double>(additive_energy(partial_sums(a), limits).energy);
  });
  EnergyEstimate out;
  out.n = n;
  out.energy = summarize(energies);
  out.ratio = out.energy.mean / square(n);
  return out;
}

ExactExpectation exact_expected_energy(std::uint64_t n) {
  if (n < 1) throw PreconditionError("exact_expected_energy: n must be >= 1");
  if (n > kExactEnergyMaxN) {
    throw GuardError("exact_expected_energy: n = " + std::to_string(n) + " exceeds " +
                     std::to_string(kExactEnergyMaxN));
  }
  ExactExpectation out;
  out.n = n;
  out.denominator = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < out.denominator; ++mask) {
    SignPattern signs{mask};
    const Sequence a = make_rademacher(n, signs);
    out.numerator += additive_energy(partial_sums(a)).energy;
  }
  return out;
}

Sequence build_sequence(SequenceKind kind, std::uint64_t n, std::optional<std::uint64_t> b,
                        std::optional<double> p, std::uint64_t seed, const WarningSink& warn) {
  switch (kind) {
    case SequenceKind::identity:
      return make_identity(n);
    case SequenceKind::rademacher:
      return make_rademacher(n, seed);
    case SequenceKind::block:
      if (!b) throw PreconditionError("block sequences need a b parameter");
      return make_block(n, *b, warn);
    case SequenceKind::permutation:
      return make_permutation(n, seed);
    case SequenceKind::prandom:
      if (!p) throw PreconditionError("prandom sequences need a p parameter");
      return make_prandom(n, *p, seed);
    case SequenceKind::explicit_values:
      break;
  }
  throw PreconditionError("explicit sequences cannot be generated; pass them as JSON");
}

std::vector<ExperimentRecord> scan_distinct(const ScanRequest& req, const RunOptions& opts,
                                            const WarningSink& warn) {
  if (req.reps < 1) throw PreconditionError("scan: reps must be >= 1");
  const auto start = Clock::now();
  const std::uint64_t cells = req.n_list.size() * req.reps;

  if (req.kind == SequenceKind::block && warn && req.b) {
    for (std::uint64_t n : req.n_list) {
      if (auto w = block_range_warning(n, *req.b)) warn(*w);
    }
  }

  std::vector<double> ratios(cells);
  parallel_for(cells, opts.threads, [&](std::uint64_t cell) {
    const std::uint64_t n = req.n_list[cell / req.reps];
    const Sequence a = build_sequence(req.kind, n, req.b, req.p, stream_seed(req.seed, cell));
    ratios[cell] = static_cast<double>(count_distinct_sums(a, opts.mem_cap_bytes)) / square(n);
  });

  std::vector<ExperimentRecord> out;
  const std::int64_t wall = elapsed_ms(start);
  auto base = [&](std::uint64_t n) {
    ExperimentRecord r;
    r.command = "scan";
    r.param("kind", std::string(to_string(req.kind))).param("n", n);
    if (req.b) r.param("b", *req.b);
    if (req.p) r.param("p", *req.p);
    r.seed = req.seed;
    r.wall_ms = wall;
    return r;
  };
  for (std::size_t ni = 0; ni < req.n_list.size(); ++ni) {
    const std::uint64_t n = req.n_list[ni];
    std::vector<double> slice;
    for (std::uint64_t rep = 0; rep < req.reps; ++rep) {
      const std::uint64_t cell = ni * req.reps + rep;
      ExperimentRecord r = base(n);
      r.param("rep", rep).param("stream", cell);
      r.statistic = "distinct_ratio";
      r.value = ratios[cell];
      r.trials = 1;
      out.push_back(std::move(r));
      slice.push_back(ratios[cell]);
    }
    const MeanEstimate est = summarize(slice);
    ExperimentRecord agg = base(n);
    agg.param("rep", std::string("all")).param("stream", ni * req.reps);
    agg.statistic = "distinct_ratio_mean";
    agg.value = est.mean;
    agg.std_error = est.std_error;
    agg.trials = est.trials;
    out.push_back(std::move(agg));
  }
  return out;
}

MeanEstimate permutation_ratio(std::uint64_t n, std::uint64_t reps, std::uint64_t seed,
                               const RunOptions& opts) {
  if (reps < 1) throw PreconditionError("permutation: reps must be >= 1");
  std::vector<double> ratios(reps);
  parallel_for(reps, opts.threads, [&](std::uint64_t rep) {
    const Sequence a = make_permutation(n, stream_seed(seed, rep));
    ratios[rep] = static_cast<double>(count_distinct_sums(a, opts.mem_cap_bytes)) / square(n);
  });
  return summarize(ratios);
}

std::vector<ExperimentRecord> prandom_scan(std::uint64_t n, const std::vector<double>& p_list,
                                           std::uint64_t reps, std::uint64_t seed,
                                           const RunOptions& opts) {
  std::vector<ExperimentRecord> out;
  for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
    // Streams are laid out p-major so each p gets a disjoint block.
    ScanRequest req{.kind = SequenceKind::prandom, .n_list = {n}, .p = p_list[pi], .seed = seed, .reps = reps};
    const std::uint64_t block_seed = stream_seed(seed, 0x7072616e64ULL + pi);
    req.seed = block_seed;
    auto records = scan_distinct(req, opts);
    for (auto& r : records) {
      r.command = "prandom";
      r.seed = seed;
      r.param("p_index", static_cast<std::uint64_t>(pi));
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace csums
