// experiments.hpp
//
// Monte Carlo and enumeration experiments. Trial t of every randomized
// experiment draws its sequence from substream stream_seed(master, t);
// trials run on a worker pool and are reduced in trial order, so results
// do not depend on the thread count.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "csums/records.hpp"
#include "csums/sequence.hpp"

namespace csums {

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t mem_cap_bytes = kDefaultMemCapBytes;
};

unsigned resolve_threads(unsigned requested);

/// Calls body(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers stop.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct MeanEstimate {
  double mean = 0.0;
  std::optional<double> std_error;  // absent for a single trial
  std::uint64_t trials = 0;
};

/// Mean and standard error of `samples`, accumulated in index order.
MeanEstimate summarize(const std::vector<double>& samples);

struct EnergyEstimate {
  std::uint64_t n = 0;
  MeanEstimate energy;
  double ratio = 0.0;  // mean / n^2
};

EnergyEstimate mc_expected_energy(std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                                  const RunOptions& opts = {});

struct ExactExpectation {
  std::uint64_t n = 0;
  std::uint64_t numerator = 0;  // sum of E over all 2^n sign patterns
  std::uint64_t denominator = 0;  // 2^n

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

inline constexpr std::uint64_t kExactEnergyMaxN = 16;

ExactExpectation exact_expected_energy(std::uint64_t n);

/// Construct a sequence of any generated kind. b is required for block and
/// p for prandom; seed is ignored by the deterministic kinds.
Sequence build_sequence(SequenceKind kind, std::uint64_t n, std::optional<std::uint64_t> b,
                        std::optional<double> p, std::uint64_t seed, const WarningSink& warn = {});

struct ScanRequest {
  SequenceKind kind = SequenceKind::identity;
  std::vector<std::uint64_t> n_list;
  std::optional<std::uint64_t> b;
  std::optional<double> p;
  std::uint64_t seed = 0;
  std::uint64_t reps = 1;
};

/// Per-rep "distinct_ratio" records (|S(a)| / n^2) followed by one
/// "distinct_ratio_mean" record per n.
std::vector<ExperimentRecord> scan_distinct(const ScanRequest& req, const RunOptions& opts = {},
                                            const WarningSink& warn = {});

/// Mean |S(a)| / n^2 over `reps` uniform random permutations of [n].
MeanEstimate permutation_ratio(std::uint64_t n, std::uint64_t reps, std::uint64_t seed,
                               const RunOptions& opts = {});

std::vector<ExperimentRecord> prandom_scan(std::uint64_t n, const std::vector<double>& p_list,
                                           std::uint64_t reps, std::uint64_t seed,
                                           const RunOptions& opts = {});

}  // namespace csums
