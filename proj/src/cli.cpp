#include "csums/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csums/bounds.hpp"
#include "csums/energy.hpp"
#include "csums/errors.hpp"
#include "csums/experiments.hpp"
#include "csums/probability.hpp"
#include "csums/records.hpp"
#include "csums/sequence.hpp"

namespace csums {

namespace {

using ordered_json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct CommonOptions {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string format = "csv";
  std::string out_path;
  std::uint64_t mem_cap_mib = kDefaultMemCapBytes / kMiB;
  unsigned threads = 0;

  RunOptions run() const { return {threads, mem_cap_mib * kMiB}; }
  bool json() const { return format == "json"; }
};

struct SequenceOptions {
  std::string kind;
  std::optional<std::uint64_t> b;
  std::optional<double> p;
  std::vector<std::uint64_t> values;
  std::string in_path;
};

std::string cell_text(const ordered_json& v) {
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

// Rows share the key order of the first row.
void write_table(std::ostream& out, const std::vector<ordered_json>& rows, bool json,
                 const std::vector<std::string>& header) {
  if (json) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) arr.push_back(r);
    out << arr.dump(2) << '\n';
    return;
  }
  CsvTable table(header);
  for (const auto& r : rows) {
    std::vector<std::string> cells;
    for (const auto& key : header) cells.push_back(cell_text(r.at(key)));
    table.add_row(std::move(cells));
  }
  table.write(out);
}

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records, bool json) {
  if (json) write_records_json(out, records);
  else write_records_csv(out, records);
}

Sequence load_sequence(const SequenceOptions& so, const CommonOptions& co, std::ostream& err) {
  if (!so.in_path.empty()) {
    std::ifstream in(so.in_path);
    if (!in) throw PreconditionError("cannot open " + so.in_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("cannot parse ") + so.in_path + ": " + e.what());
    }
    return sequence_from_json(j);
  }
  if (so.kind.empty()) throw PreconditionError("need --kind or --in");
  const SequenceKind kind = parse_kind(so.kind);
  if (kind == SequenceKind::explicit_values) {
    return make_explicit(so.values, co.n > 0 ? std::optional<std::uint64_t>(co.n) : std::nullopt);
  }
  if (co.n < 1) throw PreconditionError("--n must be >= 1");
  return build_sequence(kind, co.n, so.b, so.p, co.seed,
                        [&](std::string_view w) { err << "warning: " << w << '\n'; });
}

void add_sequence_options(CLI::App* sub, SequenceOptions& so) {
  sub->add_option("--kind", so.kind, "identity|rademacher|block|permutation|prandom|explicit");
  sub->add_option("--b", so.b, "block period");
  sub->add_option("--p", so.p, "inclusion probability (prandom)");
  sub->add_option("--values", so.values, "explicit values")->delimiter(',');
  sub->add_option("--in", so.in_path, "read a sequence JSON file");
}

std::int64_t since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consecutive sums laboratory", "csums"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions co;
  app.add_option("--n", co.n, "sequence bound / length");
  app.add_option("--seed", co.seed, "master seed")->capture_default_str();
  app.add_option("--trials,--reps", co.trials, "Monte Carlo trials / repetitions");
  app.add_option("--format", co.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", co.out_path, "output path (default stdout)");
  app.add_option("--mem-cap-mib", co.mem_cap_mib, "memory cap for sieves and difference buffers")->capture_default_str();
  app.add_option("--threads", co.threads, "worker threads (0 = all cores)");

  SequenceOptions so;
  std::vector<std::uint64_t> n_list;
  std::vector<double> p_list;
  std::optional<double> alpha;
  std::uint64_t n_max = 60, m_max = 30;
  bool brute = false, decomposition = false, direct = false;

  auto* c_constants = app.add_subcommand("constants", "named constants of the bounds");
  auto* c_construct = app.add_subcommand("construct", "build a sequence");
  add_sequence_options(c_construct, so);
  auto* c_count = app.add_subcommand("count", "count distinct consecutive sums");
  add_sequence_options(c_count, so);
  c_count->add_flag("--brute", brute, "also run the hash-set oracle");
  auto* c_energy = app.add_subcommand("energy", "additive energy of the partial-sum set");
  add_sequence_options(c_energy, so);
  c_energy->add_flag("--check-decomposition", decomposition, "verify the pair-coincidence decomposition");
  auto* c_mc = app.add_subcommand("mc-energy", "Monte Carlo mean energy of the 3i+eps model");
  auto* c_exact = app.add_subcommand("exact-energy", "exact mean energy of the 3i+eps model, n <= 16");
  auto* c_scan = app.add_subcommand("scan", "|S(a)|/n^2 over a list of n");
  add_sequence_options(c_scan, so);
  c_scan->add_option("--n-list", n_list, "comma-separated n values")->delimiter(',');
  auto* c_perm = app.add_subcommand("permutation", "mean |S(a)|/n^2 for random permutations");
  auto* c_prandom = app.add_subcommand("prandom", "|S(a)|/n^2 for p-random subsets");
  c_prandom->add_option("--p-list", p_list, "comma-separated p values")->delimiter(',')->required();
  auto* c_upper = app.add_subcommand("upper-bound", "check |S(a)| <= ceil(alpha(n+1)^2/2) + |L_n|");
  add_sequence_options(c_upper, so);
  c_upper->add_option("--alpha", alpha, "split parameter (default: optimal alpha)");
  auto* c_lattice = app.add_subcommand("lattice", "count L_n and compare with the region area");
  c_lattice->add_option("--n-list", n_list, "comma-separated n values")->delimiter(',');
  c_lattice->add_option("--alpha", alpha, "threshold parameter (default: optimal alpha)");
  auto* c_gcd = app.add_subcommand("gcdsum", "G(n) = sum gcd(k,l)/l^{3/2}");
  c_gcd->add_option("--n-list", n_list, "comma-separated n values")->delimiter(',');
  c_gcd->add_flag("--direct", direct, "use the direct double loop");
  auto* c_lemma = app.add_subcommand("lemma", "exact check of P(X = 0 mod m) <= 1/m + 2/sqrt(n)");
  c_lemma->add_option("--n-max", n_max)->capture_default_str();
  c_lemma->add_option("--m-max", m_max)->capture_default_str();

  std::vector<std::string> argv_store{"csums"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file_out;
  std::ostream* sink = &out;
  if (!co.out_path.empty()) {
    file_out.open(co.out_path);
    if (!file_out) {
      err << "error: cannot open " << co.out_path << '\n';
      return kExitUsage;
    }
    sink = &file_out;
  }
  std::ostream& os = *sink;
  const auto t0 = Clock::now();
  const auto n_values = [&] {
    if (!n_list.empty()) return n_list;
    if (co.n > 0) return std::vector<std::uint64_t>{co.n};
    throw PreconditionError("need --n or --n-list");
  };

  try {
    if (*c_constants) {
      const auto& c = math_constants();
      const std::pair<const char*, double> items[] = {
          {"c4", c.c4}, {"alpha_star", c.alpha_star}, {"h_min", c.h_min},
          {"konieczny", c.konieczny}, {"eft_delta", c.eft_delta},
          {"c2_rough", c.c2_rough}, {"c3_rough", c.c3_rough}};
      std::vector<ordered_json> rows;
      for (const auto& [name, value] : items) rows.push_back({{"name", name}, {"value", value}});
      write_table(os, rows, co.json(), {"name", "value"});
    } else if (*c_construct) {
      const Sequence a = load_sequence(so, co, err);
      if (co.json()) {
        os << to_json(a).dump() << '\n';
      } else {
        std::vector<ordered_json> rows;
        for (std::size_t i = 0; i < a.values.size(); ++i) rows.push_back({{"index", i + 1}, {"value", a.values[i]}});
        write_table(os, rows, false, {"index", "value"});
      }
    } else if (*c_count) {
      const Sequence a = load_sequence(so, co, err);
      const std::uint64_t count = count_distinct_sums(a, co.mem_cap_mib * kMiB);
      std::vector<ExperimentRecord> recs;
      auto base = [&] {
        ExperimentRecord r;
        r.command = "count";
        r.param("kind", std::string(to_string(a.kind))).param("n", a.n).param("k", static_cast<std::uint64_t>(a.length()));
        if (a.b) r.param("b", *a.b);
        if (a.p) r.param("p", *a.p);
        r.seed = a.seed;
        return r;
      };
      ExperimentRecord r = base();
      r.statistic = "distinct_sums";
      r.value = static_cast<double>(count);
      recs.push_back(r);
      if (a.n > 0) {
        ExperimentRecord ratio = base();
        ratio.statistic = "distinct_ratio";
        ratio.value = static_cast<double>(count) / (static_cast<double>(a.n) * static_cast<double>(a.n));
        recs.push_back(ratio);
      }
      if (brute) {
        ExperimentRecord b = base();
        b.statistic = "brute_distinct_sums";
        b.value = static_cast<double>(brute_distinct_sums(a));
        recs.push_back(b);
      }
      for (auto& x : recs) x.wall_ms = since(t0);
      write_records(os, recs, co.json());
    } else if (*c_energy) {
      const Sequence a = load_sequence(so, co, err);
      const PartialSumSet p = partial_sums(a);
      const EnergyReport rep = additive_energy(p, EnergyLimits{kEnergyMaxSetSize, co.mem_cap_mib * kMiB});
      ordered_json row = to_json(rep);
      std::vector<std::string> header{"set_size", "energy", "diff_support", "cs_lower_bound", "distinct_sums"};
      if (decomposition) {
        const DecompositionCheck d = energy_decomposition_check(p);
        row["ordered_coincidences"] = d.ordered_coincidences;
        row["decomposition_ok"] = d.holds;
        header.insert(header.end(), {"ordered_coincidences", "decomposition_ok"});
      }
      if (co.json()) os << row.dump(2) << '\n';
      else write_table(os, {row}, false, header);
    } else if (*c_mc) {
      if (co.n < 1) throw PreconditionError("--n must be >= 1");
      const std::uint64_t trials = co.trials > 0 ? co.trials : 1000;
      const EnergyEstimate est = mc_expected_energy(co.n, trials, co.seed, co.run());
      const double n2 = static_cast<double>(co.n) * static_cast<double>(co.n);
      ExperimentRecord mean;
      mean.command = "mc-energy";
      mean.param("n", co.n).param("streams", "0-" + std::to_string(trials - 1));
      mean.statistic = "mean_energy";
      mean.value = est.energy.mean;
      mean.std_error = est.energy.std_error;
      mean.trials = trials;
      mean.seed = co.seed;
      ExperimentRecord ratio = mean;
      ratio.statistic = "mean_energy_over_n2";
      ratio.value = est.ratio;
      if (ratio.std_error) ratio.std_error = *ratio.std_error / n2;
      mean.wall_ms = ratio.wall_ms = since(t0);
      write_records(os, {mean, ratio}, co.json());
    } else if (*c_exact) {
      if (co.n < 1) throw PreconditionError("--n must be >= 1");
      const ExactExpectation ex = exact_expected_energy(co.n);
      ExperimentRecord r;
      r.command = "exact-energy";
      r.param("n", co.n).param("numerator", ex.numerator).param("denominator", ex.denominator);
      r.statistic = "expected_energy";
      r.value = ex.value();
      r.wall_ms = since(t0);
      write_records(os, {r}, co.json());
    } else if (*c_scan) {
      if (so.kind.empty()) throw PreconditionError("scan needs --kind");
      ScanRequest req{.kind = parse_kind(so.kind), .n_list = n_values(), .b = so.b, .p = so.p,
                      .seed = co.seed, .reps = co.trials > 0 ? co.trials : 1};
      auto recs = scan_distinct(req, co.run(), [&](std::string_view w) { err << "warning: " << w << '\n'; });
      write_records(os, recs, co.json());
    } else if (*c_perm) {
      if (co.n < 1) throw PreconditionError("--n must be >= 1");
      const std::uint64_t reps = co.trials > 0 ? co.trials : 5;
      const MeanEstimate est = permutation_ratio(co.n, reps, co.seed, co.run());
      ExperimentRecord r;
      r.command = "permutation";
      r.param("n", co.n).param("streams", "0-" + std::to_string(reps - 1))
          .param("reference", math_constants().konieczny);
      r.statistic = "distinct_ratio_mean";
      r.value = est.mean;
      r.std_error = est.std_error;
      r.trials = reps;
      r.seed = co.seed;
      r.wall_ms = since(t0);
      write_records(os, {r}, co.json());
    } else if (*c_prandom) {
      if (co.n < 1) throw PreconditionError("--n must be >= 1");
      auto recs = prandom_scan(co.n, p_list, co.trials > 0 ? co.trials : 1, co.seed, co.run());
      write_records(os, recs, co.json());
    } else if (*c_upper) {
      const Sequence a = load_sequence(so, co, err);
      const UpperBoundCheck c = upper_bound_check(a, alpha.value_or(math_constants().alpha_star), co.mem_cap_mib * kMiB);
      ordered_json row{{"n", c.n}, {"alpha", c.alpha}, {"lhs", c.lhs}, {"small_part", c.small_part},
                       {"lattice", c.lattice}, {"rhs", c.rhs}, {"ok", c.ok}};
      if (co.json()) os << row.dump(2) << '\n';
      else write_table(os, {row}, false, {"n", "alpha", "lhs", "small_part", "lattice", "rhs", "ok"});
    } else if (*c_lattice) {
      const double a = alpha.value_or(math_constants().alpha_star);
      std::vector<ordered_json> rows;
      for (std::uint64_t n : n_values()) {
        const LatticeCount lc = lattice_count(n, a);
        rows.push_back({{"n", n}, {"alpha", a}, {"count", lc.count}, {"ratio", lc.ratio},
                        {"measure", lc.measure}, {"abs_err", std::abs(lc.ratio - lc.measure)}});
      }
      write_table(os, rows, co.json(), {"n", "alpha", "count", "ratio", "measure", "abs_err"});
    } else if (*c_gcd) {
      std::vector<ordered_json> rows;
      for (std::uint64_t n : n_values()) {
        const double g = direct ? gcd_sum_direct(n) : gcd_sum(n);
        const double nd = static_cast<double>(n);
        const double scale = std::sqrt(nd) * std::log(nd);
        rows.push_back({{"n", n}, {"G", g}, {"G_over_sqrtn_logn", n > 1 ? ordered_json(g / scale) : ordered_json(nullptr)}});
      }
      write_table(os, rows, co.json(), {"n", "G", "G_over_sqrtn_logn"});
    } else if (*c_lemma) {
      std::vector<ordered_json> rows;
      std::uint64_t failures = 0;
      for (const LemmaRow& r : lemma_bound_check(n_max, m_max)) {
        failures += r.ok ? 0 : 1;
        rows.push_back({{"n", r.n}, {"m", r.m}, {"probability", r.probability}, {"bound", r.bound}, {"ok", r.ok}});
      }
      write_table(os, rows, co.json(), {"n", "m", "probability", "bound", "ok"});
      err << "lemma: " << rows.size() << " cells, " << failures << " failures\n";
    }
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace csums
