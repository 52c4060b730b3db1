#include "longrun/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "longrun/errors.hpp"
#include "longrun/format.hpp"
#include "longrun/numeric.hpp"

namespace longrun {

namespace {

unsigned resolve_threads(unsigned threads, std::uint64_t work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(work, 1)));
}

// Runs body(r) for r in [0, count) on a small pool; each r is claimed once.
template <class Body>
void parallel_for(std::uint64_t count, unsigned threads, Body body) {
  threads = resolve_threads(threads, count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t r = next++; r < count; r = next++) body(r);
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

struct Outcome {
  bool applied;
  bool covered;
  double width;
};

}  // namespace

SplitMix64 replication_stream(std::uint64_t master_seed, std::uint64_t r) {
  return SplitMix64(SplitMix64::mix(SplitMix64::mix(master_seed) ^ r));
}

RunSample sample_longest_run(std::uint64_t n, const BernoulliModel& model, SplitMix64& stream) {
  if (n < 1) throw InvalidArgument("sample_longest_run: n must be >= 1");
  const double p = model.p();
  std::uint64_t best = 0, current = 0, k = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(stream() >> 11) * 0x1.0p-53;
    if (u < p) {
      ++k;
      best = std::max(best, ++current);
    } else {
      current = 0;
    }
  }
  return {best, k};
}

CoverageReport coverage_experiment(const SimulationConfig& config, unsigned threads) {
  const BernoulliModel model(config.p);
  if (config.n < 1) throw InvalidArgument("coverage_experiment: n must be >= 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw InvalidArgument("coverage_experiment: alpha must lie in (0, 1)");
  }
  if (config.replications < 1) throw InvalidArgument("coverage_experiment: replications >= 1");
  if (config.methods.empty()) throw InvalidArgument("coverage_experiment: no methods given");

  const std::size_t m = config.methods.size();
  std::vector<Outcome> outcomes(config.replications * m);
  parallel_for(config.replications, threads, [&](std::uint64_t r) {
    auto stream = replication_stream(config.master_seed, r);
    const RunSample s = sample_longest_run(config.n, model, stream);
    for (std::size_t j = 0; j < m; ++j) {
      Outcome& o = outcomes[r * m + j];
      try {
        const auto ci = interval(config.methods[j], s.k, config.n, config.alpha, s.l_obs);
        o = {true, ci.contains(config.p), ci.width()};
      } catch (const InvalidArgument&) {
        o = {false, false, 0.0};
      }
    }
  });

  CoverageReport report{config, generator_id, {}};
  for (std::size_t j = 0; j < m; ++j) {
    std::uint64_t covered = 0, applied = 0;
    numeric::KahanSum sum;
    for (std::uint64_t r = 0; r < config.replications; ++r) {
      const Outcome& o = outcomes[r * m + j];
      if (!o.applied) continue;
      ++applied;
      covered += o.covered;
      sum += o.width;
    }
    const double mean = applied ? sum.value() / static_cast<double>(applied) : 0.0;
    numeric::KahanSum sq;
    for (std::uint64_t r = 0; r < config.replications; ++r) {
      const Outcome& o = outcomes[r * m + j];
      if (o.applied) sq += (o.width - mean) * (o.width - mean);
    }
    const double sd = applied > 1 ? std::sqrt(sq.value() / static_cast<double>(applied - 1)) : 0.0;
    report.per_method.push_back({config.methods[j], covered,
                                 static_cast<double>(covered) /
                                     static_cast<double>(config.replications),
                                 mean, sd, applied, config.replications - applied});
  }
  return report;
}

RatioSummary empirical_normalized_ratio(std::uint64_t n, const BernoulliModel& model,
                                        std::uint64_t replications, std::uint64_t master_seed,
                                        unsigned threads) {
  if (n < 2) throw InvalidArgument("empirical_normalized_ratio: n must be >= 2");
  if (replications < 1) throw InvalidArgument("empirical_normalized_ratio: replications >= 1");
  const double scale = nominal_value(n, model);
  std::vector<double> ratios(replications);
  parallel_for(replications, threads, [&](std::uint64_t r) {
    auto stream = replication_stream(master_seed, r);
    ratios[r] = static_cast<double>(sample_longest_run(n, model, stream).l_obs) / scale;
  });
  numeric::KahanSum sum;
  for (double x : ratios) sum += x;
  const double mean = sum.value() / static_cast<double>(replications);
  numeric::KahanSum sq;
  for (double x : ratios) sq += (x - mean) * (x - mean);
  const double sd =
      replications > 1 ? std::sqrt(sq.value() / static_cast<double>(replications - 1)) : 0.0;
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  return {n, model.p(), replications, master_seed, mean, sd, *lo, *hi};
}

std::string to_json(const CoverageReport& report) {
  using nlohmann::ordered_json;
  ordered_json methods = ordered_json::array();
  for (IntervalMethod m : report.config.methods) methods.push_back(to_string(m));
  ordered_json per_method = ordered_json::array();
  ordered_json skipped = ordered_json::object();
  for (const auto& s : report.per_method) {
    per_method.push_back({{"method", to_string(s.method)},
                          {"covered_count", s.covered_count},
                          {"coverage", s.coverage},
                          {"mean_width", s.mean_width},
                          {"width_std", s.width_std},
                          {"applied", s.applied}});
    skipped[to_string(s.method)] = s.skipped;
  }
  ordered_json j = {{"config",
                     {{"p", report.config.p},
                      {"n", report.config.n},
                      {"alpha", report.config.alpha},
                      {"replications", report.config.replications},
                      {"master_seed", report.config.master_seed},
                      {"methods", methods}}},
                    {"generator", report.generator},
                    {"per_method", per_method},
                    {"skipped", skipped}};
  return j.dump();
}

std::string to_csv(const CoverageReport& report) {
  std::ostringstream out;
  out << "method,replications,covered_count,coverage,mean_width,width_std,applied,skipped\n";
  for (const auto& s : report.per_method) {
    out << to_string(s.method) << ',' << report.config.replications << ',' << s.covered_count
        << ',' << format_double(s.coverage) << ',' << format_double(s.mean_width) << ','
        << format_double(s.width_std) << ',' << s.applied << ',' << s.skipped << '\n';
  }
  return out.str();
}

}  // namespace longrun
