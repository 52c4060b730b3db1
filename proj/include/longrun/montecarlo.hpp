#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "longrun/core_dist.hpp"
#include "longrun/inference.hpp"

namespace longrun {

/// SplitMix64 (Steele, Lea and Flood, 2014): a Weyl counter with step
/// 0x9E3779B97F4A7C15 followed by a 64-bit finalizer. Satisfies
/// UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return mix(state_ += 0x9E3779B97F4A7C15ULL); }
  /// The finalizer on its own.
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Identifier of the random-stream construction, recorded in every report.
inline constexpr const char* generator_id = "splitmix64;state0=mix(mix(master)^r)";

/// The stream for replication r: a pure function of (master_seed, r).
SplitMix64 replication_stream(std::uint64_t master_seed, std::uint64_t r);

struct RunSample {
  std::uint64_t l_obs;
  std::uint64_t k;  // number of successes
};

/// n Bernoulli(p) draws, success when the top 53 bits as a uniform on [0, 1)
/// fall below p. O(n) time, O(1) memory.
RunSample sample_longest_run(std::uint64_t n, const BernoulliModel& model, SplitMix64& stream);

struct SimulationConfig {
  double p;
  std::uint64_t n;
  double alpha;
  std::uint64_t replications;
  std::uint64_t master_seed;
  std::vector<IntervalMethod> methods;
};

struct MethodSummary {
  IntervalMethod method;
  std::uint64_t covered_count;
  double coverage;  // covered_count / replications
  double mean_width;  // over replications where the method applied
  double width_std;
  std::uint64_t applied;
  std::uint64_t skipped;  // degenerate draws the method cannot handle
};

struct CoverageReport {
  SimulationConfig config;
  std::string generator;
  std::vector<MethodSummary> per_method;
};

/// threads = 0 picks the hardware concurrency. The report does not depend on
/// the thread count: results are stored per replication and reduced in order.
CoverageReport coverage_experiment(const SimulationConfig& config, unsigned threads = 0);

struct RatioSummary {
  std::uint64_t n;
  double p;
  std::uint64_t replications;
  std::uint64_t master_seed;
  double mean;
  double sd;
  double min;
  double max;
};

/// Summary of L(n) / log_{1/p} n over independent replications.
RatioSummary empirical_normalized_ratio(std::uint64_t n, const BernoulliModel& model,
                                        std::uint64_t replications, std::uint64_t master_seed,
                                        unsigned threads = 0);

/// JSON object with keys config, generator, per_method, skipped.
std::string to_json(const CoverageReport& report);
/// method,replications,covered_count,coverage,mean_width,width_std,applied,skipped
std::string to_csv(const CoverageReport& report);

}  // namespace longrun
