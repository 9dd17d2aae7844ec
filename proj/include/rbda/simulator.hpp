#ifndef RBDA_SIMULATOR_HPP
#define RBDA_SIMULATOR_HPP

#include <cstdint>
#include <string>

#include "rbda/problem.hpp"

namespace rbda {

enum class EfficacyEndpoint { lower, upper };

struct SimulationConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double t = 0.5;
  double s = 2.0;
  double alpha = 0.5;
  std::string decision;
  EfficacyEndpoint endpoint = EfficacyEndpoint::lower;
  unsigned threads = 0;  // 0: one per hardware thread
};

struct SimulationResult {
  double presence_before_rate = 0.0;
  double presence_after_rate = 0.0;
  double presence_before_se = 0.0;
  double presence_after_se = 0.0;
  std::uint64_t accepted_samples = 0;
  std::uint64_t total_samples = 0;

  bool operator==(const SimulationResult&) const = default;
};

/// Forward sampling of the presence model with rejection on the problem's
/// evidence. Samples are drawn in fixed-size blocks; block b uses a
/// std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(b)), so results
/// depend only on (config, problem) and not on the number of worker threads.
/// Throws Error(degenerate_conditioning) if no sample matches the evidence.
SimulationResult simulate(const SimulationConfig& config, const ProblemDefinition& problem);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rbda

#endif  // RBDA_SIMULATOR_HPP
