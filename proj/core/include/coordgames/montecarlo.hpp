#pragma once

#include <cstdint>
#include <map>

#include "coordgames/protocols.hpp"

namespace coord {

struct SimOptions {
  long trials = 10000;
  std::uint64_t seed = 1;
  int max_rounds = 1000;
  bool histogram = false;
};

struct SimReport {
  long trials = 0;
  double mean_rounds = 0;
  double std_error = 0;
  long truncated = 0;          // trials hitting max_rounds without coordinating
  int max_rounds_observed = 0;
  std::uint64_t seed = 0;
  std::string rng;             // generator description, fixed across platforms
  std::map<int, long> histogram;
};

// Both players follow p; trials are seeded independently from the master seed
// (splitmix64 stream), so results do not depend on scheduling or trial order.
SimReport simulate(const WlcGame& g, const ProtocolSpec& p, const SimOptions& opt);

// Cross-protocol mode: player 1 follows p0, player 2 follows p1.
SimReport simulate(const WlcGame& g, const ProtocolSpec& p0, const ProtocolSpec& p1,
                   const SimOptions& opt);

}  // namespace coord
