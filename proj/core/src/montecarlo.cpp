#include "coordgames/montecarlo.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

namespace coord {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Sampler {
  std::vector<std::pair<int, std::uint64_t>> cumulative;  // (choice, cum weight)
  std::uint64_t denom = 1;

  int draw(std::mt19937_64& gen) const {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % denom;
    std::uint64_t x;
    do {
      x = gen();
    } while (x >= limit);
    std::uint64_t r = x % denom;
    for (const auto& [choice, cum] : cumulative)
      if (r < cum) return choice;
    return cumulative.back().first;
  }
};

Sampler make_sampler(const Distribution& d) {
  BigInt denom = 1;
  for (const auto& [c, w] : d.weights) denom = lcm(denom, BigInt(denominator(w)));
  if (denom > BigInt(UINT64_MAX))
    throw LimitExceededError("distribution denominator exceeds 64 bits");
  Sampler s;
  s.denom = denom.convert_to<std::uint64_t>();
  std::uint64_t cum = 0;
  for (const auto& [c, w] : d.weights) {
    BigInt units = numerator(w) * (denom / denominator(w));
    cum += units.convert_to<std::uint64_t>();
    s.cumulative.emplace_back(c, cum);
  }
  return s;
}

// Cheap renaming-invariant signature of a stage, used only to bucket the
// orbit store; matches are confirmed by an explicit renaming search.
std::string stage_shape(const Stage& s) {
  std::string out = std::to_string(s.rounds()) + "#";
  std::map<int, int> first_seen;
  std::vector<int> involved;
  for (const auto& h : s.history)
    for (int c : h) {
      auto [it, inserted] = first_seen.emplace(c, static_cast<int>(first_seen.size()));
      if (inserted) involved.push_back(c);
      out += static_cast<char>('A' + it->second);
    }
  out += "#";
  for (int c : involved) out += std::to_string(s.game.degree(c)) + ",";
  out += "#";
  for (int a : involved)
    for (int b : involved) {
      if (s.game.side_of(a) == s.game.side_of(b)) continue;
      Profile p = s.game.side_of(a) == 0 ? Profile{a, b} : Profile{b, a};
      out += s.game.is_winning(p) ? '1' : '0';
    }
  return out;
}

struct OrbitEntry {
  Stage rep;
  std::array<Sampler, 2> samplers;
  std::array<Distribution, 2> dists;
};

struct DistCache {
  const ProtocolSpec* p0;
  const ProtocolSpec* p1;
  std::vector<OrbitEntry> orbits;
  std::multimap<std::string, int> buckets;
  std::unordered_map<std::string, std::array<Sampler, 2>> by_history;

  const std::array<Sampler, 2>& get(const Stage& s, const std::string& key) {
    auto hit = by_history.find(key);
    if (hit != by_history.end()) return hit->second;
    std::string shape = stage_shape(s);
    auto [lo, hi] = buckets.equal_range(shape);
    SearchOptions search;
    // Swap renamings exchange the players, which is only sound when both
    // players follow the same protocol.
    if (p0->name() != p1->name()) search.swap_only = false;
    for (auto it = lo; it != hi; ++it) {
      const OrbitEntry& orbit = orbits[it->second];
      auto r = find_renaming(s, orbit.rep, search);
      if (!r) continue;
      // Structural protocols commute with renamings, so the stored orbit
      // distribution pulls back to this concrete stage.
      std::array<Sampler, 2> pulled;
      for (int i = 0; i < 2; ++i) {
        int j = r->swap ? 1 - i : i;
        Distribution d;
        auto [b, e] = s.game.side_range(i);
        for (int c = b; c < e; ++c) {
          Rational w = orbit.dists[j].at(r->pi[c]);
          if (w != 0) d.weights[c] = w;
        }
        pulled[i] = make_sampler(d);
      }
      return by_history.emplace(key, std::move(pulled)).first->second;
    }
    OrbitEntry orbit;
    orbit.rep = s;
    orbit.dists = {evaluate(*p0, s, 0), evaluate(*p1, s, 1)};
    orbit.samplers = {make_sampler(orbit.dists[0]), make_sampler(orbit.dists[1])};
    std::array<Sampler, 2> result = orbit.samplers;
    buckets.emplace(std::move(shape), static_cast<int>(orbits.size()));
    orbits.push_back(std::move(orbit));
    return by_history.emplace(key, std::move(result)).first->second;
  }
};

}  // namespace

SimReport simulate(const WlcGame& g, const ProtocolSpec& p0, const ProtocolSpec& p1,
                   const SimOptions& opt) {
  require_two_player(g, "simulate");
  if (opt.trials < 1) throw DomainError("simulate needs at least one trial");
  if (opt.max_rounds < 1) throw DomainError("simulate needs max_rounds >= 1");
  Stage init = initial_stage(g);
  DistCache cache{&p0, &p1, {}, {}, {}};
  SimReport report;
  report.trials = opt.trials;
  report.seed = opt.seed;
  report.rng = "mt19937_64 seeded per trial from the splitmix64 stream at seed";
  long double sum = 0, sumsq = 0;
  for (long trial = 0; trial < opt.trials; ++trial) {
    // splitmix64 stream: xor-mixing the trial index instead would give two
    // adjacent master seeds identical trial-seed multisets.
    std::mt19937_64 gen(
        splitmix64(opt.seed + static_cast<std::uint64_t>(trial) * 0x9e3779b97f4a7c15ULL));
    Stage stage = init;
    std::string key;
    int rounds = 0;
    bool done = false;
    while (rounds < opt.max_rounds) {
      const auto& samplers = cache.get(stage, key);
      int c0 = samplers[0].draw(gen);
      int c1 = samplers[1].draw(gen);
      ++rounds;
      Profile prof{c0, c1};
      if (g.is_winning(prof)) {
        done = true;
        break;
      }
      stage = play_round(stage, prof);
      key += static_cast<char>(1 + c0);
      key += static_cast<char>(1 + c1);
    }
    if (!done) ++report.truncated;
    sum += rounds;
    sumsq += static_cast<long double>(rounds) * rounds;
    report.max_rounds_observed = std::max(report.max_rounds_observed, rounds);
    if (opt.histogram) ++report.histogram[rounds];
  }
  long double n = static_cast<long double>(opt.trials);
  report.mean_rounds = static_cast<double>(sum / n);
  long double var = sumsq / n - (sum / n) * (sum / n);
  if (var < 0) var = 0;
  report.std_error = static_cast<double>(std::sqrt(var / n));
  return report;
}

SimReport simulate(const WlcGame& g, const ProtocolSpec& p, const SimOptions& opt) {
  return simulate(g, p, p, opt);
}

}  // namespace coord
