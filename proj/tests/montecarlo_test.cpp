#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "coordgames/analysis.hpp"
#include "coordgames/montecarlo.hpp"
#include "coordgames/notation.hpp"

using namespace coord;

TEST_CASE("same seed, same report") {
  WlcGame g = build_notation("CM(3)");
  SimOptions opt;
  opt.trials = 5000;
  opt.seed = 42;
  opt.histogram = true;
  SimReport a = simulate(g, ProtocolSpec::wm(), opt);
  SimReport b = simulate(g, ProtocolSpec::wm(), opt);
  CHECK(a.mean_rounds == b.mean_rounds);
  CHECK(a.std_error == b.std_error);
  CHECK(a.histogram == b.histogram);
  opt.seed = 43;
  SimReport c = simulate(g, ProtocolSpec::wm(), opt);
  CHECK(a.mean_rounds != c.mean_rounds);
}

TEST_CASE("histogram accounts for every trial") {
  WlcGame g = build_notation("O(3)");
  SimOptions opt;
  opt.trials = 2000;
  opt.seed = 7;
  opt.histogram = true;
  SimReport r = simulate(g, ProtocolSpec::uniform(), opt);
  long total = 0;
  for (const auto& [rounds, count] : r.histogram) total += count;
  CHECK(total == r.trials);
  CHECK(r.truncated == 0);
  CHECK(r.trials == 2000);
  CHECK(r.seed == 7);
  CHECK_FALSE(r.rng.empty());
}

TEST_CASE("means track the exact chain within three standard errors") {
  struct Case {
    const char* game;
    ProtocolSpec p;
  };
  for (const Case& c : {Case{"CM(3)", ProtocolSpec::wm()},
                        Case{"CM(5)", ProtocolSpec::la()},
                        Case{"O(3)", ProtocolSpec::uniform()},
                        Case{"CM(4)", ProtocolSpec::touched(Rational(1, 2))}}) {
    WlcGame g = build_notation(c.game);
    SimOptions opt;
    opt.trials = 40000;
    opt.seed = 11;
    SimReport r = simulate(g, c.p, opt);
    double want = rational_to_double(exact_ect(g, c.p).value);
    CAPTURE(c.game);
    CHECK(std::abs(r.mean_rounds - want) <= 3 * r.std_error);
  }
}

TEST_CASE("lose-and-avoid respects its guaranteed horizon") {
  SimOptions opt;
  opt.trials = 20000;
  opt.seed = 3;
  SimReport r5 = simulate(build_notation("CM(5)"), ProtocolSpec::la(), opt);
  CHECK(r5.max_rounds_observed <= 3);
  SimReport r7 = simulate(build_notation("CM(7)"), ProtocolSpec::la(), opt);
  CHECK(r7.max_rounds_observed <= 4);
}

TEST_CASE("round cap truncates and reports") {
  WlcGame g = build_notation("CM(6)");
  SimOptions opt;
  opt.trials = 500;
  opt.seed = 5;
  opt.max_rounds = 1;
  SimReport r = simulate(g, ProtocolSpec::uniform(), opt);
  CHECK(r.truncated > 0);
  CHECK(r.max_rounds_observed == 1);
}

TEST_CASE("cross-protocol simulation stays sane") {
  WlcGame g = build_notation("CM(3)");
  SimOptions opt;
  opt.trials = 20000;
  opt.seed = 17;
  SimReport r = simulate(g, ProtocolSpec::wm(), ProtocolSpec::uniform(), opt);
  CHECK(r.truncated == 0);
  CHECK(r.mean_rounds > 1.0);
  CHECK(r.mean_rounds < 6.0);
  // Symmetric protocols give the mirrored run the same distribution family.
  SimReport m = simulate(g, ProtocolSpec::uniform(), ProtocolSpec::wm(), opt);
  CHECK(std::abs(r.mean_rounds - m.mean_rounds) <= 3 * (r.std_error + m.std_error));
}

TEST_CASE("simulation guards") {
  WlcGame g = build_notation("CM(2)");
  SimOptions opt;
  opt.trials = 0;
  CHECK_THROWS_AS(simulate(g, ProtocolSpec::uniform(), opt), DomainError);
  opt.trials = 10;
  opt.max_rounds = 0;
  CHECK_THROWS_AS(simulate(g, ProtocolSpec::uniform(), opt), DomainError);
}
