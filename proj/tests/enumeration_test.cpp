#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "coordgames/enumeration.hpp"
#include "coordgames/notation.hpp"

using namespace coord;

namespace {

const CensusEntry* find_entry(const std::vector<CensusEntry>& entries, const WlcGame& g) {
  std::string code = canonical_game_code(g).first;
  for (const auto& e : entries)
    if (canonical_game_code(e.game).first == code) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("three-choice degree-2 census counts") {
  CensusReport r = census_report(3);
  CHECK(r.counts_by_edges[3] == 2);
  CHECK(r.counts_by_edges[4] == 3);
  CHECK(r.counts_by_edges[5] == 2);
  CHECK(r.counts_by_edges[6] == 1);
  CHECK(r.entries.size() == 8);
  CHECK(r.specials.empty());

  const CensusEntry* cm = find_entry(r.entries, build_notation("CM(3)"));
  REQUIRE(cm);
  CHECK(cm->ect.q == Rational(5, 3));
  CHECK(cm->ect_method == "exact:la");
  CHECK_FALSE(cm->ect_is_bound);

  const CensusEntry* cycle = find_entry(r.entries, build_notation("O(3)"));
  REQUIRE(cycle);
  CHECK(cycle->ect.q == Rational(3, 2));
  CHECK(cycle->ect_method == "exact:uniform");

  const CensusEntry* ladder = find_entry(r.entries, build_notation("1x2 + 2x1"));
  REQUIRE(ladder);
  CHECK_FALSE(ladder->ect.is_rational);
  CHECK(ladder->ect.tag == "(1+sqrt(4+sqrt(17)))/2");
  CHECK(ladder->ect_method == "fixed-point");
}

TEST_CASE("five-choice degree-2 census counts") {
  CensusReport r = census_report(5);
  CHECK(r.counts_by_edges[5] == 3);
  CHECK(r.counts_by_edges[6] == 6);
  CHECK(r.counts_by_edges[7] == 9);
  CHECK(r.counts_by_edges[8] == 10);

  const CensusEntry* cm = find_entry(r.entries, build_notation("CM(5)"));
  REQUIRE(cm);
  CHECK(cm->ect.q == Rational(7, 3));
  // Everything except CM(5) stays strictly below 7/3.
  for (const auto& e : r.entries) {
    CAPTURE(e.notation);
    if (&e == cm) continue;
    CHECK(e.ect.to_double() < 7.0 / 3 - 1e-9);
  }
  REQUIRE(r.specials.size() == 2);
  CHECK(r.specials[0].notation == "1x4 + 4x1");
  CHECK(r.specials[1].notation == "G*");
  for (const auto& e : r.specials) {
    CHECK(e.ect_is_bound);
    CHECK(e.ect.q == 2);
  }
  CHECK_THROWS_AS(census_report(4), DomainError);
}

TEST_CASE("census entries are pairwise non-isomorphic") {
  for (int m : {3, 5}) {
    CensusReport r = census_report(m);
    std::set<std::string> codes;
    for (const auto& e : r.entries) {
      CHECK(codes.insert(canonical_game_code(e.game).first).second);
      CHECK(std::max(e.game.side_size(0), e.game.side_size(1)) == m);
      CHECK(e.degree_multiset[0].back() <= 2);
      CHECK(e.degree_multiset[1].back() <= 2);
    }
  }
}

TEST_CASE("full 512-relation scan finds nothing outside the class list") {
  EnumerationConstraints none;
  auto all = enumerate_m_choice(3, none);
  std::set<std::string> codes;
  for (const auto& e : all) codes.insert(canonical_game_code(e.game).first);
  // Direct scan over all 3x3 winning relations; every valid game must already
  // have a representative.
  int valid = 0;
  for (unsigned mask = 1; mask < 512; ++mask) {
    std::vector<Profile> w;
    for (int i = 0; i < 9; ++i)
      if (mask & (1u << i)) w.push_back({i / 3, i % 3});
    WlcGame g;
    try {
      g = make_game({3, 3}, std::move(w));
    } catch (const ValidationError&) {
      continue;
    }
    if (!validate(g).ok()) continue;
    ++valid;
    CHECK(codes.count(canonical_game_code(g).first) == 1);
  }
  CHECK(valid > 0);
  // The degree-2 census is a subset of the unconstrained enumeration.
  EnumerationConstraints deg2;
  deg2.max_degree = 2;
  for (const auto& e : enumerate_m_choice(3, deg2))
    CHECK(codes.count(canonical_game_code(e.game).first) == 1);
}

TEST_CASE("a degree-3 choice makes a 3-choice game solvable") {
  EnumerationConstraints none;
  for (const auto& e : enumerate_m_choice(3, none)) {
    int degmax = std::max(e.degree_multiset[0].back(), e.degree_multiset[1].back());
    if (degmax == 3) {
      CAPTURE(e.edge_count);
      CHECK(e.solvable);
    }
  }
}

TEST_CASE("gstar has no focal point and resists one-round solutions") {
  WlcGame g = gstar();
  CHECK(validate(g).ok());
  CHECK(g.winning.size() == 8);
  Stage s = initial_stage(g);
  CHECK(focal_points(s).empty());
  CHECK_FALSE(one_round_solvable(s).has_value());
  int degmax = 0;
  for (int c = 0; c < g.num_choices(); ++c) degmax = std::max(degmax, g.degree(c));
  CHECK(degmax == 3);
}

TEST_CASE("decompose_notation round trips") {
  for (const char* text :
       {"CM(3)", "O(3)", "1x2 + 2x1", "Z(4) + 1x1", "Sigma(3) + SigmaR(3)", "2x2 + 1x1"}) {
    WlcGame g = build_notation(text);
    std::string back = decompose_notation(g);
    REQUIRE_FALSE(back.empty());
    CHECK(canonical_game_code(build_notation(back)).first == canonical_game_code(g).first);
  }
  CHECK(decompose_notation(gstar()).empty());
}

TEST_CASE("enumeration guards") {
  EnumerationConstraints none;
  CHECK_THROWS_AS(enumerate_m_choice(4, none), LimitExceededError);
  EnumerationConstraints deg2;
  deg2.max_degree = 2;
  CHECK_THROWS_AS(enumerate_m_choice(6, deg2), LimitExceededError);
  deg2.edge_range = {{4, 4}};
  for (const auto& e : enumerate_m_choice(3, deg2)) CHECK(e.edge_count == 4);
}
