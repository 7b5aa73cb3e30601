#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "coordgames/notation.hpp"
#include "coordgames/symmetry.hpp"

using namespace coord;

namespace {

std::set<Renaming> as_set(const std::vector<Renaming>& v) { return {v.begin(), v.end()}; }

// All stages reachable from the initial stage in at most `depth` losing rounds.
std::vector<Stage> stages_to_depth(const WlcGame& g, int depth) {
  std::vector<Stage> out{initial_stage(g)};
  std::size_t lo = 0;
  for (int d = 0; d < depth; ++d) {
    std::size_t hi = out.size();
    for (std::size_t i = lo; i < hi; ++i) {
      auto [b0, e0] = g.side_range(0);
      auto [b1, e1] = g.side_range(1);
      for (int c0 = b0; c0 < e0; ++c0)
        for (int c1 = b1; c1 < e1; ++c1)
          if (!g.is_winning({c0, c1})) out.push_back(play_round(out[i], {c0, c1}));
    }
    lo = hi;
  }
  return out;
}

}  // namespace

TEST_CASE("compose and inverse") {
  WlcGame g = build_notation("CM(3)");
  Stage s = initial_stage(g);
  auto group = renaming_group(s);
  for (const auto& r : group) {
    Renaming id = compose(r, inverse(r));
    CHECK_FALSE(id.swap);
    for (int c = 0; c < g.num_choices(); ++c) CHECK(id.pi[c] == c);
  }
}

TEST_CASE("group orders on hand-checked games") {
  CHECK(renaming_group(initial_stage(build_notation("CM(2)"))).size() == 4);
  CHECK(renaming_group(initial_stage(build_notation("CM(3)"))).size() == 12);
  CHECK(renaming_group(initial_stage(build_notation("O(3)"))).size() == 12);
  CHECK(renaming_group(initial_stage(build_notation("Z(2)"))).size() == 2);
  // Asymmetric sides admit no swap renaming.
  for (const auto& r : renaming_group(initial_stage(build_notation("Sigma(3)"))))
    CHECK_FALSE(r.swap);
}

TEST_CASE("backtracking search matches the brute-force oracle") {
  for (const char* name : {"CM(2)", "CM(3)", "CM(4)", "O(3)", "1x2 + 2x1"}) {
    WlcGame g = build_notation(name);
    int depth = g.num_choices() <= 6 ? 2 : 1;
    for (const Stage& s : stages_to_depth(g, depth)) {
      CAPTURE(name);
      CAPTURE(s.history);
      CHECK(as_set(renaming_group(s)) == as_set(renaming_group_brute(s)));
      CHECK(equiv_partition(s) == equiv_partition_brute(s));
    }
  }
}

TEST_CASE("CM(3) after one miss") {
  WlcGame g = build_notation("CM(3)");
  Stage s = play_round(initial_stage(g), {0, 4});  // a1 vs b2
  auto group = renaming_group(s);
  CHECK(group.size() == 2);
  EquivPartition p = equiv_partition(s);
  CHECK(p.blocks.size() == 3);
  CHECK(p.blocks[0] == std::vector<int>{0, 4});
  CHECK(p.blocks[1] == std::vector<int>{1, 3});
  CHECK(p.blocks[2] == std::vector<int>{2, 5});
  auto focal = focal_points(s);
  CHECK(focal == std::vector<int>{2, 5});
  auto sol = one_round_solvable(s);
  REQUIRE(sol.has_value());
  CHECK(sol->k1 == std::vector<int>{2});
  CHECK(sol->k2 == std::vector<int>{5});
}

TEST_CASE("automorphism equivalence and similarity") {
  WlcGame g = build_notation("CM(2)");
  Stage s1 = play_round(initial_stage(g), {0, 3});  // a1 vs b2
  Stage s2 = play_round(initial_stage(g), {1, 2});  // a2 vs b1
  CHECK(automorphism_equivalent(s1, s2));
  CHECK(similar(s1, s2));
  CHECK(similarity_witness(s1, s2).has_value());
  CHECK(canonical_key(s1) == canonical_key(s2));
  // A second miss leaves the partition {a1,b2},{a2,b1} intact, so the deeper
  // stage stays equivalent to the one-miss stage but not to the initial one.
  Stage s3 = play_round(s1, {1, 2});
  CHECK(automorphism_equivalent(s1, s3));
  CHECK(similar(s1, s3));
  CHECK_FALSE(similar(initial_stage(g), s3));
  CHECK_FALSE(similar(initial_stage(g), s1));
}

TEST_CASE("similarity across renamed copies of one game") {
  WlcGame g = build_notation("CM(3)");
  // Same structure, relabeled: matching i -> (i+1 mod 3).
  WlcGame h = make_game({3, 3}, {{0, 1}, {1, 2}, {2, 0}});
  Stage s = play_round(initial_stage(g), {0, 4});
  Stage t = play_round(initial_stage(h), {0, 3});  // a miss in the relabeled game
  CHECK(similar(s, t));
  CHECK(canonical_key(s) == canonical_key(t));
  Stage t2 = play_round(initial_stage(h), {1, 4});
  CHECK(similar(s, t2));
}

TEST_CASE("dissimilar stages get distinct keys") {
  WlcGame g = build_notation("O(3)");
  Stage init = initial_stage(g);
  Stage miss = play_round(init, {0, 5});
  CHECK_FALSE(similar(init, miss));
  CHECK(canonical_key(init) != canonical_key(miss));
  CHECK(canonical_key(initial_stage(build_notation("CM(3)"))) !=
        canonical_key(initial_stage(build_notation("Z(3)"))));
}

TEST_CASE("canonical game code is renaming invariant") {
  WlcGame g = build_notation("1x2 + 2x1");
  WlcGame h = make_game({3, 3}, {{2, 0}, {2, 1}, {0, 2}, {1, 2}});
  CHECK(canonical_game_code(g).first == canonical_game_code(h).first);
  CHECK(canonical_game_code(g).first != canonical_game_code(build_notation("Z(3)")).first);
}

TEST_CASE("conjugates in matching games") {
  WlcGame g = build_notation("CM(3)");
  Stage s = play_round(initial_stage(g), {0, 4});
  auto cj = conjugates(s);
  // a1 and a2 are conjugate: their partners b1, b2 sit crosswise in the blocks.
  CHECK(std::count(cj.begin(), cj.end(), std::make_pair(0, 1)) == 1);
}

TEST_CASE("one-round solvability") {
  CHECK(one_round_solvable(initial_stage(build_notation("1x1"))).has_value());
  CHECK(one_round_solvable(initial_stage(build_notation("2x2"))).has_value());
  CHECK_FALSE(one_round_solvable(initial_stage(build_notation("1x2 + 2x1"))).has_value());
  CHECK_FALSE(one_round_solvable(initial_stage(build_notation("CM(2)"))).has_value());
  CHECK_FALSE(one_round_solvable(initial_stage(build_notation("CM(3)"))).has_value());
  CHECK_FALSE(one_round_solvable(initial_stage(build_notation("O(3)"))).has_value());
}

TEST_CASE("partition invariant buckets similar stages together") {
  WlcGame g = build_notation("CM(4)");
  Stage a = play_round(initial_stage(g), {0, 5});
  Stage b = play_round(initial_stage(g), {1, 6});
  CHECK(partition_invariant(g, equiv_partition(a)) == partition_invariant(g, equiv_partition(b)));
}
