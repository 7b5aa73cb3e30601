#include "coordgames/enumeration.hpp"

#include <algorithm>
#include <set>

#include "coordgames/notation.hpp"

namespace coord {

namespace {

struct Component {
  std::string name;
  int s1, s2;
  int edges;
};

std::vector<Component> component_catalog(int m) {
  std::vector<Component> out;
  out.push_back({"1x1", 1, 1, 1});
  out.push_back({"1x2", 1, 2, 2});
  out.push_back({"2x1", 2, 1, 2});
  for (int k = 2; k <= m; ++k) out.push_back({"Z(" + std::to_string(k) + ")", k, k, 2 * k - 1});
  out.push_back({"2x2", 2, 2, 4});
  for (int k = 3; k <= m; ++k) out.push_back({"O(" + std::to_string(k) + ")", k, k, 2 * k});
  for (int k = 3; k <= m; ++k)
    out.push_back({"Sigma(" + std::to_string(k) + ")", k - 1, k, 2 * k - 2});
  for (int k = 3; k <= m; ++k)
    out.push_back({"SigmaR(" + std::to_string(k) + ")", k, k - 1, 2 * k - 2});
  return out;
}

std::string multiset_notation(const std::vector<std::pair<std::string, int>>& counts) {
  std::string out;
  for (const auto& [name, count] : counts) {
    if (!out.empty()) out += " + ";
    if (count == 1) out += name;
    else out += std::to_string(count) + "*(" + name + ")";
  }
  return out;
}

std::array<std::vector<int>, 2> degree_multisets(const WlcGame& g) {
  std::array<std::vector<int>, 2> out;
  for (int side = 0; side < 2; ++side) {
    auto [b, e] = g.side_range(side);
    for (int c = b; c < e; ++c) out[side].push_back(g.degree(c));
    std::sort(out[side].begin(), out[side].end());
  }
  return out;
}

CensusEntry make_entry(std::string notation, WlcGame game) {
  CensusEntry entry;
  entry.notation = std::move(notation);
  entry.edge_count = static_cast<int>(game.winning.size());
  entry.degree_multiset = degree_multisets(game);
  Stage init = initial_stage(game);
  entry.has_initial_focal_point = !focal_points(init).empty();
  entry.solvable = one_round_solvable(init).has_value();
  entry.game = std::move(game);
  return entry;
}

bool passes(const CensusEntry& e, const EnumerationConstraints& c) {
  if (c.max_degree) {
    for (int side = 0; side < 2; ++side)
      if (!e.degree_multiset[side].empty() && e.degree_multiset[side].back() > *c.max_degree)
        return false;
  }
  if (c.edge_range &&
      (e.edge_count < c.edge_range->first || e.edge_count > c.edge_range->second))
    return false;
  return true;
}

std::vector<CensusEntry> enumerate_components(int m, const EnumerationConstraints& c) {
  auto catalog = component_catalog(m);
  std::vector<CensusEntry> out;
  std::set<std::string> seen;
  std::vector<std::pair<std::string, int>> counts;
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t idx, int t1, int t2) {
    if (t1 <= m && t2 <= m && std::max(t1, t2) == m) {
      std::string notation = multiset_notation(counts);
      WlcGame g = build_notation(notation);
      CensusEntry entry = make_entry(notation, g);
      if (passes(entry, c)) {
        auto code = canonical_game_code(g).first;
        if (seen.insert(code).second) out.push_back(std::move(entry));
      }
    }
    for (std::size_t i = idx; i < catalog.size(); ++i) {
      const auto& comp = catalog[i];
      if (t1 + comp.s1 > m || t2 + comp.s2 > m) continue;
      counts.push_back({comp.name, 1});
      for (int rep = 1;; ++rep) {
        int n1 = t1 + rep * comp.s1, n2 = t2 + rep * comp.s2;
        if (n1 > m || n2 > m) break;
        counts.back().second = rep;
        rec(i + 1, n1, n2);
      }
      counts.pop_back();
    }
  };
  rec(0, 0, 0);
  std::sort(out.begin(), out.end(), [](const CensusEntry& a, const CensusEntry& b) {
    return std::tie(a.edge_count, a.notation) < std::tie(b.edge_count, b.notation);
  });
  return out;
}

std::vector<CensusEntry> enumerate_relations(int m, const EnumerationConstraints& c) {
  std::vector<CensusEntry> out;
  std::set<std::string> seen;
  for (int n1 = 1; n1 <= m; ++n1)
    for (int n2 = 1; n2 <= m; ++n2) {
      if (std::max(n1, n2) != m) continue;
      int cells = n1 * n2;
      for (unsigned mask = 1; mask < (1u << cells); ++mask) {
        WlcGame g;
        std::vector<Profile> w;
        for (int i = 0; i < cells; ++i)
          if (mask & (1u << i)) w.push_back({i / n2, i % n2});
        try {
          g = make_game({n1, n2}, std::move(w));
        } catch (const ValidationError&) {
          continue;
        }
        CensusEntry entry = make_entry(decompose_notation(g), g);
        if (!passes(entry, c)) continue;
        auto code = canonical_game_code(g).first;
        if (seen.insert(code).second) out.push_back(std::move(entry));
      }
    }
  std::sort(out.begin(), out.end(), [](const CensusEntry& a, const CensusEntry& b) {
    return std::tie(a.edge_count, a.notation) < std::tie(b.edge_count, b.notation);
  });
  return out;
}

}  // namespace

std::string decompose_notation(const WlcGame& g) {
  if (g.players != 2) return "";
  int n = g.num_choices();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int c = 0; c < n; ++c) {
    if (comp[c] != -1) continue;
    std::vector<int> stack{c};
    comp[c] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& w : g.winning)
        for (int side = 0; side < 2; ++side)
          if (w[side] == v && comp[w[1 - side]] == -1) {
            comp[w[1 - side]] = ncomp;
            stack.push_back(w[1 - side]);
          }
    }
    ++ncomp;
  }
  std::vector<std::string> names;
  for (int k = 0; k < ncomp; ++k) {
    int a = 0, b = 0, e = 0, degmax = 0;
    bool all_deg2 = true;
    for (int v = 0; v < n; ++v) {
      if (comp[v] != k) continue;
      (g.side_of(v) == 0 ? a : b)++;
      int d = g.degree(v);
      degmax = std::max(degmax, d);
      if (d != 2) all_deg2 = false;
    }
    for (const auto& w : g.winning)
      if (comp[w[0]] == k) ++e;
    std::string name;
    if (e == a * b) {
      name = std::to_string(a) + "x" + std::to_string(b);
    } else if (degmax <= 2) {
      if (all_deg2 && a == b && e == 2 * a) name = "O(" + std::to_string(a) + ")";
      else if (a == b && e == 2 * a - 1) name = "Z(" + std::to_string(a) + ")";
      else if (b == a + 1 && e == 2 * b - 2) name = "Sigma(" + std::to_string(b) + ")";
      else if (a == b + 1 && e == 2 * a - 2) name = "SigmaR(" + std::to_string(a) + ")";
    }
    if (name.empty()) return "";
    names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  std::vector<std::pair<std::string, int>> counts;
  for (const auto& name : names) {
    if (!counts.empty() && counts.back().first == name) counts.back().second++;
    else counts.push_back({name, 1});
  }
  return multiset_notation(counts);
}

std::vector<CensusEntry> enumerate_m_choice(int m, const EnumerationConstraints& c) {
  if (m < 1) throw DomainError("enumerate_m_choice needs m >= 1");
  if (c.max_degree && *c.max_degree <= 2) {
    if (m > 5) throw LimitExceededError("degree-2 enumeration supports m <= 5");
    return enumerate_components(m, c);
  }
  if (m > 3) throw LimitExceededError("unconstrained enumeration supports m <= 3");
  return enumerate_relations(m, c);
}

WlcGame gstar() {
  return make_game({5, 5},
                   {{0, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 4}});
}

namespace {

AlgebraicValue rational_value(Rational q) {
  Float50 approx = Float50(numerator(q).str()) / Float50(denominator(q).str());
  return AlgebraicValue{true, std::move(q), "", approx, false};
}

void classify_entry(CensusEntry& entry, const std::map<std::string, std::string>& hard,
                    bool allow_wm_bound) {
  std::string code = canonical_game_code(entry.game).first;
  auto it = hard.find(code);
  if (it != hard.end()) {
    const std::string& which = it->second;
    if (which == "CM(3)") {
      entry.ect = rational_value(exact_ect(entry.game, ProtocolSpec::la()).value);
      entry.ect_method = "exact:la";
    } else if (which == "O(3)") {
      entry.ect = rational_value(exact_ect(entry.game, ProtocolSpec::uniform()).value);
      entry.ect_method = "exact:uniform";
    } else if (which == "1x2+2x1") {
      auto fp = three_choice_fixed_point();
      entry.ect = AlgebraicValue{false, {}, "(1+sqrt(4+sqrt(17)))/2", fp.e1, false};
      entry.ect_method = "fixed-point";
    } else if (which == "CM(5)") {
      entry.ect = rational_value(exact_ect(entry.game, ProtocolSpec::la()).value);
      entry.ect_method = "exact:la";
    } else if (which == "Sigma(3)+SigmaR(3)") {
      entry.ect = rational_value(Rational(2));
      entry.ect_method = "bound:two-round";
      entry.ect_is_bound = true;
    } else if (which == "1x2+2x1+2*(1x1)") {
      auto fp = three_choice_fixed_point();
      entry.ect = AlgebraicValue{false, {}, "(1+sqrt(4+sqrt(17)))/2", fp.e1, true};
      entry.ect_method = "bound:fixed-point";
      entry.ect_is_bound = true;
    } else if (which == "O(3)+2*(1x1)") {
      entry.ect = rational_value(Rational(3, 2));
      entry.ect_method = "bound:uniform";
      entry.ect_is_bound = true;
    }
    return;
  }
  if (entry.solvable || entry.has_initial_focal_point) {
    entry.ect = rational_value(Rational(1));
    entry.ect_method = entry.solvable ? "one-round" : "focal";
    return;
  }
  // |W| > 8 five-choice remainder: certified by the WM bound 3 - 2|W|/25.
  if (allow_wm_bound) {
    Rational bound = wm_ect_bound(entry.game);
    if (bound < Rational(7, 3)) {
      entry.ect = rational_value(bound);
      entry.ect_method = "bound:wm";
      entry.ect_is_bound = true;
      return;
    }
  }
  throw DomainError("census found an unclassified game: " + entry.notation);
}

}  // namespace

CensusReport census_report(int m) {
  if (m != 3 && m != 5) throw DomainError("census_report supports m in {3, 5}");
  CensusReport report;
  report.m = m;
  EnumerationConstraints c;
  c.max_degree = 2;
  report.entries = enumerate_m_choice(m, c);

  std::map<std::string, std::string> hard;
  auto code_of = [](const std::string& notation) {
    return canonical_game_code(build_notation(notation)).first;
  };
  if (m == 3) {
    hard[code_of("CM(3)")] = "CM(3)";
    hard[code_of("O(3)")] = "O(3)";
    hard[code_of("1x2 + 2x1")] = "1x2+2x1";
  } else {
    hard[code_of("CM(5)")] = "CM(5)";
    hard[code_of("Sigma(3) + SigmaR(3)")] = "Sigma(3)+SigmaR(3)";
    hard[code_of("1x2 + 2x1 + 2*(1x1)")] = "1x2+2x1+2*(1x1)";
    hard[code_of("O(3) + 2*(1x1)")] = "O(3)+2*(1x1)";
  }
  for (auto& entry : report.entries) {
    classify_entry(entry, hard, m == 5 && entry.edge_count > 8);
    report.counts_by_edges[entry.edge_count]++;
  }
  if (m == 5) {
    CensusEntry ladder = make_entry("1x4 + 4x1", build_notation("1x4 + 4x1"));
    ladder.ect = rational_value(Rational(2));
    ladder.ect_method = "bound:half-weight-wm";
    ladder.ect_is_bound = true;
    report.specials.push_back(std::move(ladder));

    CensusEntry star = make_entry("G*", gstar());
    star.ect = rational_value(Rational(2));
    star.ect_method = "bound:two-round";
    star.ect_is_bound = true;
    report.specials.push_back(std::move(star));
  }
  return report;
}

}  // namespace coord
