#include "coordgames/protocols.hpp"

#include <algorithm>
#include <set>

namespace coord {

namespace {

Distribution uniform_over(const std::vector<int>& choices) {
  Distribution d;
  Rational w(1, static_cast<int>(choices.size()));
  for (int c : choices) d.weights[c] = w;
  return d;
}

std::vector<int> side_choices(const WlcGame& g, int player) {
  auto [b, e] = g.side_range(player);
  std::vector<int> out;
  for (int c = b; c < e; ++c) out.push_back(c);
  return out;
}

Distribution eval_wm(const Stage& s, int player) {
  const WlcGame& g = s.game;
  auto mine = side_choices(g, player);
  if (s.rounds() == 0) return uniform_over(mine);
  std::set<int> my_set, other_set;
  for (const auto& h : s.history) {
    my_set.insert(h[player]);
    other_set.insert(h[1 - player]);
  }
  if (my_set.size() == 1 && other_set.size() == 1) {
    int own = *my_set.begin();
    int theirs = *other_set.begin();
    std::vector<int> partners;
    for (int c : mine) {
      Profile p{player == 0 ? c : theirs, player == 0 ? theirs : c};
      if (g.is_winning(p)) partners.push_back(c);
    }
    Distribution d;
    d.weights[own] += Rational(1, 2);
    for (int c : partners) d.weights[c] += Rational(1, 2) / static_cast<int>(partners.size());
    return d;
  }
  if (my_set.size() == 2 && other_set.size() == 2) {
    Distribution d;
    for (int c : my_set) d.weights[c] = Rational(1, 2);
    return d;
  }
  return uniform_over(mine);
}

Distribution eval_la(const Stage& s, int player) {
  const WlcGame& g = s.game;
  auto mine = side_choices(g, player);
  auto others = side_choices(g, 1 - player);
  EquivPartition here = equiv_partition(s);
  std::vector<int> allowed;
  for (int c : mine) {
    bool avoided = false;
    for (int d : others) {
      Profile p(2);
      p[player] = c;
      p[1 - player] = d;
      if (g.is_winning(p)) continue;  // a winning reply ends play, no loop risk
      if (equiv_partition(play_round(s, p)) == here) {
        avoided = true;
        break;
      }
    }
    if (!avoided) allowed.push_back(c);
  }
  if (allowed.empty()) allowed = mine;
  return uniform_over(allowed);
}

Distribution eval_touched(const Stage& s, int player, const Rational& p) {
  const WlcGame& g = s.game;
  auto focal = focal_points(s);
  if (!focal.empty()) {
    // Deterministic completion: minimal focal point, then its minimal edge.
    int f = *std::min_element(focal.begin(), focal.end());
    Profile edge;
    for (const auto& w : g.winning)
      if (w[0] == f || w[1] == f) {
        edge = w;
        break;
      }
    Distribution d;
    d.weights[edge[player]] = 1;
    return d;
  }
  auto mine = side_choices(g, player);
  auto touched = touched_choices(s)[player];
  std::vector<int> untouched;
  std::set<int> tset(touched.begin(), touched.end());
  for (int c : mine)
    if (!tset.count(c)) untouched.push_back(c);
  if (touched.empty()) return uniform_over(mine);
  if (untouched.empty()) return uniform_over(touched);
  Distribution d;
  if (p > 0)
    for (int c : touched) d.weights[c] = p / static_cast<int>(touched.size());
  if (p < 1)
    for (int c : untouched) d.weights[c] = (1 - p) / static_cast<int>(untouched.size());
  return d;
}

Distribution eval_table(const ProtocolSpec& spec, const Stage& s, int player) {
  auto [key, rho] = canonical_key_with_map(s);
  auto it = spec.table.find(key);
  if (it == spec.table.end()) throw TableMissError("no table entry for class " + key);
  int canon_player = rho.swap ? 1 - player : player;
  const auto& row = it->second[canon_player];
  Distribution d;
  auto [b, e] = s.game.side_range(player);
  for (int c = b; c < e; ++c) {
    auto w = row.find(rho.pi[c]);
    if (w != row.end() && w->second != 0) d.weights[c] = w->second;
  }
  Rational total = 0;
  for (const auto& [c, w] : d.weights) total += w;
  if (total != 1) throw ValidationError("table distribution does not sum to 1");
  return d;
}

}  // namespace

ProtocolSpec ProtocolSpec::wm() { return {Kind::WM, {}, {}}; }
ProtocolSpec ProtocolSpec::la() { return {Kind::LA, {}, {}}; }
ProtocolSpec ProtocolSpec::uniform() { return {Kind::Uniform, {}, {}}; }

ProtocolSpec ProtocolSpec::touched(Rational p) {
  if (p < 0 || p > 1) throw DomainError("touched parameter must be in [0,1]");
  return {Kind::Touched, std::move(p), {}};
}

ProtocolSpec ProtocolSpec::table_from_json(const Json& j) {
  ProtocolSpec spec{Kind::Table, {}, {}};
  for (const auto& [key, players] : j.items()) {
    std::array<std::map<int, Rational>, 2> rows;
    for (const auto& [player, row] : players.items()) {
      int pi = std::stoi(player) - 1;
      if (pi < 0 || pi > 1) throw ValidationError("table player must be 1 or 2");
      for (const auto& [choice, prob] : row.items())
        rows[pi][std::stoi(choice)] = rational_from_string(prob.get<std::string>());
    }
    spec.table[key] = rows;
  }
  return spec;
}

ProtocolSpec ProtocolSpec::parse(const std::string& text) {
  if (text == "wm") return wm();
  if (text == "la") return la();
  if (text == "uniform") return uniform();
  if (text.rfind("touched:", 0) == 0)
    return touched(rational_from_string(text.substr(8)));
  throw ParseError(0, "unknown protocol '" + text + "'");
}

std::string ProtocolSpec::name() const {
  switch (kind) {
    case Kind::WM: return "wm";
    case Kind::LA: return "la";
    case Kind::Uniform: return "uniform";
    case Kind::Touched: return "touched:" + rational_to_string(touched_p);
    case Kind::Table: return "table";
  }
  return "?";
}

std::vector<int> ProtocolSpec::class_tags(const Stage& s) const {
  std::vector<int> tags(s.game.num_choices(), 0);
  switch (kind) {
    case Kind::WM: {
      // WM reads the per-player sets of choices used so far, but once either
      // set has three members every future evaluation is uniform, so the sets
      // stop mattering and tagging them would only split identical states.
      std::array<std::set<int>, 2> used;
      for (const Profile& round : s.history)
        for (int i = 0; i < 2; ++i) used[i].insert(round[i]);
      if (used[0].size() <= 2 && used[1].size() <= 2)
        for (const auto& side : used)
          for (int c : side) tags[c] = 1;
      break;
    }
    case Kind::Touched:
    case Kind::Table:
      for (const auto& side : touched_choices(s))
        for (int c : side) tags[c] = 1;
      break;
    case Kind::LA:
    case Kind::Uniform:
      break;
  }
  return tags;
}

Distribution evaluate(const ProtocolSpec& p, const Stage& s, int player) {
  require_two_player(s.game, "evaluate");
  if (s.is_final()) throw FinalStageError("cannot evaluate a protocol at a final stage");
  if (player < 0 || player > 1) throw DomainError("player index out of range");
  Distribution d;
  switch (p.kind) {
    case ProtocolSpec::Kind::WM: d = eval_wm(s, player); break;
    case ProtocolSpec::Kind::LA: d = eval_la(s, player); break;
    case ProtocolSpec::Kind::Uniform: d = uniform_over(side_choices(s.game, player)); break;
    case ProtocolSpec::Kind::Touched: d = eval_touched(s, player, p.touched_p); break;
    case ProtocolSpec::Kind::Table: d = eval_table(p, s, player); break;
  }
  Rational total = 0;
  for (auto it = d.weights.begin(); it != d.weights.end();) {
    if (it->second == 0) {
      it = d.weights.erase(it);
    } else {
      total += it->second;
      ++it;
    }
  }
  if (total != 1) throw DomainError("protocol distribution does not sum to 1");
  return d;
}

bool check_structurality(const ProtocolSpec& p, const Stage& s) {
  auto group = renaming_group(s);
  std::array<Distribution, 2> f{evaluate(p, s, 0), evaluate(p, s, 1)};
  for (const auto& r : group) {
    for (int i = 0; i < 2; ++i) {
      int j = r.swap ? 1 - i : i;
      auto [b, e] = s.game.side_range(i);
      for (int c = b; c < e; ++c)
        if (f[i].at(c) != f[j].at(r.pi[c])) return false;
    }
  }
  return true;
}

std::vector<std::pair<Profile, Rational>> support_profiles(const Distribution& d0,
                                                           const Distribution& d1) {
  std::vector<std::pair<Profile, Rational>> out;
  for (const auto& [c0, w0] : d0.weights)
    for (const auto& [c1, w1] : d1.weights) out.push_back({Profile{c0, c1}, w0 * w1});
  return out;
}

std::vector<std::pair<Profile, Rational>> support_profiles(const ProtocolSpec& p, const Stage& s) {
  return support_profiles(evaluate(p, s, 0), evaluate(p, s, 1));
}

Json distribution_to_json(const Distribution& d, const WlcGame& g) {
  Json out = Json::object();
  for (const auto& [c, w] : d.weights) out[g.label[c]] = rational_to_string(w);
  return out;
}

}  // namespace coord
