#include "coordgames/symmetry.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace coord {

namespace {

struct AdjMatrix {
  int n0, n1;
  std::vector<char> bits;  // n0 x n1

  explicit AdjMatrix(const WlcGame& g)
      : n0(g.side_size(0)), n1(g.side_size(1)), bits(static_cast<std::size_t>(n0) * n1, 0) {
    for (const auto& w : g.winning) bits[static_cast<std::size_t>(w[0]) * n1 + (w[1] - n0)] = 1;
  }
  bool edge(int l0, int l1) const { return bits[static_cast<std::size_t>(l0) * n1 + l1] != 0; }
};

// Forced images from round-by-round history preservation plus explicit pins.
// Returns false on conflict.
bool forced_map(const Stage& s, const Stage& t, bool swap,
                const std::vector<std::pair<int, int>>& pins, std::vector<int>& forced) {
  forced.assign(s.game.num_choices(), -1);
  auto force = [&](int c, int d) {
    if (forced[c] == d) return true;
    if (forced[c] != -1) return false;
    forced[c] = d;
    return true;
  };
  for (int r = 0; r < s.rounds(); ++r) {
    const Profile& hs = s.history[r];
    const Profile& ht = t.history[r];
    if (swap) {
      if (!force(hs[0], ht[1]) || !force(hs[1], ht[0])) return false;
    } else {
      if (!force(hs[0], ht[0]) || !force(hs[1], ht[1])) return false;
    }
  }
  for (auto [c, d] : pins)
    if (!force(c, d)) return false;
  return true;
}

// Joint iterative color refinement over source and target choices.
void refine_colors(const Stage& s, const Stage& t, bool swap, std::vector<int>& sc,
                   std::vector<int>& tc) {
  int ns = s.game.num_choices();
  int nt = t.game.num_choices();
  sc.assign(ns, 0);
  tc.assign(nt, 0);
  // Initial colors: side (source side mapped through beta), degree, and
  // per-round history incidence (position mapped through beta).
  using Key = std::vector<int>;
  auto intern = [](std::map<Key, int>& pool, const Key& k) {
    auto [it, _] = pool.emplace(k, static_cast<int>(pool.size()));
    return it->second;
  };
  {
    std::map<Key, int> pool;
    auto initial = [&](const Stage& st, int c, bool map_beta) {
      Key k;
      int side = st.game.side_of(c);
      k.push_back(map_beta && swap ? 1 - side : side);
      k.push_back(st.game.degree(c));
      for (int r = 0; r < st.rounds(); ++r)
        for (int pos = 0; pos < 2; ++pos)
          if (st.history[r][pos] == c)
            k.push_back(r * 2 + (map_beta && swap ? 1 - pos : pos));
      return k;
    };
    for (int c = 0; c < ns; ++c) sc[c] = intern(pool, initial(s, c, true));
    for (int d = 0; d < nt; ++d) tc[d] = intern(pool, initial(t, d, false));
  }
  auto neighbors = [](const Stage& st) {
    std::vector<std::vector<int>> nb(st.game.num_choices());
    for (const auto& w : st.game.winning) {
      nb[w[0]].push_back(w[1]);
      nb[w[1]].push_back(w[0]);
    }
    return nb;
  };
  auto snb = neighbors(s);
  auto tnb = neighbors(t);
  for (int iter = 0; iter < ns + 1; ++iter) {
    std::map<Key, int> pool;
    auto next = [&](const std::vector<int>& colors, const std::vector<std::vector<int>>& nb,
                    int c) {
      Key k{colors[c]};
      std::vector<int> around;
      for (int u : nb[c]) around.push_back(colors[u]);
      std::sort(around.begin(), around.end());
      k.insert(k.end(), around.begin(), around.end());
      return k;
    };
    std::vector<int> sc2(ns), tc2(nt);
    for (int c = 0; c < ns; ++c) sc2[c] = intern(pool, next(sc, snb, c));
    for (int d = 0; d < nt; ++d) tc2[d] = intern(pool, next(tc, tnb, d));
    (void)iter;
    // Color ids are re-interned each round, so compare class counts to detect
    // the fixpoint.
    std::set<int> before(sc.begin(), sc.end()), after(sc2.begin(), sc2.end());
    std::set<int> tb(tc.begin(), tc.end()), ta(tc2.begin(), tc2.end());
    bool grew = after.size() > before.size() || ta.size() > tb.size();
    sc.swap(sc2);
    tc.swap(tc2);
    if (!grew) break;
  }
}

struct Searcher {
  const Stage& s;
  const Stage& t;
  bool swap;
  const SearchOptions& opt;
  const std::function<bool(const Renaming&)>& visit;

  AdjMatrix smat, tmat;
  std::vector<std::vector<int>> cand;
  std::vector<int> order;      // source ids, most constrained first
  std::vector<int> pi;
  std::vector<char> used;
  std::vector<int> blockmap, blockmap_rev;
  bool stopped = false;

  Searcher(const Stage& s_, const Stage& t_, bool swap_, const SearchOptions& opt_,
           const std::function<bool(const Renaming&)>& visit_)
      : s(s_), t(t_), swap(swap_), opt(opt_), visit(visit_), smat(s_.game), tmat(t_.game) {}

  bool consistent(int c, int d) {
    int cside = s.game.side_of(c);
    for (int u = 0; u < s.game.num_choices(); ++u) {
      if (pi[u] == -1 || s.game.side_of(u) == cside) continue;
      int c0 = cside == 0 ? c : u;
      int c1 = cside == 0 ? u : c;
      int i0 = cside == 0 ? d : pi[u];
      int i1 = cside == 0 ? pi[u] : d;
      bool es = smat.edge(c0, c1 - s.game.side_size(0));
      int a = i0, b = i1;
      if (swap) std::swap(a, b);
      bool et = tmat.edge(a, b - t.game.side_size(0));
      if (es != et) return false;
    }
    return true;
  }

  bool assign_blocks(int c, int d, std::vector<std::pair<int, int>>& undo) {
    if (!opt.src_blocks) return true;
    int b1 = opt.src_blocks->block_of[c];
    int b2 = opt.dst_blocks->block_of[d];
    if (blockmap[b1] == -1 && blockmap_rev[b2] == -1) {
      if (opt.src_blocks->blocks[b1].size() != opt.dst_blocks->blocks[b2].size()) return false;
      blockmap[b1] = b2;
      blockmap_rev[b2] = b1;
      undo.emplace_back(b1, b2);
      return true;
    }
    return blockmap[b1] == b2;
  }

  bool rec(std::size_t depth) {
    if (stopped) return false;
    if (depth == order.size()) {
      Renaming r{swap, pi};
      if (!visit(r)) {
        stopped = true;
        return false;
      }
      return true;
    }
    int c = order[depth];
    for (int d : cand[c]) {
      if (used[d] || !consistent(c, d)) continue;
      std::vector<std::pair<int, int>> undo;
      if (!assign_blocks(c, d, undo)) {
        for (auto [b1, b2] : undo) blockmap[b1] = blockmap_rev[b2] = -1;
        continue;
      }
      pi[c] = d;
      used[d] = 1;
      rec(depth + 1);
      pi[c] = -1;
      used[d] = 0;
      for (auto [b1, b2] : undo) blockmap[b1] = blockmap_rev[b2] = -1;
      if (stopped) return false;
    }
    return true;
  }

  void run() {
    int ns = s.game.num_choices();
    if (ns != t.game.num_choices()) return;
    for (int p = 0; p < 2; ++p) {
      int target_side = swap ? 1 - p : p;
      if (s.game.side_size(p) != t.game.side_size(target_side)) return;
    }
    if (s.rounds() != t.rounds()) return;
    std::vector<int> forced;
    if (!forced_map(s, t, swap, opt.pins, forced)) return;
    std::vector<int> sc, tc;
    refine_colors(s, t, swap, sc, tc);
    cand.assign(ns, {});
    for (int c = 0; c < ns; ++c) {
      int want_side = swap ? 1 - s.game.side_of(c) : s.game.side_of(c);
      for (int d = 0; d < ns; ++d) {
        if (t.game.side_of(d) != want_side || sc[c] != tc[d]) continue;
        if (forced[c] != -1 && forced[c] != d) continue;
        if (opt.src_colors && (*opt.src_colors)[c] != (*opt.dst_colors)[d]) continue;
        if (opt.src_blocks &&
            opt.src_blocks->blocks[opt.src_blocks->block_of[c]].size() !=
                opt.dst_blocks->blocks[opt.dst_blocks->block_of[d]].size())
          continue;
        cand[c].push_back(d);
      }
      if (cand[c].empty()) return;
    }
    order.resize(ns);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cand[a].size() < cand[b].size(); });
    pi.assign(ns, -1);
    used.assign(ns, 0);
    int nblocks = opt.src_blocks ? static_cast<int>(opt.src_blocks->blocks.size()) : 0;
    blockmap.assign(nblocks, -1);
    blockmap_rev.assign(opt.dst_blocks ? opt.dst_blocks->blocks.size() : 0, -1);
    rec(0);
  }
};

bool is_renaming(const Stage& s, const Stage& t, const Renaming& r) {
  int n = s.game.num_choices();
  if (t.game.num_choices() != n || static_cast<int>(r.pi.size()) != n) return false;
  std::vector<char> used(n, 0);
  for (int c = 0; c < n; ++c) {
    int d = r.pi[c];
    if (d < 0 || d >= n || used[d]) return false;
    used[d] = 1;
    int want = r.swap ? 1 - s.game.side_of(c) : s.game.side_of(c);
    if (t.game.side_of(d) != want) return false;
  }
  auto image = [&](const Profile& p) {
    Profile q{r.pi[p[0]], r.pi[p[1]]};
    if (r.swap) std::swap(q[0], q[1]);
    return q;
  };
  for (int c0 = 0; c0 < s.game.side_size(0); ++c0)
    for (int l1 = 0; l1 < s.game.side_size(1); ++l1) {
      Profile p{c0, s.game.side_size(0) + l1};
      if (s.game.is_winning(p) != t.game.is_winning(image(p))) return false;
    }
  if (s.rounds() != t.rounds()) return false;
  for (int i = 0; i < s.rounds(); ++i)
    if (image(s.history[i]) != t.history[i]) return false;
  return true;
}

EquivPartition blocks_from_roots(int n, const std::function<int(int)>& root) {
  EquivPartition p;
  p.block_of.assign(n, -1);
  std::map<int, int> seen;
  for (int c = 0; c < n; ++c) {
    int r = root(c);
    auto [it, inserted] = seen.emplace(r, static_cast<int>(p.blocks.size()));
    if (inserted) p.blocks.emplace_back();
    p.block_of[c] = it->second;
    p.blocks[it->second].push_back(c);
  }
  return p;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Renaming compose(const Renaming& f, const Renaming& g) {
  Renaming r;
  r.swap = f.swap != g.swap;
  r.pi.resize(g.pi.size());
  for (std::size_t c = 0; c < g.pi.size(); ++c) r.pi[c] = f.pi[g.pi[c]];
  return r;
}

Renaming inverse(const Renaming& r) {
  Renaming out;
  out.swap = r.swap;
  out.pi.resize(r.pi.size());
  for (std::size_t c = 0; c < r.pi.size(); ++c) out.pi[r.pi[c]] = static_cast<int>(c);
  return out;
}

void for_each_renaming(const Stage& s, const Stage& t, const SearchOptions& opt,
                       const std::function<bool(const Renaming&)>& visit) {
  require_two_player(s.game, "for_each_renaming");
  require_two_player(t.game, "for_each_renaming");
  if ((opt.src_blocks == nullptr) != (opt.dst_blocks == nullptr))
    throw DomainError("block constraint needs both partitions");
  for (bool swap : {false, true}) {
    if (opt.swap_only && *opt.swap_only != swap) continue;
    Searcher searcher(s, t, swap, opt, visit);
    searcher.run();
    if (searcher.stopped) return;
  }
}

std::optional<Renaming> find_renaming(const Stage& s, const Stage& t, const SearchOptions& opt) {
  std::optional<Renaming> out;
  for_each_renaming(s, t, opt, [&](const Renaming& r) {
    out = r;
    return false;
  });
  return out;
}

std::vector<Renaming> renaming_group(const Stage& s, std::size_t cap) {
  std::vector<Renaming> out;
  for_each_renaming(s, s, {}, [&](const Renaming& r) {
    out.push_back(r);
    if (out.size() > cap)
      throw LimitExceededError("renaming group exceeds cap " + std::to_string(cap));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Renaming> renaming_group_brute(const Stage& s) {
  require_two_player(s.game, "renaming_group_brute");
  int n0 = s.game.side_size(0), n1 = s.game.side_size(1);
  int n = n0 + n1;
  std::vector<Renaming> out;
  std::vector<int> p0(n0), p1(n1);
  auto try_all = [&](bool swap) {
    if (swap && (n0 != n1)) return;
    std::iota(p0.begin(), p0.end(), 0);
    do {
      std::iota(p1.begin(), p1.end(), 0);
      do {
        Renaming r;
        r.swap = swap;
        r.pi.resize(n);
        for (int l = 0; l < n0; ++l) r.pi[l] = swap ? n0 + p0[l] : p0[l];
        for (int l = 0; l < n1; ++l) r.pi[n0 + l] = swap ? p1[l] : n0 + p1[l];
        if (is_renaming(s, s, r)) out.push_back(r);
      } while (std::next_permutation(p1.begin(), p1.end()));
    } while (std::next_permutation(p0.begin(), p0.end()));
  };
  try_all(false);
  try_all(true);
  std::sort(out.begin(), out.end());
  return out;
}

EquivPartition equiv_partition(const Stage& s) {
  require_two_player(s.game, "equiv_partition");
  int n = s.game.num_choices();
  UnionFind uf(n);
  for (int c = 0; c < n; ++c) {
    for (int d = c + 1; d < n; ++d) {
      if (uf.find(c) == uf.find(d)) continue;
      SearchOptions opt;
      opt.pins = {{c, d}};
      auto r = find_renaming(s, s, opt);
      if (r)
        for (int x = 0; x < n; ++x) uf.unite(x, r->pi[x]);
    }
  }
  return blocks_from_roots(n, [&](int c) { return uf.find(c); });
}

EquivPartition equiv_partition_brute(const Stage& s) {
  int n = s.game.num_choices();
  UnionFind uf(n);
  for (const auto& r : renaming_group_brute(s))
    for (int x = 0; x < n; ++x) uf.unite(x, r.pi[x]);
  return blocks_from_roots(n, [&](int c) { return uf.find(c); });
}

bool automorphism_equivalent(const Stage& s1, const Stage& s2) {
  if (s1.game != s2.game) return false;
  return equiv_partition(s1) == equiv_partition(s2);
}

std::optional<Renaming> similarity_witness(const Stage& s1, const Stage& s2) {
  require_two_player(s1.game, "similarity_witness");
  require_two_player(s2.game, "similarity_witness");
  EquivPartition p1 = equiv_partition(s1);
  EquivPartition p2 = equiv_partition(s2);
  SearchOptions opt;
  opt.src_blocks = &p1;
  opt.dst_blocks = &p2;
  return find_renaming(initial_stage(s1.game), initial_stage(s2.game), opt);
}

bool similar(const Stage& s1, const Stage& s2) { return similarity_witness(s1, s2).has_value(); }

std::pair<std::string, Renaming> canonical_game_code(const WlcGame& g) {
  require_two_player(g, "canonical_game_code");
  if (g.side_size(0) > kMaxCanonSide || g.side_size(1) > kMaxCanonSide)
    throw LimitExceededError("canonical_game_code supports sides up to " +
                             std::to_string(kMaxCanonSide));
  AdjMatrix mat(g);
  std::string best;
  Renaming best_r;
  for (int orient = 0; orient < 2; ++orient) {
    int nr = orient == 0 ? mat.n0 : mat.n1;
    int nc = orient == 0 ? mat.n1 : mat.n0;
    auto cell = [&](int r, int c) { return orient == 0 ? mat.edge(r, c) : mat.edge(c, r); };
    std::vector<int> rows(nr), cols(nc);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::iota(cols.begin(), cols.end(), 0);
      do {
        std::string code = std::to_string(nr) + "x" + std::to_string(nc) + ":";
        for (int r = 0; r < nr; ++r)
          for (int c = 0; c < nc; ++c) code += cell(rows[r], cols[c]) ? '1' : '0';
        if (best.empty() || code < best) {
          best = code;
          Renaming rn;
          rn.swap = orient == 1;
          rn.pi.assign(g.num_choices(), -1);
          for (int r = 0; r < nr; ++r) {
            int old_global = orient == 0 ? rows[r] : mat.n0 + rows[r];
            rn.pi[old_global] = r;
          }
          for (int c = 0; c < nc; ++c) {
            int old_global = orient == 0 ? mat.n0 + cols[c] : cols[c];
            rn.pi[old_global] = nr + c;
          }
          best_r = rn;
        }
      } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
  }
  return {best, best_r};
}

static WlcGame game_from_code(const std::string& code) {
  auto x = code.find('x');
  auto colon = code.find(':');
  int nr = std::stoi(code.substr(0, x));
  int nc = std::stoi(code.substr(x + 1, colon - x - 1));
  std::vector<Profile> w;
  for (int r = 0; r < nr; ++r)
    for (int c = 0; c < nc; ++c)
      if (code[colon + 1 + static_cast<std::size_t>(r) * nc + c] == '1') w.push_back({r, c});
  return make_game({nr, nc}, std::move(w));
}

std::pair<StageClassKey, Renaming> canonical_key_with_map(const Stage& s) {
  require_two_player(s.game, "canonical_key");
  auto [code, gamma] = canonical_game_code(s.game);
  WlcGame cg = game_from_code(code);
  EquivPartition p = equiv_partition(s);
  int n = s.game.num_choices();
  std::vector<int> bo(n);
  std::vector<char> tb(n, '0');
  for (int c = 0; c < n; ++c) bo[gamma.pi[c]] = p.block_of[c];
  for (const auto& side : touched_choices(s))
    for (int c : side) tb[gamma.pi[c]] = '1';
  auto aut = renaming_group(initial_stage(cg));
  std::string best;
  Renaming best_map;
  for (const auto& a : aut) {
    std::vector<int> v(n);
    std::string bits(n, '0');
    for (int x = 0; x < n; ++x) {
      v[a.pi[x]] = bo[x];
      bits[static_cast<std::size_t>(a.pi[x])] = tb[x];
    }
    // First-occurrence renumbering so block ids carry no labeling information.
    std::map<int, int> remap;
    std::string ser;
    for (int x = 0; x < n; ++x) {
      auto [it, _] = remap.emplace(v[x], static_cast<int>(remap.size()));
      if (x) ser += ',';
      ser += std::to_string(it->second);
    }
    ser += ":" + bits;
    if (best.empty() || ser < best) {
      best = ser;
      best_map = compose(a, gamma);
    }
  }
  return {code + "|" + best, best_map};
}

StageClassKey canonical_key(const Stage& s) { return canonical_key_with_map(s).first; }

std::vector<int> focal_points(const Stage& s) {
  require_two_player(s.game, "focal_points");
  EquivPartition p = equiv_partition(s);
  std::vector<int> out;
  int n = s.game.num_choices();
  for (int c = 0; c < n; ++c) {
    bool focal = true;
    for (int d : p.blocks[p.block_of[c]]) {
      if (d == c) continue;
      bool same_edge = false;
      for (const auto& w : s.game.winning)
        if ((w[0] == c && w[1] == d) || (w[0] == d && w[1] == c)) same_edge = true;
      if (!same_edge) {
        focal = false;
        break;
      }
    }
    if (focal) out.push_back(c);
  }
  return out;
}

std::vector<std::pair<int, int>> conjugates(const Stage& s) {
  require_two_player(s.game, "conjugates");
  const WlcGame& g = s.game;
  int n0 = g.side_size(0);
  bool cm = g.side_size(1) == n0 && static_cast<int>(g.winning.size()) == n0;
  std::vector<int> partner(g.num_choices(), -1);
  if (cm)
    for (const auto& w : g.winning) {
      if (partner[w[0]] != -1 || partner[w[1]] != -1) cm = false;
      partner[w[0]] = w[1];
      partner[w[1]] = w[0];
    }
  if (!cm) throw NotChoiceMatchingError("conjugates requires a choice matching game");
  EquivPartition p = equiv_partition(s);
  std::vector<std::pair<int, int>> out;
  for (int side = 0; side < 2; ++side) {
    auto [b, e] = g.side_range(side);
    for (int u = b; u < e; ++u)
      for (int v = u + 1; v < e; ++v)
        if (p.block_of[u] == p.block_of[partner[v]] && p.block_of[v] == p.block_of[partner[u]])
          out.emplace_back(u, v);
  }
  return out;
}

std::optional<OneRoundSolution> one_round_solvable(const Stage& s) {
  require_two_player(s.game, "one_round_solvable");
  EquivPartition p = equiv_partition(s);
  int n0 = s.game.side_size(0);
  auto side_part = [&](const std::vector<int>& block, int side) {
    std::vector<int> out;
    for (int c : block)
      if ((c < n0) == (side == 0)) out.push_back(c);
    return out;
  };
  auto product_wins = [&](const std::vector<int>& k1, const std::vector<int>& k2) {
    for (int a : k1)
      for (int b : k2)
        if (!s.game.is_winning({a, b})) return false;
    return !k1.empty() && !k2.empty();
  };
  SearchOptions swap_opt;
  swap_opt.swap_only = true;
  bool has_swap = find_renaming(s, s, swap_opt).has_value();
  if (has_swap) {
    // Structurality ties the two players' supports to the same class.
    for (const auto& block : p.blocks) {
      auto k1 = side_part(block, 0);
      auto k2 = side_part(block, 1);
      if (product_wins(k1, k2)) return OneRoundSolution{k1, k2};
    }
    return std::nullopt;
  }
  for (const auto& b1 : p.blocks)
    for (const auto& b2 : p.blocks) {
      auto k1 = side_part(b1, 0);
      auto k2 = side_part(b2, 1);
      if (product_wins(k1, k2)) return OneRoundSolution{k1, k2};
    }
  return std::nullopt;
}

std::string partition_invariant(const WlcGame& g, const EquivPartition& p) {
  int n0 = g.side_size(0);
  std::vector<std::string> descr;
  for (const auto& block : p.blocks) {
    int c0 = 0, c1 = 0, intra = 0;
    std::vector<int> degs;
    for (int c : block) {
      (c < n0 ? c0 : c1)++;
      degs.push_back(g.degree(c));
    }
    std::sort(degs.begin(), degs.end());
    for (const auto& w : g.winning)
      if (p.block_of[w[0]] == p.block_of[block[0]] && p.block_of[w[1]] == p.block_of[block[0]])
        ++intra;
    // Swap-symmetrized side counts: similar stages may differ by a player swap.
    std::string d = std::to_string(block.size()) + ":" + std::to_string(std::min(c0, c1)) + ":" +
                    std::to_string(std::max(c0, c1)) + ":" + std::to_string(intra) + ":";
    for (int x : degs) d += std::to_string(x) + ",";
    descr.push_back(d);
  }
  std::sort(descr.begin(), descr.end());
  std::string out;
  for (const auto& d : descr) out += d + ";";
  return out;
}

Json partition_to_json(const EquivPartition& p) {
  Json blocks = Json::array();
  for (const auto& b : p.blocks) blocks.push_back(b);
  return Json{{"blocks", blocks}};
}

Json renaming_to_json(const Renaming& r) {
  return Json{{"swap", r.swap}, {"pi", r.pi}};
}

}  // namespace coord
