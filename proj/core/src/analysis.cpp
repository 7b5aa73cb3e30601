#include "coordgames/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "coordgames/notation.hpp"

namespace coord {

namespace {

struct ClassInfo {
  Stage rep;
  EquivPartition part;
  std::vector<std::string> colors;  // per choice: protocol class tag + own-side weight
  std::string bucket;
  std::array<Distribution, 2> dist;
};

struct ChainBuilder {
  const ProtocolSpec& protocol;
  int max_classes;
  std::vector<ClassInfo> classes;
  std::multimap<std::string, int> buckets;

  // Chain states are stages modulo renamings that preserve both the
  // equivalence partition and the per-choice colors. Because the colors
  // embed each player's full distribution, any witness the search finds
  // automatically transports the class distribution exactly, so the
  // protocol factors through the quotient by construction.
  std::vector<std::string> choice_colors(const Stage& s,
                                         const std::array<Distribution, 2>& ds) const {
    std::vector<int> tags = protocol.class_tags(s);
    std::vector<std::string> colors(s.game.num_choices());
    for (int i = 0; i < 2; ++i) {
      auto [b, e] = s.game.side_range(i);
      for (int c = b; c < e; ++c)
        colors[c] = std::to_string(tags[c]) + "|" + rational_to_string(ds[i].at(c));
    }
    return colors;
  }

  static std::string color_bucket(const Stage& s, const std::vector<std::string>& colors) {
    std::array<std::string, 2> per_side;
    for (int i = 0; i < 2; ++i) {
      auto [b, e] = s.game.side_range(i);
      std::vector<std::string> side(colors.begin() + b, colors.begin() + e);
      std::sort(side.begin(), side.end());
      for (const auto& c : side) per_side[i] += c + ";";
    }
    // Swap-symmetrized: merges may flip the two players.
    return std::min(per_side[0], per_side[1]) + "#" + std::max(per_side[0], per_side[1]);
  }

  int classify(const Stage& s) {
    EquivPartition part = equiv_partition(s);
    std::array<Distribution, 2> ds{evaluate(protocol, s, 0), evaluate(protocol, s, 1)};
    std::vector<std::string> colors = choice_colors(s, ds);
    std::string bucket = partition_invariant(s.game, part) + "#" + color_bucket(s, colors);
    auto [lo, hi] = buckets.equal_range(bucket);
    for (auto it = lo; it != hi; ++it) {
      int idx = it->second;
      if (classes[idx].part == part && classes[idx].colors == colors) return idx;
      SearchOptions opt;
      opt.src_blocks = &part;
      opt.dst_blocks = &classes[idx].part;
      opt.src_colors = &colors;
      opt.dst_colors = &classes[idx].colors;
      if (find_renaming(initial_stage(s.game), initial_stage(classes[idx].rep.game), opt))
        return idx;
    }
    if (static_cast<int>(classes.size()) >= max_classes)
      throw ChainNotClosedError("class expansion exceeded cap " + std::to_string(max_classes));
    classes.push_back({s, std::move(part), std::move(colors), bucket, std::move(ds)});
    buckets.emplace(std::move(bucket), static_cast<int>(classes.size()) - 1);
    return static_cast<int>(classes.size()) - 1;
  }
};

std::vector<Rational> solve_absorbing(const MarkovQuotient& q) {
  // t_i = 1 + sum_j Q_ij t_j over transient states.
  int n = q.win_state;  // transient states are 0..n-1
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = (i == j ? Rational(1) : Rational(0)) - q.transitions[i][j];
    a[i][n] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) throw SingularSystemError("no-win trap: absorbing-chain system is singular");
    std::swap(a[col], a[pivot]);
    Rational inv = a[col][col];
    for (int j = col; j <= n; ++j) a[col][j] /= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (int j = col; j <= n; ++j) a[r][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> t(n);
  for (int i = 0; i < n; ++i) t[i] = a[i][n];
  return t;
}

}  // namespace

Rational oscp(const Stage& s, const ProtocolSpec& p) {
  if (s.is_final()) throw FinalStageError("oscp needs a non-final stage");
  Rational total = 0;
  for (const auto& [profile, w] : support_profiles(p, s))
    if (s.game.is_winning(profile)) total += w;
  return total;
}

MarkovQuotient build_quotient(const Stage& start, const ProtocolSpec& p, int max_classes) {
  require_two_player(start.game, "build_quotient");
  if (start.is_final()) throw FinalStageError("quotient start must be non-final");
  if (!p.similarity_invariant())
    throw NotSimilarityInvariantError("protocol is not declared similarity invariant");
  ChainBuilder builder{p, max_classes, {}, {}};
  int start_idx = builder.classify(start);
  std::vector<std::vector<std::pair<int, Rational>>> edges;
  std::vector<Rational> win_prob;
  for (std::size_t i = 0; i < builder.classes.size(); ++i) {
    const Stage rep = builder.classes[i].rep;
    const auto dists = builder.classes[i].dist;
    std::map<int, Rational> out;
    Rational win = 0;
    for (const auto& [profile, w] : support_profiles(dists[0], dists[1])) {
      if (rep.game.is_winning(profile)) {
        win += w;
      } else {
        int succ = builder.classify(play_round(rep, profile));
        out[succ] += w;
      }
    }
    edges.emplace_back(out.begin(), out.end());
    win_prob.push_back(win);
  }
  int n = static_cast<int>(builder.classes.size());
  MarkovQuotient q;
  q.start = start_idx;
  q.win_state = n;
  for (int i = 0; i < n; ++i) {
    q.states.push_back("class#" + std::to_string(i) + "|" + builder.classes[i].bucket);
    q.reps.push_back(builder.classes[i].rep);
  }
  q.states.push_back("WIN");
  q.transitions.assign(n + 1, std::vector<Rational>(n + 1, 0));
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, w] : edges[i]) q.transitions[i][j] = w;
    q.transitions[i][n] = win_prob[i];
  }
  q.transitions[n][n] = 1;
  for (int i = 0; i <= n; ++i) {
    Rational row = 0;
    for (int j = 0; j <= n; ++j) row += q.transitions[i][j];
    if (row != 1) throw DomainError("quotient row does not sum to 1");
  }
  return q;
}

EctResult exact_ect_from(const Stage& s, const ProtocolSpec& p, int max_classes) {
  MarkovQuotient q = build_quotient(s, p, max_classes);
  auto t = solve_absorbing(q);
  EctResult r;
  r.value = t[q.start];
  r.chain_size = static_cast<int>(q.states.size());
  r.derivation = "quotient chain with " + std::to_string(q.win_state) +
                 " transient classes; start=" + std::to_string(q.start);
  for (int i = 0; i < q.win_state; ++i)
    r.derivation += "; t(" + std::to_string(i) + ")=" + rational_to_string(t[i]);
  return r;
}

EctResult exact_ect(const WlcGame& g, const ProtocolSpec& p, int max_classes) {
  return exact_ect_from(initial_stage(g), p, max_classes);
}

GctResult gct_from(const Stage& s, const ProtocolSpec& p, int max_classes) {
  require_two_player(s.game, "gct");
  if (s.is_final()) throw FinalStageError("gct start must be non-final");
  if (!p.similarity_invariant())
    throw NotSimilarityInvariantError("protocol is not declared similarity invariant");
  // Lazy expansion: successors are classified on demand so a worst-case cycle
  // (GCT = INFINITE) is detected without closing the whole chain, whose class
  // count can be enormous for history-hungry protocols.
  ChainBuilder builder{p, max_classes, {}, {}};
  int start_idx = builder.classify(s);
  std::vector<std::vector<int>> succ;
  std::vector<char> expanded;
  auto successors = [&](int v) -> const std::vector<int>& {
    if (static_cast<int>(succ.size()) < v + 1) {
      succ.resize(v + 1);
      expanded.resize(v + 1, 0);
    }
    if (!expanded[v]) {
      const Stage rep = builder.classes[v].rep;          // copies: classify may
      const auto dists = builder.classes[v].dist;        // grow the class list
      std::set<int> out;
      for (const auto& [profile, w] : support_profiles(dists[0], dists[1]))
        if (!rep.game.is_winning(profile)) out.insert(builder.classify(play_round(rep, profile)));
      succ.resize(std::max(succ.size(), builder.classes.size()));
      expanded.resize(succ.size(), 0);
      succ[v].assign(out.begin(), out.end());
      expanded[v] = 1;
    }
    return succ[v];
  };
  auto label = [&](int v) {
    return "class#" + std::to_string(v) + "|" + builder.classes[v].bucket;
  };
  std::map<int, int> color;  // 0/absent unvisited, 1 on stack, 2 done
  std::vector<int> path, cycle;
  std::function<bool(int)> dfs = [&](int v) {
    color[v] = 1;
    path.push_back(v);
    for (int w : successors(v)) {
      if (color[w] == 1) {
        auto it = std::find(path.begin(), path.end(), w);
        cycle.assign(it, path.end());
        return true;
      }
      if (color[w] == 0 && dfs(w)) return true;
    }
    color[v] = 2;
    path.pop_back();
    return false;
  };
  GctResult r;
  if (dfs(start_idx)) {
    r.infinite = true;
    for (int v : cycle) r.witness.push_back(label(v));
    return r;
  }
  // DAG: guaranteed rounds = 1 + max over non-winning successors.
  std::map<int, long> memo;
  std::map<int, int> best_succ;
  std::function<long(int)> depth = [&](int v) -> long {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    long best = 0;
    int arg = -1;
    for (int w : successors(v)) {
      long d = depth(w);
      if (d > best || arg == -1) {
        best = d;
        arg = w;
      }
    }
    best_succ[v] = arg;
    return memo[v] = 1 + best;
  };
  r.value = depth(start_idx);
  for (int v = start_idx; v != -1; v = best_succ[v]) r.witness.push_back(label(v));
  r.witness.push_back("WIN");
  return r;
}

GctResult gct(const WlcGame& g, const ProtocolSpec& p, int max_classes) {
  return gct_from(initial_stage(g), p, max_classes);
}

Rational wm_ect_bound(const WlcGame& g) {
  require_two_player(g, "wm_ect_bound");
  return 3 - 2 * oscp(initial_stage(g), ProtocolSpec::uniform());
}

LaClosedForm la_cm_closed_form(int m) {
  if (m < 1 || m % 2 == 0) throw DomainError("la_cm_closed_form needs odd m >= 1");
  LaClosedForm out;
  Rational total = 0;
  for (int l = 1; l <= (m + 1) / 2; ++l) {
    Rational p(1, m - 2 * l + 2);
    for (int k = 0; k + 2 <= l; ++k) p *= Rational(m - 2 * k - 1, m - 2 * k);
    out.per_round.push_back(p);
    total += p;
    out.expected += Rational(l) * p;
  }
  if (total != 1) throw DomainError("LA round probabilities do not sum to 1");
  if (m <= kMaxSummaryM) {
    auto chain = exact_ect(build_notation("CM(" + std::to_string(m) + ")"), ProtocolSpec::la());
    if (chain.value != out.expected)
      throw DomainError("closed form disagrees with the LA quotient chain");
  }
  return out;
}

Rational formula_e_value(const FormulaEParams& params) {
  if (params.p < 0 || params.p > 1) throw DomainError("formula (E) needs p in [0,1]");
  if (params.n < 1 || params.e1 < 1 || params.e2 < 1)
    throw DomainError("formula (E) needs n >= 1 and E1, E2 >= 1");
  const Rational& p = params.p;
  Rational u = Rational(1, params.n) + Rational(params.n - 1, params.n) * (1 + params.e2);
  return p * p * (Rational(1, 2) + (1 + params.e1) / 2) + 2 * p * (1 - p) * 2 +
         (1 - p) * (1 - p) * u;
}

FormulaEMinimum formula_e_minimize(int n, const Rational& e1, const Rational& e2) {
  if (n < 1 || e1 < 1 || e2 < 1) throw DomainError("formula (E) needs n >= 1 and E1, E2 >= 1");
  Rational u = Rational(1, n) + Rational(n - 1, n) * (1 + e2);
  Rational a = Rational(1, 2) + (1 + e1) / 2 - 4 + u;
  Rational b = 4 - 2 * u;
  Rational c = u;
  auto value_at = [&](const Rational& p) { return a * p * p + b * p + c; };
  FormulaEMinimum out;
  if (a > 0) {
    Rational v = -b / (2 * a);
    if (v < 0) v = 0;
    if (v > 1) v = 1;
    out.kind = FormulaEMinimum::Kind::Point;
    out.points = {v};
    out.value = value_at(v);
  } else if (a == 0) {
    if (b > 0) {
      out.kind = FormulaEMinimum::Kind::Point;
      out.points = {0};
    } else if (b < 0) {
      out.kind = FormulaEMinimum::Kind::Point;
      out.points = {1};
    } else {
      out.kind = FormulaEMinimum::Kind::Interval;
    }
    out.value = value_at(out.points.empty() ? Rational(0) : out.points[0]);
  } else {
    Rational at0 = value_at(0), at1 = value_at(1);
    if (at0 < at1) {
      out.kind = FormulaEMinimum::Kind::Point;
      out.points = {0};
      out.value = at0;
    } else if (at1 < at0) {
      out.kind = FormulaEMinimum::Kind::Point;
      out.points = {1};
      out.value = at1;
    } else {
      out.kind = FormulaEMinimum::Kind::TwoPoints;
      out.points = {0, 1};
      out.value = at0;
    }
  }
  return out;
}

ThreeChoiceFixedPoint three_choice_fixed_point() {
  ThreeChoiceFixedPoint out;
  Float50 s17 = sqrt(Float50(17));
  out.e2 = (3 + s17) / 4;
  out.p2 = 2 * out.e2 / (1 + 3 * out.e2);
  out.e1 = (1 + sqrt(4 + s17)) / 2;
  out.p1 = out.e1 / (out.e1 + out.e2);

  auto iterate = [](auto map, Float50 target, const char* what) {
    const Float50 tol("1e-12");
    for (double start : {1.0, 1.5, 3.0}) {
      Float50 x = start;
      bool ok = false;
      for (int i = 0; i < 100000; ++i) {
        Float50 nx = (x + map(x)) / 2;  // damping 1/2
        if (abs(nx - x) < Float50("1e-30")) {
          x = nx;
          ok = true;
          break;
        }
        x = nx;
      }
      if (!ok || abs(x - target) > tol)
        throw NoConvergenceError(std::string("fixed-point iteration failed for ") + what);
    }
  };
  Float50 e2 = out.e2;
  iterate(
      [](Float50 x) {
        Float50 p = 2 * x / (1 + 3 * x);
        return (1 + 3 * x) / 2 * p * p - 2 * x * p + (1 + x);
      },
      out.e2, "E2");
  iterate(
      [e2](Float50 y) {
        Float50 p = y / (y + e2);
        return (y + e2) * p * p - 2 * y * p + (1 + y);
      },
      out.e1, "E1");
  return out;
}

std::vector<SummaryRow> summary_table(int m_max) {
  if (m_max < 1 || m_max > kMaxSummaryM)
    throw LimitExceededError("summary_table supports m up to " + std::to_string(kMaxSummaryM));
  std::vector<SummaryRow> rows;
  for (int m = 1; m <= m_max; ++m) {
    WlcGame g = build_notation("CM(" + std::to_string(m) + ")");
    SummaryRow row;
    row.m = m;
    if (m == 1) {
      row.ect = exact_ect(g, ProtocolSpec::uniform()).value;
      row.ect_protocol = "(any)";
      row.gct_infinite = false;
      row.gct_value = gct(g, ProtocolSpec::uniform()).value;
      row.gct_protocol = "(any)";
    } else {
      bool la_optimal = (m == 3 || m == 5);
      ProtocolSpec best = la_optimal ? ProtocolSpec::la() : ProtocolSpec::wm();
      row.ect = exact_ect(g, best).value;
      row.ect_protocol = (m == 4) ? "NONE-UNIQUE" : best.name();
      if (m % 2 == 1) {
        GctResult gr = gct(g, ProtocolSpec::la());
        row.gct_infinite = gr.infinite;
        row.gct_value = gr.value;
        row.gct_protocol = "la";
      } else {
        row.gct_infinite = true;
        row.gct_protocol = "-";
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string AlgebraicValue::display() const {
  if (is_rational) return rational_to_string(q);
  return tag;
}

double AlgebraicValue::to_double() const {
  if (is_rational) return rational_to_double(q);
  return approx.convert_to<double>();
}

BoundsRow bounds_table(int m) {
  if (m < 1) throw DomainError("bounds_table needs m >= 1");
  BoundsRow row;
  row.m = m;
  if (m == 3) {
    Float50 v = (1 + sqrt(Float50(4) + sqrt(Float50(17)))) / 2;
    row.bound = AlgebraicValue{false, {}, "(1+sqrt(4+sqrt(17)))/2", v, false};
    row.witness = "1x2+2x1";
  } else if (m == 5) {
    row.bound = AlgebraicValue{true, Rational(7, 3), "", Float50(7) / 3, false};
    row.witness = "CM(5)";
  } else {
    Rational v = 3 - Rational(2, m);
    row.bound = AlgebraicValue{true, v, "", Float50(3) - Float50(2) / m, false};
    row.witness = "CM(" + std::to_string(m) + ")";
  }
  return row;
}

}  // namespace coord
