// coordsolve: command-line front end for the coordination-game analysis suite.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coordgames/analysis.hpp"
#include "coordgames/enumeration.hpp"
#include "coordgames/json_io.hpp"
#include "coordgames/montecarlo.hpp"
#include "coordgames/notation.hpp"

using namespace coord;

namespace {

struct CommonOpts {
  std::string game;
  std::string protocol = "uniform";
  std::string protocol2;
  std::string format = "text";
  std::uint64_t seed = 1;
  long trials = 10000;
  int max_rounds = 1000;
  bool verify = false;
  bool deterministic = false;
  int decimal = -1;  // < 0: rational rendering
};

std::string render(const Rational& q, const CommonOpts& o) {
  if (o.decimal >= 0) return rational_to_decimal(q, o.decimal);
  return rational_to_string(q);
}

std::string render(const AlgebraicValue& v, const CommonOpts& o) {
  if (v.is_rational) return render(v.q, o);
  int digits = o.decimal >= 0 ? o.decimal : 12;
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << v.approx;
  std::string dec = os.str();
  if (o.decimal >= 0) return dec;
  return v.tag + " (~" + dec + ")";
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

Stage load_stage(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    Json j = read_json_file(spec.substr(1));
    return stage_from_json(j);
  }
  return initial_stage(build_notation(spec));
}

ProtocolSpec load_protocol(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@')
    return ProtocolSpec::table_from_json(read_json_file(spec.substr(1)));
  return ProtocolSpec::parse(spec);
}

// CM(m) iff the winning relation is a perfect matching on equal sides.
std::optional<int> cm_size(const WlcGame& g) {
  if (g.players != 2) return std::nullopt;
  int m = g.side_size(0);
  if (g.side_size(1) != m || static_cast<int>(g.winning.size()) != m) return std::nullopt;
  for (int c = 0; c < g.num_choices(); ++c)
    if (g.degree(c) != 1) return std::nullopt;
  return m;
}

void verify_fail(const std::string& what) { throw Error("verify failed: " + what); }

int run_ect(const CommonOpts& o) {
  Stage s = load_stage(o.game);
  ProtocolSpec p = load_protocol(o.protocol);
  EctResult r = s.rounds() == 0 ? exact_ect(s.game, p) : exact_ect_from(s, p);
  if (o.format == "json") {
    Json j{{"value", rational_to_string(r.value)},
           {"chain_size", r.chain_size},
           {"derivation", r.derivation}};
    if (o.decimal >= 0) j["decimal"] = rational_to_decimal(r.value, o.decimal);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << render(r.value, o) << "\n";
  }
  if (o.verify) {
    if (auto m = cm_size(s.game); m && s.rounds() == 0) {
      if (p.kind == ProtocolSpec::Kind::WM && r.value != 3 - Rational(2, *m))
        verify_fail("WM on CM(m) must equal 3-2/m");
      if (p.kind == ProtocolSpec::Kind::LA && *m % 2 == 1 &&
          r.value != la_cm_closed_form(*m).expected)
        verify_fail("LA on odd CM(m) must equal E_m");
    }
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_gct(const CommonOpts& o) {
  Stage s = load_stage(o.game);
  ProtocolSpec p = load_protocol(o.protocol);
  GctResult r = s.rounds() == 0 ? gct(s.game, p) : gct_from(s, p);
  if (o.format == "json") {
    Json j{{"infinite", r.infinite}, {"witness", r.witness}};
    if (!r.infinite) j["value"] = r.value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (r.infinite ? std::string("INFINITE") : std::to_string(r.value)) << "\n";
  }
  if (o.verify) {
    if (auto m = cm_size(s.game); m && s.rounds() == 0 && p.kind == ProtocolSpec::Kind::LA) {
      bool want_inf = (*m % 2 == 0);
      if (r.infinite != want_inf || (!want_inf && r.value != (*m + 1) / 2))
        verify_fail("LA GCT on CM(m) must be ceil(m/2) for odd m, INFINITE for even m");
    }
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_oscp(const CommonOpts& o) {
  Stage s = load_stage(o.game);
  ProtocolSpec p = load_protocol(o.protocol);
  Rational v = oscp(s, p);
  if (o.format == "json")
    std::cout << Json{{"value", rational_to_string(v)}}.dump(2) << "\n";
  else
    std::cout << render(v, o) << "\n";
  return 0;
}

int run_simulate(const CommonOpts& o) {
  Stage s = load_stage(o.game);
  if (s.rounds() != 0) throw DomainError("simulate starts from the initial stage");
  ProtocolSpec p0 = load_protocol(o.protocol);
  ProtocolSpec p1 = o.protocol2.empty() ? p0 : load_protocol(o.protocol2);
  SimOptions opt;
  opt.trials = o.trials;
  opt.seed = o.seed;
  opt.max_rounds = o.max_rounds;
  opt.histogram = true;
  auto t0 = std::chrono::steady_clock::now();
  SimReport r = simulate(s.game, p0, p1, opt);
  auto wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
          .count();
  if (!o.deterministic) std::cout << "# wall_ms: " << wall_ms << "\n";
  if (o.format == "csv") {
    std::cout << "rounds,count\n";
    for (const auto& [rounds, count] : r.histogram) std::cout << rounds << "," << count << "\n";
  } else {
    Json j{{"trials", r.trials},
           {"mean_rounds", r.mean_rounds},
           {"std_error", r.std_error},
           {"truncated", r.truncated},
           {"max_rounds_observed", r.max_rounds_observed},
           {"seed", r.seed},
           {"rng", r.rng}};
    std::cout << j.dump(2) << "\n";
  }
  if (o.verify) {
    EctResult exact = exact_ect(s.game, p0);
    double want = rational_to_double(exact.value);
    double sigma = r.std_error > 0 ? r.std_error : 1e-9;
    if (std::abs(r.mean_rounds - want) > 4 * sigma)
      verify_fail("simulation mean deviates more than 4 sigma from the exact ECT");
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_classify(const CommonOpts& o) {
  Stage s = load_stage(o.game);
  EquivPartition part = equiv_partition(s);
  auto focal = focal_points(s);
  auto solvable = one_round_solvable(s);
  Json j;
  Json blocks = Json::array();
  for (const auto& b : part.blocks) {
    Json names = Json::array();
    for (int c : b) names.push_back(s.game.label[c]);
    blocks.push_back(names);
  }
  j["blocks"] = blocks;
  Json f = Json::array();
  for (int c : focal) f.push_back(s.game.label[c]);
  j["focal_points"] = f;
  j["one_round_solvable"] = solvable.has_value();
  if (solvable) {
    Json k1 = Json::array(), k2 = Json::array();
    for (int c : solvable->k1) k1.push_back(s.game.label[c]);
    for (int c : solvable->k2) k2.push_back(s.game.label[c]);
    j["solution"] = Json{{"k1", k1}, {"k2", k2}};
  }
  if (cm_size(s.game)) {
    Json cj = Json::array();
    for (auto [u, v] : conjugates(s))
      cj.push_back(Json::array({s.game.label[u], s.game.label[v]}));
    j["conjugates"] = cj;
  }
  if (s.game.side_size(0) <= kMaxCanonSide && s.game.side_size(1) <= kMaxCanonSide)
    j["class_key"] = canonical_key(s);
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "blocks:";
    for (const auto& b : j["blocks"]) {
      std::cout << " {";
      for (std::size_t i = 0; i < b.size(); ++i)
        std::cout << (i ? "," : "") << b[i].get<std::string>();
      std::cout << "}";
    }
    std::cout << "\nfocal:";
    for (const auto& c : j["focal_points"]) std::cout << " " << c.get<std::string>();
    std::cout << "\none_round_solvable: " << (solvable ? "yes" : "no") << "\n";
    if (j.contains("conjugates")) {
      std::cout << "conjugates:";
      for (const auto& pr : j["conjugates"])
        std::cout << " {" << pr[0].get<std::string>() << "," << pr[1].get<std::string>() << "}";
      std::cout << "\n";
    }
    if (j.contains("class_key")) std::cout << "class_key: " << j["class_key"].get<std::string>() << "\n";
  }
  return 0;
}

int run_table_summary(const CommonOpts& o, int max_m) {
  auto rows = summary_table(max_m);
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j{{"m", r.m},
             {"ect", rational_to_string(r.ect)},
             {"ect_protocol", r.ect_protocol},
             {"gct", r.gct_infinite ? Json("INFINITE") : Json(r.gct_value)},
             {"gct_protocol", r.gct_protocol}};
      arr.push_back(j);
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "m,ect,ect_protocol,gct,gct_protocol\n";
    for (const auto& r : rows)
      std::cout << r.m << "," << render(r.ect, o) << "," << r.ect_protocol << ","
                << (r.gct_infinite ? std::string("INFINITE") : std::to_string(r.gct_value)) << ","
                << r.gct_protocol << "\n";
  }
  if (o.verify) {
    for (const auto& r : rows) {
      if (r.m >= 2 && r.ect_protocol != "la" &&
          r.ect != 3 - Rational(2, r.m))
        verify_fail("WM-optimal row must equal 3-2/m");
      if (r.ect_protocol == "la" && r.ect != la_cm_closed_form(r.m).expected)
        verify_fail("LA-optimal row must equal E_m");
      if (r.m % 2 == 1 && (r.gct_infinite || r.gct_value != (r.m + 1) / 2))
        verify_fail("odd-m GCT must equal ceil(m/2)");
      if (r.m >= 2 && r.m % 2 == 0 && !r.gct_infinite) verify_fail("even-m GCT must be INFINITE");
    }
    // Even m: no protocol on a 1/8 grid of the touched family, nor any
    // built-in, guarantees coordination.
    for (const auto& r : rows) {
      if (r.m < 2 || r.m % 2 == 1) continue;
      WlcGame g = build_notation("CM(" + std::to_string(r.m) + ")");
      std::vector<ProtocolSpec> ps{ProtocolSpec::wm(), ProtocolSpec::la(),
                                   ProtocolSpec::uniform()};
      for (int k = 0; k <= 8; ++k) ps.push_back(ProtocolSpec::touched(Rational(k, 8)));
      for (const auto& p : ps)
        if (!gct(g, p).infinite)
          verify_fail("even-m GCT unexpectedly finite under " + p.name());
    }
    std::cout << kGctTypoNote << "\n";
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_table_bounds(const CommonOpts& o, int max_m) {
  std::cout << "m,bound,witness\n";
  for (int m = 1; m <= max_m; ++m) {
    BoundsRow r = bounds_table(m);
    std::cout << r.m << "," << render(r.bound, o) << "," << r.witness << "\n";
  }
  if (o.verify) {
    if (bounds_table(5).bound.q != exact_ect(build_notation("CM(5)"), ProtocolSpec::la()).value)
      verify_fail("m=5 bound must match exact_ect(CM(5), LA)");
    auto fp = three_choice_fixed_point();
    if (abs(bounds_table(3).bound.approx - fp.e1) > Float50("1e-40"))
      verify_fail("m=3 bound must match the fixed-point constant");
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_table_wm_vs_la(const CommonOpts& o, int max_m) {
  std::cout << "m,wm_ect,la_ect\n";
  for (int m = 1; m <= max_m; m += 2) {
    Rational wm = 3 - Rational(2, m);
    Rational la = la_cm_closed_form(m).expected;
    std::cout << m << "," << render(wm, o) << "," << render(la, o) << "\n";
  }
  if (o.verify) {
    for (int m = 1; m <= max_m; m += 2) {
      WlcGame g = build_notation("CM(" + std::to_string(m) + ")");
      if (exact_ect(g, ProtocolSpec::wm()).value != 3 - Rational(2, m))
        verify_fail("WM column must match the chain");
      if (exact_ect(g, ProtocolSpec::la()).value != la_cm_closed_form(m).expected)
        verify_fail("LA column must match the chain");
    }
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_census(const CommonOpts& o, int m) {
  CensusReport report = census_report(m);
  auto emit = [&](const CensusEntry& e) {
    std::cout << e.edge_count << "," << e.notation << "," << (e.has_initial_focal_point ? 1 : 0)
              << "," << (e.solvable ? 1 : 0) << "," << (e.ect_is_bound ? "<=" : "")
              << render(e.ect, o) << "," << e.ect_method << "\n";
  };
  std::cout << "edges,notation,focal,solvable,ect,method\n";
  for (const auto& e : report.entries) emit(e);
  for (const auto& e : report.specials) emit(e);
  if (o.verify) {
    std::map<int, int> want = m == 3 ? std::map<int, int>{{3, 2}, {4, 3}, {5, 2}, {6, 1}}
                                     : std::map<int, int>{{5, 3}, {6, 6}, {7, 9}, {8, 10}};
    for (const auto& [edges, count] : want)
      if (report.counts_by_edges[edges] != count)
        verify_fail("census count mismatch at |W|=" + std::to_string(edges));
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_formula_e(const CommonOpts& o, int n, const std::string& e1s, const std::string& e2s,
                  const std::string& ps, int sweep) {
  Rational e1 = rational_from_string(e1s);
  Rational e2 = rational_from_string(e2s);
  if (sweep > 0) {
    std::cout << "p,value\n";
    for (int k = 0; k <= sweep; ++k) {
      Rational p(k, sweep);
      std::cout << rational_to_decimal(p, 6) << ","
                << render(formula_e_value({p, n, e1, e2}), o) << "\n";
    }
    return 0;
  }
  if (!ps.empty()) {
    Rational p = rational_from_string(ps);
    std::cout << render(formula_e_value({p, n, e1, e2}), o) << "\n";
    return 0;
  }
  FormulaEMinimum min = formula_e_minimize(n, e1, e2);
  Json j;
  j["value"] = rational_to_string(min.value);
  switch (min.kind) {
    case FormulaEMinimum::Kind::Point:
      j["minimizers"] = Json::array({rational_to_string(min.points[0])});
      break;
    case FormulaEMinimum::Kind::TwoPoints:
      j["minimizers"] = Json::array(
          {rational_to_string(min.points[0]), rational_to_string(min.points[1])});
      break;
    case FormulaEMinimum::Kind::Interval:
      j["minimizers"] = "[0,1]";
      break;
  }
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "minimum " << render(min.value, o) << " at ";
    if (min.kind == FormulaEMinimum::Kind::Interval) std::cout << "all p in [0,1]";
    else {
      for (std::size_t i = 0; i < min.points.size(); ++i)
        std::cout << (i ? ", " : "") << "p=" << render(min.points[i], o);
    }
    std::cout << "\n";
  }
  if (o.verify) {
    // Grid corroboration of the analytic minimizer.
    double best = 1e18;
    for (int k = 0; k <= 10000; ++k) {
      double p = k / 10000.0;
      FormulaEParams params{Rational(k, 10000), n, e1, e2};
      best = std::min(best, rational_to_double(formula_e_value(params)));
    }
    if (std::abs(best - rational_to_double(min.value)) > 1e-6)
      verify_fail("grid scan disagrees with the analytic minimum");
    std::cout << "verify: ok\n";
  }
  return 0;
}

int run_fixed_point(const CommonOpts& o) {
  auto fp = three_choice_fixed_point();
  int digits = o.decimal >= 0 ? o.decimal : 12;
  auto dec = [&](const Float50& v) {
    std::ostringstream os;
    os << std::setprecision(digits) << std::fixed << v;
    return os.str();
  };
  if (o.format == "json") {
    Json j{{"E2", dec(fp.e2)},
           {"p2", dec(fp.p2)},
           {"E1", dec(fp.e1)},
           {"p1", dec(fp.p1)},
           {"E2_form", "(3+sqrt(17))/4"},
           {"E1_form", "(1+sqrt(4+sqrt(17)))/2"}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "E2 = (3+sqrt(17))/4 ~ " << dec(fp.e2) << "\n";
    std::cout << "p2* = 2E2/(1+3E2) ~ " << dec(fp.p2) << "\n";
    std::cout << "E1 = (1+sqrt(4+sqrt(17)))/2 ~ " << dec(fp.e1) << "\n";
    std::cout << "p1* = E1/(E1+E2) ~ " << dec(fp.p1) << "\n";
  }
  if (o.verify) std::cout << "verify: ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated win-lose coordination game analysis"};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_common = [&](CLI::App* cmd, bool needs_game) {
    if (needs_game) cmd->add_option("--game", o.game, "game notation or @file.json")->required();
    cmd->add_option("--protocol", o.protocol, "wm|la|uniform|touched:p|@table.json");
    cmd->add_option("--protocol2", o.protocol2, "second protocol (cross-protocol simulate)");
    cmd->add_option("--format", o.format, "text|csv|json");
    cmd->add_option("--seed", o.seed, "simulation seed");
    cmd->add_option("--trials", o.trials, "simulation trials");
    cmd->add_option("--max-rounds", o.max_rounds, "simulation round cap");
    cmd->add_flag("--verify", o.verify, "re-check outputs against independent oracles");
    cmd->add_flag("--deterministic", o.deterministic, "suppress the timing header");
    cmd->add_option("--decimal", o.decimal, "render rationals with N decimal digits");
  };

  auto* ect = app.add_subcommand("ect", "exact expected coordination time");
  add_common(ect, true);
  auto* gct_cmd = app.add_subcommand("gct", "guaranteed coordination time");
  add_common(gct_cmd, true);
  auto* oscp_cmd = app.add_subcommand("oscp", "one-shot coordination probability");
  add_common(oscp_cmd, true);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo simulation");
  add_common(sim, true);
  auto* cls = app.add_subcommand("classify", "partition/focal/conjugate report for a stage");
  add_common(cls, true);

  auto* table = app.add_subcommand("table", "paper tables");
  int max_m = 9;
  auto* tsum = table->add_subcommand("summary", "optimal ECT/GCT per m");
  tsum->add_option("--max-m", max_m, "largest m");
  add_common(tsum, false);
  auto* tbounds = table->add_subcommand("bounds", "greatest optimal ECT per m");
  tbounds->add_option("--max-m", max_m, "largest m");
  add_common(tbounds, false);
  auto* tvs = table->add_subcommand("wm-vs-la", "WM vs LA on odd CM(m)");
  tvs->add_option("--max-m", max_m, "largest m");
  add_common(tvs, false);
  table->require_subcommand(1);

  auto* census = app.add_subcommand("census", "small-game census");
  int census_m = 3;
  census->add_option("--m", census_m, "3 or 5")->required();
  add_common(census, false);

  auto* fe = app.add_subcommand("formula-e", "formula (E) evaluation and minimization");
  int fe_n = 1;
  std::string fe_e1 = "1", fe_e2 = "1", fe_p;
  int fe_sweep = 0;
  fe->add_option("--n", fe_n, "untouched-edge count")->required();
  fe->add_option("--e1", fe_e1, "continuation value E1")->required();
  fe->add_option("--e2", fe_e2, "continuation value E2")->required();
  fe->add_option("--p", fe_p, "evaluate at a single p");
  fe->add_option("--sweep", fe_sweep, "emit a CSV sweep with this many steps");
  add_common(fe, false);

  auto* fp = app.add_subcommand("fixed-point", "3-choice fixed-point constants");
  add_common(fp, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
  }

  try {
    if (*ect) return run_ect(o);
    if (*gct_cmd) return run_gct(o);
    if (*oscp_cmd) return run_oscp(o);
    if (*sim) return run_simulate(o);
    if (*cls) return run_classify(o);
    if (*tsum) return run_table_summary(o, max_m);
    if (*tbounds) return run_table_bounds(o, max_m);
    if (*tvs) return run_table_wm_vs_la(o, max_m);
    if (*census) return run_census(o, census_m);
    if (*fe) return run_formula_e(o, fe_n, fe_e1, fe_e2, fe_p, fe_sweep);
    if (*fp) return run_fixed_point(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
