#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>

#include "shiftlab/characterization.hpp"
#include "shiftlab/criteria.hpp"
#include "shiftlab/density.hpp"
#include "shiftlab/diffset.hpp"
#include "shiftlab/fhc_vector.hpp"
#include "shiftlab/io.hpp"
#include "shiftlab/obstruction.hpp"
#include "shiftlab/s5.hpp"
#include "shiftlab/s6.hpp"
#include "shiftlab/shift.hpp"

using namespace shiftlab;
using io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CsvRow {
  double index;
  double value;
  std::string series;
};

struct Outcome {
  Json body = Json::object();
  std::vector<ConditionReport> reports;
  std::vector<CsvRow> csv;
};

struct Common {
  std::string out;
  std::string csv;
};

Json manifest(const std::string& command, Json params) {
  return Json{{"tool", "shiftlab"}, {"version", kVersion}, {"command", command}, {"params", std::move(params)}};
}

Verdict overall(const std::vector<ConditionReport>& rs) { return rs.empty() ? Verdict::holds : combine(rs); }

int emit(const std::string& command, const Json& params, Outcome o, const Common& c) {
  Json doc;
  doc["manifest"] = manifest(command, params);
  const Verdict v = overall(o.reports);
  doc["verdict"] = to_string(v);
  doc["reports"] = to_json(o.reports);
  for (auto& [k, val] : o.body.items()) doc[k] = val;
  if (c.out.empty()) {
    std::cout << io::dump(doc);
  } else {
    io::write_json(c.out, doc);
  }
  if (!c.csv.empty()) {
    std::ofstream f(c.csv);
    if (!f) throw Error("cannot write " + c.csv);
    f << "index,value,series\n";
    f.precision(17);
    for (const auto& r : o.csv) f << r.index << ',' << r.value << ',' << r.series << '\n';
  }
  for (const auto& r : o.reports) {
    if (r.verdict != Verdict::holds) {
      std::cerr << r.id << ": " << to_string(r.verdict) << (r.note.empty() ? "" : " (" + r.note + ")") << '\n';
      if (r.verdict == Verdict::violated) std::cerr << "  witness " << r.witness.dump() << '\n';
    }
  }
  return v == Verdict::violated ? 1 : 0;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    const auto dot = s.find('.');
    if (dot == std::string::npos) return {std::stoll(s), 1};
    const std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) throw ArgumentError("too many decimals in " + s);
    Index den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const Index num = std::stoll(s.substr(0, dot) + frac);
    const Index g = std::gcd(num, den);
    return {num / g, den / g};
  } catch (const std::logic_error&) {
    throw ArgumentError("not a rational number: " + s);
  }
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Report path (stdout when omitted)");
  sub->add_option("--csv", c.csv, "CSV table (index, value, series)");
}

void density_rows(const DensityEstimate& est, const std::string& series, std::vector<CsvRow>& rows) {
  for (const auto& cp : est.checkpoints) rows.push_back({double(cp.n), cp.ratio(), series});
}

Json checkpoint_json(const DensityEstimate& est) {
  auto t = Json::array();
  for (const auto& cp : est.checkpoints) t.push_back(Json{{"n", cp.n}, {"count", cp.count}, {"ratio", cp.ratio()}});
  return Json{{"lower_est", est.lower_est}, {"upper_est", est.upper_est}, {"checkpoints", std::move(t)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Windowed experiments on difference sets and weighted backward shifts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Common common;

  // density
  std::string set_path;
  Index checkpoints = 16, first = 1;
  bool geometric = false;
  auto* density = app.add_subcommand("density", "Checkpoint density profile of a set");
  density->add_option("--set", set_path, "Set JSON")->required();
  density->add_option("--checkpoints", checkpoints, "Number of checkpoints")->check(CLI::PositiveNumber);
  density->add_flag("--geometric", geometric, "Geometric instead of linear checkpoints");
  density->add_option("--first", first, "First geometric checkpoint")->check(CLI::PositiveNumber);
  add_common(density, common);

  // diffset
  double epsilon = 0.5;
  std::vector<Index> krange;
  std::optional<double> delta;
  auto* diffset = app.add_subcommand("diffset", "Return-time set F and greedy separated set R");
  diffset->add_option("--set", set_path, "Set JSON")->required();
  diffset->add_option("--epsilon", epsilon, "Threshold parameter in (0, 1]")->required();
  diffset->add_option("--krange", krange, "Shift range: lo hi")->expected(2);
  diffset->add_option("--delta", delta, "Exact density replacing the windowed estimate");
  diffset->add_option("--checkpoints", checkpoints, "Number of checkpoints")->check(CLI::PositiveNumber);
  add_common(diffset, common);

  // construct
  int depth = 6, pmax = 5;
  double slack = 1.0;
  std::string a_str = "60", eps_str = "1/100";
  Index window = 10'000'000, dense_limit = 10'000'000;
  auto* construct = app.add_subcommand("construct", "Build the counterexample datasets");
  construct->require_subcommand(1);
  auto* cs5 = construct->add_subcommand("s5", "Block sequences, sets E_p and the unilateral weight");
  cs5->add_option("--depth", depth, "Induction depth")->check(CLI::PositiveNumber);
  cs5->add_option("--slack", slack, "Multiplier >= 1 on each a_{r+1}");
  add_common(cs5, common);
  auto* cs6 = construct->add_subcommand("s6", "Interval system, sets E_p and the bilateral weight");
  cs6->add_option("--a", a_str, "Interval base a (decimal or p/q)");
  cs6->add_option("--epsilon", eps_str, "Interval width epsilon (decimal or p/q)");
  cs6->add_option("--pmax", pmax, "Largest family index")->check(CLI::PositiveNumber);
  cs6->add_option("--window", window, "Window [0, N] for the sets and +-N for the weight")->check(CLI::PositiveNumber);
  cs6->add_option("--dense-limit", dense_limit, "Densely cached part of the negative side");
  add_common(cs6, common);

  // verify
  std::string weights_path, family_path, mode = "bilateral", density_kind = "lower", state_path, vector_out;
  Index N = 10'000'000;
  int p_index = 1;
  auto* verify = app.add_subcommand("verify", "Check the characterization conditions and derived constructions");
  verify->add_option("--weights", weights_path, "Weight JSON or dataset file")->required();
  verify->add_option("--family", family_path, "Family JSON or dataset file");
  verify->add_option("--mode", mode, "bilateral | unilateral | fhc | obstruction")
      ->check(CLI::IsMember({"bilateral", "unilateral", "fhc", "obstruction"}));
  verify->add_option("--pmax", pmax, "Largest family index")->check(CLI::PositiveNumber);
  verify->add_option("--density", density_kind, "lower | upper")->check(CLI::IsMember({"lower", "upper"}));
  verify->add_option("--N", N, "Visit range for fhc mode");
  verify->add_option("--p", p_index, "Level for obstruction mode")->check(CLI::PositiveNumber);
  verify->add_option("--state", state_path, "Dataset file from construct s5 (obstruction mode)");
  verify->add_option("--vector-out", vector_out, "Write the built vector (fhc mode)");
  add_common(verify, common);

  // orbit
  std::string vector_path, target_path;
  double tol = 0.5;
  auto* orbit = app.add_subcommand("orbit", "Visit set of an orbit near a target");
  orbit->add_option("--weights", weights_path, "Weight JSON")->required();
  orbit->add_option("--vector", vector_path, "Vector JSON")->required();
  orbit->add_option("--target", target_path, "Target vector JSON")->required();
  orbit->add_option("--tol", tol, "Ball radius")->required();
  orbit->add_option("--N", N, "Last power")->required();
  orbit->add_option("--checkpoints", checkpoints, "Number of checkpoints")->check(CLI::PositiveNumber);
  add_common(orbit, common);

  // witness
  double p_exp = 1.0;
  auto* witness = app.add_subcommand("witness", "Necessary-condition sums over a candidate visit set");
  witness->add_option("--weights", weights_path, "Weight JSON")->required();
  witness->add_option("--set", set_path, "Set JSON")->required();
  witness->add_option("--p", p_exp, "Exponent p >= 1");
  add_common(witness, common);

  // scan
  std::string scan_mode = "series";
  std::vector<double> thresholds;
  auto* scan = app.add_subcommand("scan", "Series partial sums or distributional orbit scan");
  scan->add_option("--weights", weights_path, "Weight JSON")->required();
  scan->add_option("--mode", scan_mode, "series | distributional")->check(CLI::IsMember({"series", "distributional"}));
  scan->add_option("--p", p_exp, "Series exponent p >= 1");
  scan->add_option("--N", N, "Last index or power");
  scan->add_option("--vector", vector_path, "Vector JSON (distributional)");
  scan->add_option("--thresholds", thresholds, "Norm thresholds (distributional)");
  scan->add_option("--checkpoints", checkpoints, "Number of checkpoints")->check(CLI::PositiveNumber);
  add_common(scan, common);

  // report
  std::vector<std::string> inputs;
  auto* report = app.add_subcommand("report", "Summarize report files");
  report->add_option("inputs", inputs, "Report JSON files")->required();
  add_common(report, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome o;
    Json params;
    std::string command;

    if (*density) {
      command = "density";
      params = {{"set", set_path}, {"checkpoints", checkpoints}, {"geometric", geometric}, {"first", first}};
      const IntSet a = io::intset_from_json(io::read_json(set_path), set_path);
      const Index last = a.window().max_prefix();
      const auto cps = geometric ? geometric_checkpoints(first, last, checkpoints) : linear_checkpoints(last, checkpoints);
      const DensityEstimate est = density_profile(a, cps);
      o.body["density"] = checkpoint_json(est);
      density_rows(est, "density", o.csv);
    } else if (*diffset) {
      command = "diffset";
      const IntSet a = io::intset_from_json(io::read_json(set_path), set_path);
      Window kr = krange.size() == 2 ? Window{krange[0], krange[1]} : Window{-64, 64};
      params = {{"set", set_path}, {"epsilon", epsilon}, {"krange", {kr.lo, kr.hi}}, {"checkpoints", checkpoints}};
      if (delta) params["delta"] = *delta;
      DiffSetOptions opts;
      opts.delta = delta;
      const Index reach = std::max(-kr.lo, kr.hi);
      opts.checkpoints = linear_checkpoints(a.window().max_prefix() - reach, checkpoints);
      const DiffSetReport r = syndetic_return_set(a, epsilon, kr, opts);
      auto dk = Json::array();
      for (const auto& [k, d] : r.delta_k) {
        dk.push_back(Json::array({k, d}));
        o.csv.push_back({double(k), d, "delta_k"});
      }
      o.body["delta"] = r.delta;
      o.body["threshold"] = r.threshold;
      o.body["delta_k"] = std::move(dk);
      o.body["F"] = r.F.members();
      o.body["max_gap"] = r.max_gap ? Json(*r.max_gap) : Json(nullptr);
      o.body["R"] = r.R;
      o.body["bound"] = r.bound;
      ConditionReport nonempty = r.F.empty() ? ConditionReport::violated("F-nonempty", Json{{"k_range", {kr.lo, kr.hi}}})
                                             : ConditionReport::holds("F-nonempty");
      ConditionReport bound = r.bound_holds ? ConditionReport::holds("greedy-bound")
                                            : ConditionReport::violated("greedy-bound", Json{{"size", r.R.size()}});
      ConditionReport covers = r.covers ? ConditionReport::holds("covering")
                                        : ConditionReport::violated("covering", Json{{"range", {r.covered_range.lo,
                                                                                                  r.covered_range.hi}}});
      o.reports = {nonempty, bound, covers};
    } else if (*cs5) {
      command = "construct s5";
      params = {{"depth", depth}, {"slack", slack}};
      const S5State st = build_s5(depth, slack);
      const WeightSeq w = build_s5_weight(st);
      o.reports = check_s5_invariants(st);
      for (auto& r : check_s5_weight(st, w)) o.reports.push_back(r);
      FhcFamily fam{st.E, geometric_targets(depth, 0.5), 2.0};
      o.body["state"] = io::to_json(st);
      o.body["weights"] = io::s5_weight_ref(st);
      o.body["family"] = io::to_json(fam);
    } else if (*cs6) {
      command = "construct s6";
      params = {{"a", a_str}, {"epsilon", eps_str}, {"pmax", pmax}, {"window", window}, {"dense_limit", dense_limit}};
      const S6Config cfg = make_s6_config(parse_rational(a_str), parse_rational(eps_str), pmax, window);
      o.reports = check_s6_config(cfg);
      const WeightSeq w = build_s6_weight(cfg, dense_limit);
      o.reports.push_back(check_s6_weight(cfg, w));
      const auto E = build_s6_sets(cfg);
      for (int p = 1; p <= pmax; ++p) {
        if (E[static_cast<std::size_t>(p - 1)].empty()) {
          std::cerr << "warning: E_" << p << " has no member in [0, " << window << "]\n";
        }
      }
      FhcFamily fam{E, geometric_targets(pmax, 1.0), 2.0};
      o.body["config"] = io::to_json(cfg);
      o.body["weights"] = io::s6_weight_ref(cfg, dense_limit);
      o.body["family"] = io::to_json(fam);
    } else if (*verify) {
      command = "verify";
      params = {{"weights", weights_path}, {"family", family_path}, {"mode", mode}, {"pmax", pmax}};
      const WeightSeq w = io::weight_from_json(io::read_json(weights_path), weights_path);
      if (mode == "obstruction") {
        params["p"] = p_index;
        params["state"] = state_path;
        if (state_path.empty()) throw ArgumentError("obstruction mode needs --state");
        const Json sj = io::read_json(state_path);
        const Json& s = sj.contains("state") ? sj["state"] : sj;
        const S5State st = build_s5(s.at("depth").get<int>(), s.value("slack", 1.0));
        const ConditionReport r = lower_density_obstruction(w, st, p_index);
        for (const auto& row : r.quantities["rows"]) {
          o.csv.push_back({row["r"].get<double>(), row["count"].get<double>(), "count"});
          o.csv.push_back({row["r"].get<double>(), row["bound"].get<double>(), "bound"});
        }
        o.reports = {r};
      } else {
        if (family_path.empty()) throw ArgumentError("--family is required in this mode");
        const FhcFamily fam = io::family_from_json(io::read_json(family_path), family_path);
        const int P = std::min(pmax, fam.pmax());
        params["pmax"] = P;
        if (mode == "fhc") {
          params["N"] = N;
          const FhcVectorPlan plan = plan_fhc_vector(w, fam, P);
          const LogSparseVec x = build_fhc_vector(w, plan);
          const ConditionReport r = verify_fhc_visits(w, x, plan, N);
          auto levels = Json::array();
          for (int q = 1; q <= P; ++q) {
            const auto i = static_cast<std::size_t>(q - 1);
            levels.push_back({{"p", q},
                              {"source_family", plan.source[i]},
                              {"log2_M_needed", plan.log2_M_needed[i]},
                              {"F_size", plan.F[i].size()}});
          }
          o.body["levels"] = std::move(levels);
          o.body["vector_entries"] = x.size();
          if (!vector_out.empty()) io::write_json(vector_out, io::to_json(x));
          int p = 1;
          for (const auto& e : r.quantities["error_profile"]) {
            if (!e.is_null()) o.csv.push_back({double(p), e.get<double>(), "visit-error"});
            ++p;
          }
          o.reports = {r};
        } else {
          params["density"] = density_kind;
          VerifyOptions opts;
          opts.lower_density = density_kind == "lower";
          o.reports = mode == "bilateral" ? verify_bilateral_conditions(w, fam, P, opts)
                                          : verify_unilateral_conditions(w, fam, P, opts);
        }
      }
    } else if (*orbit) {
      command = "orbit";
      params = {{"weights", weights_path}, {"vector", vector_path}, {"target", target_path},
                {"tol", tol},         {"N", N},                {"checkpoints", checkpoints}};
      const WeightSeq w = io::weight_from_json(io::read_json(weights_path), weights_path);
      const SparseVec x = io::vector_from_json(io::read_json(vector_path), vector_path);
      const SparseVec y = io::vector_from_json(io::read_json(target_path), target_path);
      const IntSet visits = visit_set(w, x, y, tol, N);
      const DensityEstimate est = density_profile(visits, linear_checkpoints(N, checkpoints));
      o.body["visits"] = visits.size();
      o.body["density"] = checkpoint_json(est);
      density_rows(est, "visit-density", o.csv);
    } else if (*witness) {
      command = "witness";
      params = {{"weights", weights_path}, {"set", set_path}, {"p", p_exp}};
      const WeightSeq w = io::weight_from_json(io::read_json(weights_path), weights_path);
      const IntSet a = io::intset_from_json(io::read_json(set_path), set_path);
      o.reports = {necessary_condition_witness(w, a, p_exp)};
    } else if (*scan) {
      command = "scan";
      params = {{"weights", weights_path}, {"mode", scan_mode}, {"N", N}};
      const WeightSeq w = io::weight_from_json(io::read_json(weights_path), weights_path);
      if (scan_mode == "series") {
        params["p"] = p_exp;
        ConditionReport r = lp_series_test(w, p_exp, N);
        for (const auto& side : r.quantities["parts"]) {
          for (const auto& cp : side["quantities"]["checkpoints"]) {
            o.csv.push_back({cp["n"].get<double>(), cp["partial_sum"].get<double>(), side["id"].get<std::string>()});
          }
        }
        o.reports = {r};
      } else {
        params["vector"] = vector_path;
        params["thresholds"] = thresholds;
        params["checkpoints"] = checkpoints;
        if (vector_path.empty() || thresholds.empty()) throw ArgumentError("distributional mode needs --vector and --thresholds");
        const SparseVec x = io::vector_from_json(io::read_json(vector_path), vector_path);
        o.reports = {distributional_unbounded_scan(w, x, thresholds, N, checkpoints)};
        for (const auto& part : o.reports[0].quantities["parts"]) {
          const auto& q = part["quantities"];
          o.csv.push_back({q["threshold"].get<double>(), q["lower_est"].get<double>(), "lower_est"});
          o.csv.push_back({q["threshold"].get<double>(), q["upper_est"].get<double>(), "upper_est"});
        }
      }
    } else if (*report) {
      command = "report";
      params = {{"inputs", inputs}};
      auto rows = Json::array();
      for (const auto& path : inputs) {
        const Json doc = io::read_json(path);
        const std::string v = doc.value("verdict", "inconclusive");
        ConditionReport r = v == "holds-on-window" ? ConditionReport::holds(path)
                            : v == "violated"      ? ConditionReport::violated(path, doc.value("reports", Json()))
                                                   : ConditionReport::inconclusive(path, "input not conclusive");
        r.quantities["command"] = doc.contains("manifest") ? doc["manifest"].value("command", "") : "";
        o.reports.push_back(r);
      }
    }
    return emit(command, params, std::move(o), common);
  } catch (const io::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << " (reached " << e.reached << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
