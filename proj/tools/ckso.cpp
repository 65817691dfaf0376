// Command-line front end: solve / verify / oracle / gen / bench.
//
// Exit codes for `solve`: 0 solution found, 2 no feasible solution exists,
// 1 malformed input or internal error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ckso/generators.hpp"
#include "ckso/json_io.hpp"
#include "ckso/lp.hpp"
#include "ckso/oracle.hpp"
#include "ckso/solver.hpp"
#include "ckso/variants.hpp"

using namespace ckso;
using nlohmann::json;

namespace {

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "auto" || name.empty()) return std::nullopt;
  if (name == "hard") return Variant::Hard;
  if (name == "soft") return Variant::Soft;
  if (name == "uniform") return Variant::Uniform;
  if (name == "uniform-soft") return Variant::UniformSoft;
  throw CLI::ValidationError("--variant", "unknown variant: " + name);
}

json report_to_json(const RunReport& r) {
  json out;
  out["variant"] = variant_name(r.variant);
  out["factor"] = r.factor;
  out["feasible"] = r.feasible;
  if (r.feasible) {
    out["radius"] = r.radius;
    out["threshold_used"] = r.threshold_used;
  }
  json taus = json::array();
  for (const auto& t : r.thresholds) {
    json jt;
    jt["tau"] = t.tau;
    jt["skipped_by_gate"] = t.skipped_by_gate;
    jt["success"] = t.success;
    json cands = json::array();
    for (const auto& c : t.candidates) {
      json jc;
      jc["skeleton"] = c.skeleton_ids;
      jc["dp_found"] = c.dp_found;
      json comps = json::array();
      for (const auto& comp : c.components) {
        json jcomp;
        jcomp["k_i"] = comp.k_i;
        jcomp["p_i"] = comp.p_i;
        jcomp["clients"] = comp.num_clients;
        jcomp["facilities"] = comp.num_facilities;
        jcomp["hop_radius"] = comp.hop_radius;
        json chain = json::array();
        for (const auto& s : comp.chain.steps)
          chain.push_back({{"step", s.name},
                           {"host", s.host},
                           {"distance", s.r_host},
                           {"distance_in_base", s.r_base},
                           {"mass_moved", s.mass_moved}});
        jcomp["chain"] = std::move(chain);
        comps.push_back(std::move(jcomp));
      }
      jc["components"] = std::move(comps);
      cands.push_back(std::move(jc));
    }
    jt["candidates"] = std::move(cands);
    taus.push_back(std::move(jt));
  }
  out["thresholds"] = std::move(taus);
  return out;
}

int cmd_solve(const std::string& input, const std::string& variant_flag,
              const std::string& mode_name, const std::string& output,
              const std::string& report_path, bool trace, bool exact_lp,
              bool lp_dump) {
  MetricInstance inst;
  try {
    inst = load_instance(input);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  }

  try {
    // --mode can push the instance through the supplier/center reductions.
    std::optional<ReductionWitness> center_witness;
    MetricInstance original = inst;
    if (!mode_name.empty()) {
      if (mode_name == "center" && inst.mode == Mode::Supplier) {
        auto [image, witness] = supplier_to_center(inst);
        inst = std::move(image);
        center_witness = std::move(witness);
      } else if (mode_name == "supplier" && inst.mode == Mode::Center) {
        inst = center_to_supplier(inst);
      } else if (mode_name != "supplier" && mode_name != "center") {
        std::cerr << "unknown mode: " << mode_name << "\n";
        return 1;
      }
    }

    SolveOptions opts;
    opts.variant = parse_variant(variant_flag);
    opts.exact_lp = exact_lp;
    if (trace) {
      opts.transfer_observer = [](const TransferStep& s, const HostMetric&,
                                  const std::vector<std::int64_t>&,
                                  const TransferVector&, const TransferVector&) {
        json line = {{"event", "transfer_step"},
                     {"step", s.name},
                     {"host", s.host},
                     {"distance", s.r_host},
                     {"distance_in_base", s.r_base},
                     {"mass_moved", s.mass_moved}};
        std::cerr << line.dump() << "\n";
      };
    }
    if (lp_dump)
      opts.lp_observer = [](const LPModel& m) { dump_lp(m, std::cerr); };

    SolveOutcome out = solve_metric(inst, opts);
    if (!out.solution) {
      std::cout << "NO: no feasible solution exists\n";
      return 2;
    }

    Solution sol = *out.solution;
    if (center_witness) {
      sol = pull_back_center_solution(original, sol, *center_witness);
      VerifyReport check = verify_solution(original, sol, sol.radius);
      if (!check.ok()) throw PipelineError("mode-pullback", check.violations.front());
    }

    std::cout << "radius " << sol.radius << " (factor " << out.report.factor
              << ", variant " << variant_name(out.report.variant)
              << ", threshold " << out.report.threshold_used << ")\n";
    std::cout << "open " << sol.open.size() << " site(s), serving "
              << sol.assign.size() << " client(s)\n";
    if (output.empty())
      std::cout << solution_to_json(sol) << "\n";
    else
      save_solution(sol, output);
    if (!report_path.empty()) {
      std::ofstream rf(report_path);
      rf << report_to_json(out.report).dump(2) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const std::string& input, const std::string& solution_path,
               double radius_override, bool has_radius) {
  try {
    MetricInstance inst = load_instance(input);
    Solution sol = load_solution(solution_path);
    double r = has_radius ? radius_override : sol.radius;
    VerifyReport report = verify_solution(inst, sol, r);
    json out;
    out["radius_checked"] = r;
    out["achieved_radius"] = report.achieved_radius;
    out["ok"] = report.ok();
    out["violations"] = report.violations;
    std::cout << out.dump(2) << "\n";
    return report.ok() ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_oracle(const std::string& input, std::int64_t budget) {
  try {
    MetricInstance inst = load_instance(input);
    OracleOptions opts;
    if (budget > 0) opts.flow_budget = budget;
    json out;
    try {
      OracleResult res = exact_opt(inst, opts);
      if (res.feasible) {
        out["status"] = "optimal";
        out["opt"] = res.opt;
        out["witness"] = json::parse(solution_to_json(*res.witness));
      } else {
        out["status"] = "infeasible";
      }
    } catch (const OracleBudgetExceeded& e) {
      out["status"] = "unchecked";
      out["reason"] = e.what();
      std::cout << out.dump(2) << "\n";
      return 4;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_gen_gap(int r, const std::string& output) {
  try {
    GapInstance gap = gen_gap(r);
    MetricInstance inst = metric_from_graph(gap.graph);
    json skel = json::array();
    for (int f : gap.suggested_skeleton)
      skel.push_back(gap.graph.facility_ids[f]);
    std::cerr << json{{"suggested_skeleton", skel}}.dump() << "\n";
    if (output.empty())
      std::cout << instance_to_json(inst) << "\n";
    else
      save_instance(inst, output);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_gen_random(const RandomSpec& spec, const std::string& output) {
  try {
    MetricInstance inst = gen_random(spec);
    if (output.empty())
      std::cout << instance_to_json(inst) << "\n";
    else
      save_instance(inst, output);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_bench(const std::string& dir, std::int64_t budget,
              const std::string& variant_flag) {
  try {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      std::cerr << "no .json instances under " << dir << "\n";
      return 1;
    }

    OracleOptions oracle_opts;
    if (budget > 0) oracle_opts.flow_budget = budget;
    SolveOptions solve_opts;
    solve_opts.variant = parse_variant(variant_flag);
    solve_opts.record_report = false;

    std::printf("%-28s %12s %12s %8s %10s\n", "instance", "opt", "radius",
                "ratio", "runtime");
    int violations = 0;
    for (const auto& path : files) {
      MetricInstance inst;
      try {
        inst = load_instance(path.string());
      } catch (const std::exception&) {
        std::printf("%-28s %12s %12s %8s %10s\n",
                    path.filename().string().c_str(), "skipped", "-", "-", "-");
        continue;
      }
      std::string opt_str = "unchecked", radius_str = "NO", ratio_str = "-";
      double opt = -1.0;
      bool oracle_ok = false;
      try {
        OracleResult res = exact_opt(inst, oracle_opts);
        oracle_ok = true;
        if (res.feasible) {
          opt = res.opt;
          opt_str = std::to_string(res.opt);
        } else {
          opt_str = "infeasible";
        }
      } catch (const OracleBudgetExceeded&) {
      }
      auto start = std::chrono::steady_clock::now();
      SolveOutcome out = solve_metric(inst, solve_opts);
      double ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      if (out.solution) {
        radius_str = std::to_string(out.solution->radius);
        if (oracle_ok && opt > 0) {
          double ratio = out.solution->radius / opt;
          ratio_str = std::to_string(ratio);
          if (out.solution->radius > out.report.factor * opt) ++violations;
        } else if (oracle_ok && opt == 0.0) {
          ratio_str = out.solution->radius == 0.0 ? "1" : "inf";
          if (out.solution->radius != 0.0) ++violations;
        }
      }
      std::printf("%-28s %12s %12s %8s %8.1fms\n",
                  path.filename().string().c_str(), opt_str.c_str(),
                  radius_str.c_str(), ratio_str.c_str(), ms);
    }
    if (violations > 0) {
      std::cerr << violations << " row(s) exceeded the approximation factor\n";
      return 5;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capacitated k-supplier with outliers: solver suite"};
  app.require_subcommand(1);

  // solve
  std::string in_path, out_path, report_path, variant = "auto", mode;
  bool trace = false, exact_lp = false, lp_dump = false;
  auto* solve = app.add_subcommand("solve", "run the approximation pipeline");
  solve->add_option("--input", in_path, "instance JSON")->required();
  solve->add_option("--variant", variant,
                    "auto|hard|soft|uniform|uniform-soft");
  solve->add_option("--mode", mode,
                    "supplier|center: apply the corresponding reduction first");
  solve->add_option("--output", out_path, "write the solution JSON here");
  solve->add_option("--report", report_path, "write the run report JSON here");
  solve->add_flag("--trace", trace, "emit transfer-step JSON lines to stderr");
  solve->add_flag("--exact-lp", exact_lp, "decide LP feasibility in exact arithmetic");
  solve->add_flag("--lp-dump", lp_dump, "dump each LP model to stderr");

  // verify
  std::string sol_path;
  double radius = 0.0;
  auto* verify = app.add_subcommand("verify", "check a solution file");
  verify->add_option("--input", in_path, "instance JSON")->required();
  verify->add_option("--solution", sol_path, "solution JSON")->required();
  auto* radius_opt = verify->add_option("--radius", radius, "radius to check against");

  // oracle
  std::int64_t budget = 0;
  auto* oracle = app.add_subcommand("oracle", "exact brute-force optimum");
  oracle->add_option("--input", in_path, "instance JSON")->required();
  oracle->add_option("--budget", budget, "flow-computation budget");

  // gen
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  int gap_r = 2;
  auto* gen_gap_cmd = gen->add_subcommand("gap", "unbounded-gap construction");
  gen_gap_cmd->add_option("--r", gap_r, "radius parameter (>= 2)")->required();
  gen_gap_cmd->add_option("--output", out_path, "write the instance here");

  RandomSpec spec;
  std::string model = "metric";
  std::string cap_mode = "hard";
  auto* gen_rand = gen->add_subcommand("random", "seeded random instance");
  gen_rand->add_option("--seed", spec.seed, "seed")->required();
  gen_rand->add_option("--clients", spec.num_clients, "client count");
  gen_rand->add_option("--facilities", spec.num_facilities, "facility count");
  gen_rand->add_option("--k", spec.k, "facilities to open");
  gen_rand->add_option("--p", spec.p, "clients to serve");
  gen_rand->add_option("--cap-min", spec.cap_min, "capacity lower bound");
  gen_rand->add_option("--cap-max", spec.cap_max, "capacity upper bound");
  gen_rand->add_option("--model", model, "metric|graph");
  gen_rand->add_option("--capacity-mode", cap_mode, "hard|soft");
  gen_rand->add_flag("--uniform", spec.uniform, "one shared capacity");
  bool disconnected = false;
  gen_rand->add_flag("--allow-disconnected", disconnected,
                     "graph model: skip the connectivity spanning structure");
  gen_rand->add_option("--grid", spec.grid_side, "metric model: grid side");
  gen_rand->add_option("--output", out_path, "write the instance here");

  // bench
  std::string dir;
  auto* bench = app.add_subcommand("bench", "oracle-vs-solver table over a directory");
  bench->add_option("--dir", dir, "directory of instance JSON files")->required();
  bench->add_option("--budget", budget, "oracle flow budget");
  bench->add_option("--variant", variant, "auto|hard|soft|uniform|uniform-soft");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed())
    return cmd_solve(in_path, variant, mode, out_path, report_path, trace,
                     exact_lp, lp_dump);
  if (verify->parsed())
    return cmd_verify(in_path, sol_path, radius, radius_opt->count() > 0);
  if (oracle->parsed()) return cmd_oracle(in_path, budget);
  if (gen_gap_cmd->parsed()) return cmd_gen_gap(gap_r, out_path);
  if (gen_rand->parsed()) {
    spec.model = model == "graph" ? RandomModel::Graph : RandomModel::Metric;
    spec.capacity_mode =
        cap_mode == "soft" ? CapacityMode::Soft : CapacityMode::Hard;
    spec.connected = !disconnected;
    return cmd_gen_random(spec, out_path);
  }
  if (bench->parsed()) return cmd_bench(dir, budget, variant);
  return 1;
}
