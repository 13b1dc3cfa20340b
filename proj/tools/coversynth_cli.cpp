// Command-line front end: synth, verify, oracle, scenario, tree.
//
// Exit codes: 0 success, 1 diagnostics (bad input, or a plan that does not
// solve), 2 a resource budget was exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "coversynth/workspace.hpp"

using namespace coversynth;

namespace {

struct Common {
  std::string problem_path;
  std::string scenario;
  std::string output;
  std::optional<std::size_t> max_tree_vertices;
  std::optional<std::size_t> max_tree_depth;
  std::optional<std::size_t> max_cover_list;
  std::optional<std::size_t> max_combinations;
  std::optional<std::size_t> max_intersect_results;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError({{"io", "cannot read " + path, "", 0}});
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ProblemError({{"io", "cannot write " + path, "", 0}});
  out << text;
}

void add_input(CLI::App* cmd, Common& c) {
  cmd->add_option("problem", c.problem_path, "Problem file (JSON)");
  cmd->add_option("--scenario", c.scenario, "Use a built-in scenario instead of a file")
      ->check(CLI::IsMember(scenario_names()))
      ->envname("COVERSYNTH_SCENARIO");
}

void add_budgets(CLI::App* cmd, Common& c) {
  cmd->add_option("--max-tree-vertices", c.max_tree_vertices, "Belief tree vertex cap")
      ->envname("COVERSYNTH_MAX_TREE_VERTICES");
  cmd->add_option("--max-tree-depth", c.max_tree_depth, "Belief tree depth cap")->envname("COVERSYNTH_MAX_TREE_DEPTH");
  cmd->add_option("--max-cover-list", c.max_cover_list, "Cover list size cap per belief vertex")
      ->envname("COVERSYNTH_MAX_COVER_LIST");
  cmd->add_option("--max-combinations", c.max_combinations, "Child combinations explored per observation vertex")
      ->envname("COVERSYNTH_MAX_COMBINATIONS");
  cmd->add_option("--max-intersect-results", c.max_intersect_results,
                  "Cap on covers produced when expanding intersections and closures")
      ->envname("COVERSYNTH_MAX_INTERSECT_RESULTS");
}

ProblemFile load(const Common& c) {
  if (!c.scenario.empty()) return builtin_scenario(c.scenario);
  if (c.problem_path.empty()) throw ProblemError({{"usage", "give a problem file or --scenario", "", 0}});
  return parse_problem(read_file(c.problem_path));
}

BeliefConfig belief_config(const Common& c, const ProblemFile& f) {
  BeliefConfig b;
  if (auto v = c.max_tree_vertices.value_or(f.budgets.max_tree_vertices.value_or(0))) b.max_vertices = v;
  if (auto v = c.max_tree_depth.value_or(f.budgets.max_tree_depth.value_or(0))) b.max_depth = v;
  return b;
}

SynthConfig synth_config(const Common& c, const ProblemFile& f, unsigned jobs) {
  SynthConfig s;
  if (auto v = c.max_cover_list.value_or(f.budgets.max_cover_list.value_or(0))) s.max_cover_list = v;
  if (auto v = c.max_combinations.value_or(f.budgets.max_combinations.value_or(0))) s.max_combinations = v;
  s.workers = jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : jobs;
  return s;
}

constexpr std::size_t kDefaultClosureBudget = 2'000'000;

std::size_t intersect_budget(const Common& c, const ProblemFile& f) {
  return c.max_intersect_results.value_or(f.budgets.max_intersect_results.value_or(kDefaultClosureBudget));
}

SolutionSet run_synthesis(const Common& c, const ProblemFile& f, const SynthConfig& sc) {
  const StipulationFormula* stip = f.stipulation ? &*f.stipulation : nullptr;
  BeliefTree tree = build_tree(f.problem, f.spec, stip, belief_config(c, f));
  if (tree.root_violates_stipulation())
    std::cerr << "warning: the initial belief violates the stipulation; nothing can be synthesized\n";
  return synthesize(std::move(tree), f.spec, sc);
}

std::string count_text(const std::optional<std::uint64_t>& n) { return n ? std::to_string(*n) : "too large to count"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint plan and sensor design: enumerate every observation cover that admits a plan"};
  app.require_subcommand(1);

  Common common;
  unsigned jobs = 1;
  bool no_compact = false;
  bool root_filter_only = false;
  bool with_plans = false;
  bool quiet = false;
  std::size_t show = 20;

  auto* synth = app.add_subcommand("synth", "Synthesize all solving covers with witness plans");
  add_input(synth, common);
  add_budgets(synth, common);
  synth->add_option("-j,--jobs", jobs, "Worker threads (0 = all cores)")->envname("COVERSYNTH_JOBS");
  synth->add_flag("--no-compact", no_compact, "Keep every cover instead of upper covers only")
      ->envname("COVERSYNTH_NO_COMPACT");
  synth->add_flag("--root-filter-only", root_filter_only,
                  "Apply per-block constraints to the root cover only, not at every observation vertex")
      ->envname("COVERSYNTH_ROOT_FILTER_ONLY");
  synth->add_flag("--plans", with_plans, "Include a witness plan per upper cover in the JSON output")
      ->envname("COVERSYNTH_PLANS");
  synth->add_option("-o,--output", common.output, "Write the JSON solution here")->envname("COVERSYNTH_OUTPUT");
  synth->add_option("--show", show, "Upper covers to list on the terminal")->envname("COVERSYNTH_SHOW");
  synth->add_flag("-q,--quiet", quiet, "Print counts only")->envname("COVERSYNTH_QUIET");

  std::string plan_path, cover_text;
  bool json_report = false;
  bool preimage_labels = false;
  auto* verify = app.add_subcommand("verify", "Check that a plan solves a problem under a cover");
  add_input(verify, common);
  verify->add_option("--plan", plan_path, "Plan file (JSON)")->required()->envname("COVERSYNTH_PLAN");
  verify->add_option("--cover", cover_text, "Cover, e.g. '[{o1, o2}, {o3}]', or @file")
      ->required()
      ->envname("COVERSYNTH_COVER");
  verify->add_flag("--json", json_report, "Print the structured report")->envname("COVERSYNTH_JSON");
  verify->add_flag("--preimage", preimage_labels, "Plan observation labels are world observations, not readings")
      ->envname("COVERSYNTH_PREIMAGE");

  bool diff = false;
  auto* orc = app.add_subcommand("oracle", "Brute-force the solving covers of a small problem");
  add_input(orc, common);
  add_budgets(orc, common);
  orc->add_flag("--diff", diff, "Compare against synthesis")->envname("COVERSYNTH_DIFF");

  std::string scenario_name;
  auto* scen = app.add_subcommand("scenario", "Print a built-in scenario as a problem file");
  scen->add_option("name", scenario_name, "Scenario name")->required()->check(CLI::IsMember(scenario_names()));
  scen->add_option("-o,--output", common.output, "Output path")->envname("COVERSYNTH_OUTPUT");

  auto* tree_cmd = app.add_subcommand("tree", "Print the belief tree in DOT format");
  add_input(tree_cmd, common);
  add_budgets(tree_cmd, common);
  tree_cmd->add_option("-o,--output", common.output, "Output path")->envname("COVERSYNTH_OUTPUT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*scen) {
      write_output(common.output, export_problem(builtin_scenario(scenario_name)));
      return 0;
    }
    const ProblemFile f = load(common);
    const Alphabet& obs = f.problem.world.observations();

    if (*tree_cmd) {
      const StipulationFormula* stip = f.stipulation ? &*f.stipulation : nullptr;
      write_output(common.output, tree_to_dot(build_tree(f.problem, f.spec, stip, belief_config(common, f)),
                                              f.problem.world));
      return 0;
    }

    if (*synth) {
      SynthConfig sc = synth_config(common, f, jobs);
      sc.compact = !no_compact;
      sc.filter_blocks_each_vertex = !root_filter_only;
      const SolutionSet s = run_synthesis(common, f, sc);
      const std::size_t budget = intersect_budget(common, f);
      std::cout << "belief tree vertices: " << s.tree().size() << "\n";
      std::cout << "upper covers at the root: " << s.root_covers().size() << "\n";
      std::cout << "covers in their closure (equal-domain subcovers): " << count_text(s.closure_count()) << "\n";
      // Block properties already hold for every closure member.
      std::cout << "covers in the closure satisfying all constraints: "
                << (f.spec.has_global_constraints() ? std::to_string(s.constrained_closure(budget).size())
                                                    : count_text(s.closure_count()))
                << "\n";
      if (s.sensorless()) std::cout << "no sensing required: the goal is reached without observations\n";
      if (!quiet) {
        std::size_t shown = 0;
        for (const Cover& c : s.root_covers()) {
          if (shown++ == show) {
            std::cout << "  ... (" << s.root_covers().size() - show << " more)\n";
            break;
          }
          std::cout << "  " << c.format(obs) << "\n";
        }
      }
      if (!common.output.empty()) {
        SolutionExport opt;
        opt.plans = with_plans;
        opt.closure_budget = budget;
        write_output(common.output, export_solution(s, f.problem.world, opt));
      }
      return 0;
    }

    if (*verify) {
      const Plan plan = parse_plan(read_file(plan_path));
      const std::string text = !cover_text.empty() && cover_text[0] == '@' ? read_file(cover_text.substr(1)) : cover_text;
      const Cover cover = parse_cover(text, obs);
      const VerifyReport r = preimage_labels ? solves_by_preimage(plan, f.problem, cover) : solves(plan, f.problem, cover);
      if (json_report) {
        std::cout << export_report(r, plan, f.problem.world);
      } else if (r.solves) {
        std::cout << "solves (longest joint execution: " << *r.bound << " events)\n";
      } else {
        std::cout << "fails: " << to_string(r.violation) << ": " << r.detail << "\n";
        std::cout << "  after events:";
        for (const auto& e : r.events) std::cout << " " << e;
        std::cout << "\n";
      }
      return r.solves ? 0 : 1;
    }

    if (*orc) {
      OracleBounds ob;
      const StipulationFormula* stip = f.stipulation ? &*f.stipulation : nullptr;
      ob.action_subsets = stip != nullptr;
      if (f.spec.has_block_constraints()) ob.block_filter = &f.spec;
      const CoverList truth = oracle(f.problem, ob, stip);
      std::cout << "covers admitting a plan: " << truth.size() << "\n";
      for (const Cover& c : truth) std::cout << "  " << c.format(obs) << "\n";
      if (diff) {
        const SolutionSet s = run_synthesis(common, f, synth_config(common, f, 1));
        const SymbolSet y = f.problem.world.observation_events();
        const CoverList candidates = ob.block_filter ? enumerate_covers(generate_blocks(y, f.spec), y)
                                                     : enumerate_covers(y, std::nullopt, ob.max_observations);
        std::size_t missing = 0, extra = 0;
        for (const Cover& c : candidates) {
          const bool a = s.admits(c), t = truth.contains(c);
          if (t && !a) std::cout << "  missing from synthesis: " << c.format(obs) << "\n", ++missing;
          if (a && !t) std::cout << "  not confirmed by the oracle: " << c.format(obs) << "\n", ++extra;
        }
        std::cout << (missing + extra == 0 ? "synthesis agrees with the oracle\n" : "synthesis disagrees with the oracle\n");
        return missing + extra == 0 ? 0 : 1;
      }
      return 0;
    }
  } catch (const ResourceError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const ProblemError& e) {
    for (const Diagnostic& d : e.diagnostics()) std::cerr << "error: " << d.describe() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
