#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coversynth/belief.hpp"
#include "coversynth/cover.hpp"
#include "coversynth/errors.hpp"
#include "coversynth/pgraph.hpp"
#include "coversynth/properties.hpp"
#include "coversynth/stipulation.hpp"
#include "coversynth/synth.hpp"
#include "coversynth/verify.hpp"

namespace coversynth {

inline constexpr const char* kProblemSchema = "coversynth/problem@1";
inline constexpr const char* kPlanSchema = "coversynth/plan@1";
inline constexpr const char* kSolutionSchema = "coversynth/solution@1";
inline constexpr const char* kReportSchema = "coversynth/report@1";

/// Search limits carried by a problem file; unset entries fall back to the
/// library defaults.
struct Budgets {
  std::optional<std::size_t> max_tree_vertices;
  std::optional<std::size_t> max_tree_depth;
  std::optional<std::size_t> max_cover_list;
  std::optional<std::size_t> max_combinations;
  std::optional<std::size_t> max_intersect_results;

  friend bool operator==(const Budgets&, const Budgets&) = default;
};

struct ProblemFile {
  std::string name;
  std::string description;
  PlanningProblem problem;
  ConstraintSpec spec;
  std::optional<StipulationFormula> stipulation;
  Budgets budgets;
};

/// One problem with an input, located by JSON pointer and (when known) line.
struct Diagnostic {
  std::string code;
  std::string message;
  std::string field;
  std::size_t line = 0;

  std::string describe() const;
};

/// Input rejected; carries every diagnostic found.
class ProblemError : public ValidationError {
 public:
  explicit ProblemError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Parses a problem file. Throws ProblemError listing every diagnostic.
ProblemFile parse_problem(std::string_view text);
/// Canonical JSON text; parse_problem(export_problem(f)) reproduces f.
std::string export_problem(const ProblemFile& file);

/// Built-in fixtures: "track-cyclic", "grid-office", "corridor".
std::vector<std::string> scenario_names();
/// Throws LookupError for an unknown name.
ProblemFile builtin_scenario(std::string_view name);
/// Track world with `segments` segments (>= 3): the last two share the
/// overlap observation, the goal is the second to last. The six-segment
/// instance is "track-cyclic".
ProblemFile track_scenario(std::size_t segments);

/// Plans on disk: observation labels are reading names "1".."k".
std::string export_plan(const Plan& plan);
Plan parse_plan(std::string_view text);

/// Cover as a JSON array of arrays of observation names.
std::string export_cover(const Cover& cover, const Alphabet& observations);
/// Accepts the JSON form or the display form "[{a, b}, {c}]".
Cover parse_cover(std::string_view text, const Alphabet& observations);

/// Graphviz renderings: action vertices are boxes, observation vertices
/// circles.
std::string tree_to_dot(const BeliefTree& tree, const PGraph& world);
std::string plan_to_dot(const Plan& plan);

struct SolutionExport {
  /// Include a witness plan for each upper cover.
  bool plans = false;
  /// Also enumerate the constrained closure (global properties applied).
  bool constrained = true;
  std::size_t closure_budget = 0;
};
/// Structured, byte-reproducible summary of a synthesis result.
std::string export_solution(const SolutionSet& solution, const PGraph& world, const SolutionExport& options = {});
std::string export_report(const VerifyReport& report, const Plan& plan, const PGraph& world);

}  // namespace coversynth
