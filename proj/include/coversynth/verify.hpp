#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coversynth/cover.hpp"
#include "coversynth/pgraph.hpp"
#include "coversynth/properties.hpp"
#include "coversynth/stipulation.hpp"

namespace coversynth {

struct JointState {
  VertexId plan = 0;
  VertexId world = 0;
  std::size_t depth = 0;

  friend bool operator==(const JointState&, const JointState&) = default;
};

enum class Condition : std::uint8_t {
  none,
  safety_action,       // plan commands an action the world vertex lacks
  safety_observation,  // world may emit an observation the plan cannot read
  correctness,         // plan terminates outside the goal
  liveness,            // a non-terminated joint state has no continuation
  boundedness,         // a cycle avoids termination
};
const char* to_string(Condition c);

struct VerifyReport {
  bool solves = false;
  Condition violation = Condition::none;
  /// Joint states from an initial pair to the offending one.
  std::vector<JointState> witness;
  /// Event names along `witness` (one fewer than states).
  std::vector<std::string> events;
  std::string detail;
  /// Longest joint execution, when the plan solves.
  std::optional<std::size_t> bound;
};

/// Checks that `plan` solves `problem` when observations pass through the
/// sensor described by `cover`. Plan observation labels are reading names
/// "1".."k" indexing the cover's blocks. A plan edge at an observation vertex
/// is taken on observation y when y lies in the preimage of its readings.
/// Throws ValidationError for malformed inputs, MappingError for readings
/// outside the cover.
VerifyReport solves(const Plan& plan, const PlanningProblem& problem, const Cover& cover);
/// Same check with plan labels being readings of `h`.
VerifyReport solves(const Plan& plan, const PlanningProblem& problem, const SensorMap& h);
/// Same check for a plan whose observation labels are already preimages
/// (world observation names); `cover` supplies the blocks.
VerifyReport solves_by_preimage(const Plan& plan, const PlanningProblem& problem, const Cover& cover);

/// Every cover of `domain`, optionally limited to at most `max_blocks`
/// blocks. ResourceError when |domain| exceeds `hard_cap`. The empty domain
/// has the single cover epsilon.
CoverList enumerate_covers(SymbolSet domain, std::optional<std::size_t> max_blocks = std::nullopt,
                           std::size_t hard_cap = 4);
/// Covers of `domain` assembled from `candidates` only. ResourceError when
/// there are more than `max_candidates` candidate blocks.
CoverList enumerate_covers(const std::vector<SymbolSet>& candidates, SymbolSet domain,
                           std::optional<std::size_t> max_blocks = std::nullopt, std::size_t max_candidates = 24);

struct OracleBounds {
  std::size_t max_observations = 4;
  std::size_t max_world_vertices = 16;
  std::size_t max_beliefs = 100'000;
  /// Actions may be committed as non-empty subsets (nondeterministic choice).
  bool action_subsets = false;
  /// Only covers whose blocks pass the per-block constraints of this spec
  /// are tried (used when Y(W) is too large for the full enumeration).
  const ConstraintSpec* block_filter = nullptr;
};

/// Ground-truth solver: every cover of Y(W) (with admissible blocks, when
/// `bounds.block_filter` is set) under which some bounded plan
/// reaches the goal, found by a least fixpoint over reachable beliefs for each
/// cover separately. Beliefs rejected by `stipulation` are dead.
CoverList oracle(const PlanningProblem& problem, const OracleBounds& bounds = {},
                 const StipulationFormula* stipulation = nullptr);

/// Whether `cover` (a cover of Y(W)) admits a plan, by the same fixpoint.
bool oracle_admits(const PlanningProblem& problem, const Cover& cover, const OracleBounds& bounds = {},
                   const StipulationFormula* stipulation = nullptr);

}  // namespace coversynth
