#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coversynth/belief.hpp"
#include "coversynth/cover.hpp"
#include "coversynth/pgraph.hpp"
#include "coversynth/properties.hpp"

namespace coversynth {

struct SynthConfig {
  /// Largest cover list allowed at any belief vertex.
  std::size_t max_cover_list = 2'000'000;
  /// Partial combinations explored at one observation vertex.
  std::size_t max_combinations = 20'000'000;
  /// Reduce every list to its upper covers. Turning this off only slows the
  /// search; the downward closure of the root list is unchanged.
  bool compact = true;
  /// Drop inadmissible blocks (per-block constraints) from the cover produced
  /// at every observation vertex rather than at the root only.
  bool filter_blocks_each_vertex = true;
  /// Worker threads for level-parallel propagation.
  unsigned workers = 1;
};

/// How a cover at a belief vertex was obtained. For an action vertex `edges`
/// holds the single child edge taken; for an observation vertex it holds the
/// combination K of child edges. `child_covers[i]` indexes the cover list of
/// the child behind `edges[i]`.
struct Witness {
  std::vector<std::uint32_t> edges;
  std::vector<std::uint32_t> child_covers;
};

struct VertexSolution {
  CoverList covers;
  std::vector<Witness> witnesses;  // parallel to covers
};

/// Result of the bottom-up search: per-vertex cover lists with witnesses,
/// together with the tree they were computed on.
class SolutionSet {
 public:
  SolutionSet(BeliefTree tree, std::vector<VertexSolution> solutions, ConstraintSpec spec)
      : tree_(std::move(tree)), solutions_(std::move(solutions)), spec_(std::move(spec)) {}

  const BeliefTree& tree() const { return tree_; }
  const ConstraintSpec& spec() const { return spec_; }
  const CoverList& root_covers() const { return solutions_.front().covers; }
  const VertexSolution& at(std::size_t vertex) const { return solutions_.at(vertex); }

  /// The root is already a goal: any sensor works.
  bool sensorless() const;
  bool solvable() const { return !root_covers().empty(); }

  /// Index of a root cover R with dom(R) ⊆ dom(cover) and
  /// project(cover, dom R) ⊆ R; such a cover admits a plan.
  std::optional<std::size_t> find_root(const Cover& cover) const;
  bool admits(const Cover& cover) const { return find_root(cover).has_value(); }

  /// All equal-domain subcovers of the root covers satisfying the global
  /// properties of the spec (per-block ones hold already). ResourceError past
  /// `budget` results (0 = unlimited).
  CoverList constrained_closure(std::size_t budget = 0) const;
  /// Number of distinct equal-domain subcovers of the root covers, without
  /// global filters. nullopt when a domain group is too large for exact
  /// inclusion–exclusion or the count overflows.
  std::optional<std::uint64_t> closure_count() const;

 private:
  BeliefTree tree_;
  std::vector<VertexSolution> solutions_;
  ConstraintSpec spec_;
};

/// All K ⊆ labels with ∪K = target, each as a sorted list of positions into
/// `labels`, in canonical (lexicographic) order. `minimal_only` keeps the
/// combinations from which no label can be dropped.
std::vector<std::vector<std::size_t>> covering_combinations(const std::vector<SymbolSet>& labels, SymbolSet target,
                                                            bool minimal_only = false);

/// Propagates cover lists from the goal leaves to the root.
SolutionSet synthesize(BeliefTree tree, const ConstraintSpec& spec = {}, const SynthConfig& config = {});

/// Plan realizing `cover` (which must be admitted by `solution`). Observation
/// labels in the plan are 1-based block positions of `cover`.
/// Throws NotASolutionError otherwise, ResourceError when `cover` has more
/// blocks than a reading alphabet can hold.
Plan extract_plan(const SolutionSet& solution, const Cover& cover, const PGraph& world);

/// Same plan with every observation edge labelled by its preimage, i.e. by
/// world observation names. Works for covers of any size; check it with
/// solves_by_preimage.
Plan extract_preimage_plan(const SolutionSet& solution, const Cover& cover, const PGraph& world);

}  // namespace coversynth
