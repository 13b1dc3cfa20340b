#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "coversynth/pgraph.hpp"
#include "coversynth/properties.hpp"
#include "coversynth/stipulation.hpp"

namespace coversynth {

/// Sorted set of world vertex ids.
using StateSet = std::vector<VertexId>;

struct BeliefConfig {
  std::size_t max_vertices = 5'000'000;
  std::size_t max_depth = 100'000;
  /// Expand action vertices over every non-empty subset of the common
  /// actions. Forced on when a stipulation is supplied.
  bool action_subsets = false;
};

struct BeliefEdge {
  /// A singleton action, an action subset, or an observation subset G.
  SymbolSet label;
  std::size_t child = 0;
};

struct BeliefVertex {
  StateSet states;  // empty only for the dummy sink
  VertexKind kind = VertexKind::action;
  bool goal = false;
  bool dummy = false;
  /// Non-goal leaf with nothing to expand: no common action, or an
  /// observation belief holding a state that emits nothing.
  bool dead_end = false;
  /// U(W) for action beliefs, Y(W) for observation beliefs.
  SymbolSet events;
  std::size_t depth = 0;
  std::vector<BeliefEdge> children;
};

/// Finite tree of beliefs rooted at the initial states. Revisits along a
/// path, and beliefs rejected by a stipulation, lead to one shared dummy sink.
/// Vertices are stored in preorder: apart from edges into the dummy, every
/// child index exceeds its parent's.
class BeliefTree {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  const BeliefVertex& root() const { return vertices_.front(); }
  const BeliefVertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<BeliefVertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t dummy() const { return dummy_; }

  bool action_subsets() const { return action_subsets_; }
  /// The initial belief itself violates the stipulation; the tree is then a
  /// lone dummy root and nothing can be synthesized.
  bool root_violates_stipulation() const { return root_violates_; }

  friend bool operator==(const BeliefTree&, const BeliefTree&);

 private:
  friend class TreeBuilder;
  std::vector<BeliefVertex> vertices_;
  std::size_t dummy_ = npos;
  bool action_subsets_ = false;
  bool root_violates_ = false;
};

bool operator==(const BeliefEdge& a, const BeliefEdge& b);
bool operator==(const BeliefVertex& a, const BeliefVertex& b);

/// Builds the belief tree of `problem`. Observation expansion is restricted to
/// generate_blocks(Y(W), spec) when `spec` has per-block constraints.
/// Throws ResourceError when a budget in `config` is exceeded, ValidationError
/// for an invalid world, InvariantError for a heterogeneous belief.
BeliefTree build_tree(const PlanningProblem& problem, const ConstraintSpec& spec = {},
                      const StipulationFormula* stipulation = nullptr, const BeliefConfig& config = {});

/// Successor belief of `states` under an action set or an observation set:
/// every target of an edge whose labels intersect `events`.
StateSet belief_image(const PGraph& world, const StateSet& states, SymbolSet events);

}  // namespace coversynth
