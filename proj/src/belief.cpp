#include "coversynth/belief.hpp"

#include <algorithm>
#include <set>

#include "coversynth/errors.hpp"

namespace coversynth {

bool operator==(const BeliefEdge& a, const BeliefEdge& b) { return a.label == b.label && a.child == b.child; }

bool operator==(const BeliefVertex& a, const BeliefVertex& b) {
  return a.states == b.states && a.kind == b.kind && a.goal == b.goal && a.dummy == b.dummy &&
         a.dead_end == b.dead_end && a.events == b.events && a.depth == b.depth && a.children == b.children;
}

bool operator==(const BeliefTree& a, const BeliefTree& b) {
  return a.vertices_ == b.vertices_ && a.dummy_ == b.dummy_ && a.action_subsets_ == b.action_subsets_ &&
         a.root_violates_ == b.root_violates_;
}

StateSet belief_image(const PGraph& world, const StateSet& states, SymbolSet events) {
  StateSet out;
  for (VertexId w : states)
    for (std::size_t e : world.out_edges(w))
      if (world.edges()[e].labels.intersects(events)) out.push_back(world.edges()[e].target);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class TreeBuilder {
 public:
  TreeBuilder(const PlanningProblem& problem, const ConstraintSpec& spec, const StipulationFormula* stipulation,
              const BeliefConfig& config)
      : world_(problem.world), problem_(problem), spec_(spec), stipulation_(stipulation), config_(config) {
    tree_.action_subsets_ = config.action_subsets || stipulation != nullptr;
  }

  BeliefTree build() {
    StateSet root = problem_.world.initial();
    if (stipulation_ && !stipulation_->eval(root)) {
      tree_.root_violates_ = true;
      BeliefVertex v;
      v.states = root;
      v.kind = world_.kind(root.front());
      v.dummy = true;
      tree_.vertices_.push_back(std::move(v));
      tree_.dummy_ = 0;
      return std::move(tree_);
    }
    path_.insert(root);
    expand(std::move(root), 0);
    return std::move(tree_);
  }

 private:
  std::size_t new_vertex(BeliefVertex v) {
    if (tree_.vertices_.size() >= config_.max_vertices)
      throw ResourceError("max-tree-vertices", std::to_string(config_.max_vertices) + " belief vertices");
    tree_.vertices_.push_back(std::move(v));
    return tree_.vertices_.size() - 1;
  }

  std::size_t dummy() {
    if (tree_.dummy_ == BeliefTree::npos) {
      BeliefVertex d;
      d.dummy = true;
      tree_.dummy_ = new_vertex(std::move(d));
    }
    return tree_.dummy_;
  }

  VertexKind kind_of(const StateSet& states) const {
    const VertexKind k = world_.kind(states.front());
    for (VertexId w : states)
      if (world_.kind(w) != k) throw InvariantError("heterogeneous belief encountered");
    return k;
  }

  bool in_goal(const StateSet& states) const {
    return std::all_of(states.begin(), states.end(), [&](VertexId w) { return problem_.in_goal(w); });
  }

  // Child edge toward `states`: the dummy when the belief repeats on the
  // current path or violates the stipulation.
  std::size_t child_for(StateSet states, std::size_t depth) {
    if (path_.contains(states) || (stipulation_ && !stipulation_->eval(states))) return dummy();
    path_.insert(states);
    const std::size_t id = expand(states, depth);
    path_.erase(states);
    return id;
  }

  std::size_t expand(StateSet states, std::size_t depth) {
    if (depth > config_.max_depth) throw ResourceError("max-tree-depth", std::to_string(config_.max_depth) + " levels");
    BeliefVertex v;
    v.kind = kind_of(states);
    v.goal = in_goal(states);
    v.depth = depth;
    v.states = std::move(states);
    const std::size_t id = new_vertex(v);
    if (v.goal) return id;
    const StateSet& here = tree_.vertices_[id].states;

    std::vector<std::pair<SymbolSet, StateSet>> successors;
    if (v.kind == VertexKind::action) {
      SymbolSet common = world_.actions().all();
      for (VertexId w : here) common &= world_.outgoing_events(w);
      tree_.vertices_[id].events = common;
      if (tree_.action_subsets_) {
        std::vector<SymbolSet> subsets;
        common.for_each_subset([&](SymbolSet s) { subsets.push_back(s); });
        std::sort(subsets.begin(), subsets.end());
        for (SymbolSet s : subsets) successors.emplace_back(s, belief_image(world_, here, s));
      } else {
        common.for_each([&](SymbolId a) {
          successors.emplace_back(SymbolSet::single(a), belief_image(world_, here, SymbolSet::single(a)));
        });
      }
    } else {
      SymbolSet observable;
      bool stuck = false;
      for (VertexId w : here) {
        const SymbolSet a = world_.outgoing_events(w);
        stuck = stuck || a.empty();
        observable |= a;
      }
      tree_.vertices_[id].events = observable;
      if (!stuck) {
        std::vector<SymbolSet> blocks;
        if (spec_.has_block_constraints()) {
          blocks = generate_blocks(observable, spec_);
        } else {
          observable.for_each_subset([&](SymbolSet g) { blocks.push_back(g); });
          std::sort(blocks.begin(), blocks.end());
        }
        for (SymbolSet g : blocks) successors.emplace_back(g, belief_image(world_, here, g));
      }
    }
    if (successors.empty()) {
      tree_.vertices_[id].dead_end = true;
      return id;
    }

    std::vector<BeliefEdge> edges;
    edges.reserve(successors.size());
    for (auto& [label, next] : successors) {
      if (next.empty()) throw InvariantError("empty successor belief");
      edges.push_back({label, child_for(std::move(next), depth + 1)});
    }
    tree_.vertices_[id].children = std::move(edges);
    return id;
  }

  const PGraph& world_;
  const PlanningProblem& problem_;
  const ConstraintSpec& spec_;
  const StipulationFormula* stipulation_;
  BeliefConfig config_;
  BeliefTree tree_;
  std::set<StateSet> path_;
};

BeliefTree build_tree(const PlanningProblem& problem, const ConstraintSpec& spec, const StipulationFormula* stipulation,
                      const BeliefConfig& config) {
  if (auto report = validate(problem); !report.ok()) throw ValidationError("invalid planning problem:\n" + report.describe());
  if (problem.goal.empty()) throw ValidationError("goal region is empty");
  if (spec.has_block_constraints()) spec.validate();
  return TreeBuilder(problem, spec, stipulation, config).build();
}

}  // namespace coversynth
