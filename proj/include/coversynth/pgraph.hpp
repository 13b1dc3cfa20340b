#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coversynth/symbol_set.hpp"

namespace coversynth {

class Cover;

using VertexId = std::uint32_t;

enum class VertexKind : std::uint8_t { action, observation };

inline VertexKind opposite(VertexKind k) {
  return k == VertexKind::action ? VertexKind::observation : VertexKind::action;
}
const char* to_string(VertexKind k);

/// Directed edge bearing a non-empty set of events. `label_kind` names the
/// alphabet the labels are drawn from.
struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  VertexKind label_kind = VertexKind::action;
  SymbolSet labels;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Edge-labeled bipartite graph over action and observation vertices; used
/// for both worlds and plans. Built incrementally, then treated as immutable.
class PGraph {
 public:
  PGraph() = default;
  PGraph(Alphabet actions, Alphabet observations)
      : actions_(std::move(actions)), observations_(std::move(observations)) {}

  VertexId add_vertex(VertexKind kind, std::string name = {});
  /// Labels are interpreted in the alphabet matching the source vertex kind.
  std::size_t add_edge(VertexId source, VertexId target, SymbolSet labels);
  std::size_t add_edge(Edge e);
  void set_initial(std::vector<VertexId> initial);

  std::size_t vertex_count() const { return kinds_.size(); }
  VertexKind kind(VertexId v) const;
  const std::string& name(VertexId v) const;
  /// Vertex by name; throws LookupError.
  VertexId vertex(std::string_view name) const;
  bool has_vertex(VertexId v) const { return v < kinds_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  Edge& edge(std::size_t i) { return edges_.at(i); }
  /// Indices into edges() of the edges leaving v.
  std::span<const std::size_t> out_edges(VertexId v) const;
  const std::vector<VertexId>& initial() const { return initial_; }

  /// A(v): union of the labels on the edges leaving v. Throws LookupError.
  SymbolSet outgoing_events(VertexId v) const;

  const Alphabet& actions() const { return actions_; }
  const Alphabet& observations() const { return observations_; }
  Alphabet& actions() { return actions_; }
  Alphabet& observations() { return observations_; }

  /// Union of all observation labels in the graph.
  SymbolSet observation_events() const;
  /// Name of the event with the given kind, for diagnostics.
  std::string event_name(VertexKind kind, SymbolId id) const;

  friend bool operator==(const PGraph&, const PGraph&) = default;

 private:
  Alphabet actions_;
  Alphabet observations_;
  std::vector<VertexKind> kinds_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<VertexId> initial_;
};

struct PlanningProblem {
  PGraph world;
  std::vector<VertexId> goal;  // sorted, unique

  bool in_goal(VertexId v) const;
};

struct Plan {
  PGraph graph;
  std::vector<VertexId> termination;  // sorted, unique

  bool terminates(VertexId v) const;
};

enum class ViolationCode : std::uint8_t {
  not_bipartite,
  label_kind_mismatch,
  empty_label_set,
  label_outside_alphabet,
  unknown_vertex,
  empty_initial,
  heterogeneous_initial,
  unknown_goal_vertex,
};
const char* to_string(ViolationCode c);

struct Violation {
  ViolationCode code;
  std::string message;
  std::int64_t vertex = -1;
  std::int64_t edge = -1;
};

/// Empty iff the graph satisfies every p-graph invariant.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationCode c) const;
  std::string describe() const;
};

ValidationReport validate(const PGraph& graph);
/// Graph invariants plus goal membership.
ValidationReport validate(const PlanningProblem& problem);
ValidationReport validate(const Plan& plan);

/// Observation labels of `plan` are reading indices (1-based positions of the
/// cover's blocks in canonical order). Returns the plan with every observation
/// label set replaced by the union of the blocks it indexes, expressed in
/// `observations`. Throws MappingError for readings outside 1..k.
Plan apply_preimage(const Plan& plan, const Cover& cover, const Alphabet& observations);

/// Name for reading i (1-based) used in plan alphabets.
std::string reading_name(std::size_t i);

}  // namespace coversynth
