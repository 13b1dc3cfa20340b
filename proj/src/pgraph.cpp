#include "coversynth/pgraph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "coversynth/cover.hpp"
#include "coversynth/errors.hpp"

namespace coversynth {

const char* to_string(VertexKind k) { return k == VertexKind::action ? "action" : "observation"; }

const char* to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::not_bipartite: return "not-bipartite";
    case ViolationCode::label_kind_mismatch: return "label-kind-mismatch";
    case ViolationCode::empty_label_set: return "empty-label-set";
    case ViolationCode::label_outside_alphabet: return "label-outside-alphabet";
    case ViolationCode::unknown_vertex: return "unknown-vertex";
    case ViolationCode::empty_initial: return "empty-initial";
    case ViolationCode::heterogeneous_initial: return "heterogeneous-initial";
    case ViolationCode::unknown_goal_vertex: return "unknown-goal-vertex";
  }
  return "?";
}

VertexId PGraph::add_vertex(VertexKind kind, std::string name) {
  const auto id = static_cast<VertexId>(kinds_.size());
  if (name.empty()) name = (kind == VertexKind::action ? "u" : "y") + std::to_string(id);
  kinds_.push_back(kind);
  names_.push_back(std::move(name));
  out_.emplace_back();
  return id;
}

std::size_t PGraph::add_edge(VertexId source, VertexId target, SymbolSet labels) {
  if (!has_vertex(source)) throw LookupError("edge source " + std::to_string(source) + " is not a vertex");
  return add_edge(Edge{source, target, kinds_[source], labels});
}

std::size_t PGraph::add_edge(Edge e) {
  if (!has_vertex(e.source)) throw LookupError("edge source " + std::to_string(e.source) + " is not a vertex");
  edges_.push_back(e);
  out_[e.source].push_back(edges_.size() - 1);
  return edges_.size() - 1;
}

void PGraph::set_initial(std::vector<VertexId> initial) {
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  initial_ = std::move(initial);
}

VertexKind PGraph::kind(VertexId v) const {
  if (!has_vertex(v)) throw LookupError("unknown vertex " + std::to_string(v));
  return kinds_[v];
}

const std::string& PGraph::name(VertexId v) const {
  if (!has_vertex(v)) throw LookupError("unknown vertex " + std::to_string(v));
  return names_[v];
}

VertexId PGraph::vertex(std::string_view name) const {
  for (VertexId v = 0; v < names_.size(); ++v)
    if (names_[v] == name) return v;
  throw LookupError("unknown vertex '" + std::string(name) + "'");
}

std::span<const std::size_t> PGraph::out_edges(VertexId v) const {
  if (!has_vertex(v)) throw LookupError("unknown vertex " + std::to_string(v));
  return out_[v];
}

SymbolSet PGraph::outgoing_events(VertexId v) const {
  SymbolSet events;
  for (std::size_t e : out_edges(v)) events |= edges_[e].labels;
  return events;
}

SymbolSet PGraph::observation_events() const {
  SymbolSet all;
  for (const auto& e : edges_)
    if (e.label_kind == VertexKind::observation) all |= e.labels;
  return all;
}

std::string PGraph::event_name(VertexKind kind, SymbolId id) const {
  const Alphabet& a = kind == VertexKind::action ? actions_ : observations_;
  return id < a.size() ? a.name(id) : "#" + std::to_string(id);
}

namespace {

bool sorted_contains(const std::vector<VertexId>& v, VertexId x) { return std::binary_search(v.begin(), v.end(), x); }

}  // namespace

bool PlanningProblem::in_goal(VertexId v) const { return sorted_contains(goal, v); }
bool Plan::terminates(VertexId v) const { return sorted_contains(termination, v); }

std::size_t ValidationReport::count(ViolationCode c) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [c](const Violation& v) { return v.code == c; }));
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) os << to_string(v.code) << ": " << v.message << '\n';
  return os.str();
}

ValidationReport validate(const PGraph& g) {
  ValidationReport report;
  auto add = [&](ViolationCode code, std::string msg, std::int64_t vertex, std::int64_t edge) {
    report.violations.push_back({code, std::move(msg), vertex, edge});
  };

  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const Edge& e = g.edges()[i];
    const std::string where = "edge " + std::to_string(i);
    if (!g.has_vertex(e.source) || !g.has_vertex(e.target)) {
      add(ViolationCode::unknown_vertex, where + " references a missing vertex", -1, static_cast<std::int64_t>(i));
      continue;
    }
    const VertexKind src = g.kind(e.source);
    if (g.kind(e.target) == src)
      add(ViolationCode::not_bipartite,
          where + " joins two " + to_string(src) + " vertices (" + g.name(e.source) + " -> " + g.name(e.target) + ")",
          e.source, static_cast<std::int64_t>(i));
    if (e.label_kind != src)
      add(ViolationCode::label_kind_mismatch,
          where + " leaves " + to_string(src) + " vertex " + g.name(e.source) + " but bears " + to_string(e.label_kind) +
              " labels",
          e.source, static_cast<std::int64_t>(i));
    if (e.labels.empty())
      add(ViolationCode::empty_label_set, where + " has an empty label set", e.source, static_cast<std::int64_t>(i));
    const Alphabet& alpha = e.label_kind == VertexKind::action ? g.actions() : g.observations();
    if (!e.labels.subset_of(alpha.all()))
      add(ViolationCode::label_outside_alphabet, where + " bears a label outside the " + to_string(e.label_kind) +
                                                     " alphabet",
          e.source, static_cast<std::int64_t>(i));
  }

  if (g.initial().empty()) {
    add(ViolationCode::empty_initial, "initial vertex set is empty", -1, -1);
  } else {
    bool known = true;
    for (VertexId v : g.initial()) {
      if (!g.has_vertex(v)) {
        add(ViolationCode::unknown_vertex, "initial vertex " + std::to_string(v) + " does not exist", v, -1);
        known = false;
      }
    }
    if (known) {
      const VertexKind k0 = g.kind(g.initial().front());
      for (VertexId v : g.initial())
        if (g.kind(v) != k0) {
          add(ViolationCode::heterogeneous_initial, "initial vertices mix action and observation kinds", v, -1);
          break;
        }
    }
  }
  return report;
}

ValidationReport validate(const PlanningProblem& problem) {
  ValidationReport report = validate(problem.world);
  for (VertexId v : problem.goal)
    if (!problem.world.has_vertex(v))
      report.violations.push_back(
          {ViolationCode::unknown_goal_vertex, "goal vertex " + std::to_string(v) + " does not exist", v, -1});
  return report;
}

ValidationReport validate(const Plan& plan) {
  ValidationReport report = validate(plan.graph);
  for (VertexId v : plan.termination)
    if (!plan.graph.has_vertex(v))
      report.violations.push_back(
          {ViolationCode::unknown_vertex, "termination vertex " + std::to_string(v) + " does not exist", v, -1});
  return report;
}

std::string reading_name(std::size_t i) { return std::to_string(i); }

namespace {

std::size_t parse_reading(const std::string& name) {
  std::size_t value = 0;
  const auto* end = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(name.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw MappingError("plan reading '" + name + "' is not a block index");
  return value;
}

}  // namespace

Plan apply_preimage(const Plan& plan, const Cover& cover, const Alphabet& observations) {
  const Alphabet& readings = plan.graph.observations();
  std::vector<SymbolSet> preimage(readings.size());
  for (SymbolId r = 0; r < readings.size(); ++r) {
    const std::size_t index = parse_reading(readings.name(r));
    if (index == 0 || index > cover.size())
      throw MappingError("reading " + readings.name(r) + " outside 1.." + std::to_string(cover.size()));
    preimage[r] = cover.blocks()[index - 1];
  }

  PGraph g(plan.graph.actions(), observations);
  for (VertexId v = 0; v < plan.graph.vertex_count(); ++v) g.add_vertex(plan.graph.kind(v), plan.graph.name(v));
  for (const Edge& e : plan.graph.edges()) {
    Edge mapped = e;
    if (e.label_kind == VertexKind::observation) {
      mapped.labels = SymbolSet{};
      e.labels.for_each([&](SymbolId r) {
        if (r >= preimage.size()) throw MappingError("reading id " + std::to_string(r) + " has no name");
        mapped.labels |= preimage[r];
      });
    }
    g.add_edge(mapped);
  }
  g.set_initial(plan.graph.initial());
  return Plan{std::move(g), plan.termination};
}

}  // namespace coversynth
