#include <sstream>

#include "coversynth/workspace.hpp"
#include "json.hpp"

namespace coversynth {

using ojson = nlohmann::ordered_json;

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* shape(VertexKind k) { return k == VertexKind::action ? "box" : "circle"; }

std::string event_label(const PGraph& g, VertexKind kind, SymbolSet labels) {
  const Alphabet& a = kind == VertexKind::action ? g.actions() : g.observations();
  std::string s;
  labels.for_each([&](SymbolId id) { s += (s.empty() ? "" : ", ") + a.name(id); });
  return s;
}

ojson cover_json(const Cover& c, const Alphabet& a) {
  ojson out = ojson::array();
  for (SymbolSet b : c.blocks()) {
    ojson block = ojson::array();
    for (const std::string& n : a.names_of(b)) block.push_back(n);
    out.push_back(std::move(block));
  }
  return out;
}

ojson plan_json(const Plan& plan) { return ojson::parse(export_plan(plan)); }

}  // namespace

std::string tree_to_dot(const BeliefTree& tree, const PGraph& world) {
  std::ostringstream out;
  out << "digraph belief_tree {\n  node [fontname=\"Helvetica\"];\n";
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const BeliefVertex& v = tree.vertex(i);
    out << "  b" << i << " [";
    if (v.dummy) {
      out << "shape=plaintext, label=\"dummy\"";
    } else {
      std::string label = "{";
      for (std::size_t k = 0; k < v.states.size(); ++k) label += (k ? ", " : "") + world.name(v.states[k]);
      out << "shape=" << shape(v.kind) << ", label=" << quoted(label + "}");
      if (v.goal) out << ", peripheries=2";
      if (v.dead_end) out << ", style=dashed";
    }
    out << "];\n";
  }
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const BeliefVertex& v = tree.vertex(i);
    for (const BeliefEdge& e : v.children)
      out << "  b" << i << " -> b" << e.child << " [label=" << quoted(event_label(world, v.kind, e.label)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string plan_to_dot(const Plan& plan) {
  const PGraph& g = plan.graph;
  std::ostringstream out;
  out << "digraph plan {\n  node [fontname=\"Helvetica\"];\n";
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "  " << quoted(g.name(v)) << " [shape=" << shape(g.kind(v));
    if (plan.terminates(v)) out << ", peripheries=2";
    out << "];\n";
  }
  for (const Edge& e : g.edges())
    out << "  " << quoted(g.name(e.source)) << " -> " << quoted(g.name(e.target))
        << " [label=" << quoted(event_label(g, e.label_kind, e.labels)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string export_solution(const SolutionSet& solution, const PGraph& world, const SolutionExport& options) {
  const Alphabet& obs = world.observations();
  ojson out;
  out["schema"] = kSolutionSchema;
  out["solvable"] = solution.solvable();
  out["sensorless"] = solution.sensorless();
  out["tree_vertices"] = solution.tree().size();
  ojson counts;
  counts["upper_covers"] = solution.root_covers().size();
  if (auto n = solution.closure_count()) counts["closure"] = *n;
  else counts["closure"] = nullptr;
  std::optional<CoverList> constrained;
  // Without family-level properties every closure member already satisfies
  // the block properties, so the closure count stands in.
  if (!solution.spec().has_global_constraints()) {
    counts["constrained_closure"] = counts["closure"];
  } else if (options.constrained) {
    constrained = solution.constrained_closure(options.closure_budget);
    counts["constrained_closure"] = constrained->size();
  }
  out["counts"] = std::move(counts);
  ojson uppers = ojson::array();
  for (const Cover& c : solution.root_covers()) {
    ojson entry;
    entry["cover"] = cover_json(c, obs);
    if (options.plans) {
      // Too many blocks for a reading alphabet: label by preimages instead.
      const bool readings = c.size() <= kMaxSymbols;
      entry["plan_labels"] = readings ? "readings" : "preimages";
      entry["plan"] = plan_json(readings ? extract_plan(solution, c, world) : extract_preimage_plan(solution, c, world));
    }
    uppers.push_back(std::move(entry));
  }
  out["upper_covers"] = std::move(uppers);
  if (constrained && solution.spec().has_global_constraints()) {
    ojson list = ojson::array();
    for (const Cover& c : *constrained) list.push_back(cover_json(c, obs));
    out["constrained_covers"] = std::move(list);
  }
  return out.dump(2) + "\n";
}

std::string export_report(const VerifyReport& report, const Plan& plan, const PGraph& world) {
  ojson out;
  out["schema"] = kReportSchema;
  out["verdict"] = report.solves ? "solves" : "fails";
  out["violation"] = report.solves ? ojson(nullptr) : ojson(to_string(report.violation));
  out["detail"] = report.detail;
  ojson states = ojson::array();
  for (const JointState& s : report.witness)
    states.push_back({{"plan", plan.graph.name(s.plan)}, {"world", world.name(s.world)}, {"depth", s.depth}});
  out["witness"] = {{"states", std::move(states)}, {"events", report.events}};
  if (report.bound) out["bound"] = *report.bound;
  return out.dump(2) + "\n";
}

}  // namespace coversynth
