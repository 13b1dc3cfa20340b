#include "doctest.h"

#include <random>
#include <set>

#include "coversynth/errors.hpp"
#include "coversynth/workspace.hpp"
#include "support/worlds.hpp"

using namespace coversynth;

namespace {

// Every root-to-leaf path, checked for repeated state-sets among non-dummy vertices.
bool paths_distinct(const BeliefTree& t, std::size_t v, std::set<StateSet>& seen) {
  const BeliefVertex& b = t.vertex(v);
  if (b.dummy) return true;
  if (!seen.insert(b.states).second) return false;
  bool ok = true;
  for (const BeliefEdge& e : b.children) ok = ok && paths_distinct(t, e.child, seen);
  seen.erase(b.states);
  return ok;
}

PlanningProblem cycle_world() {
  PGraph g(Alphabet({"u"}), Alphabet({"y"}));
  const VertexId a = g.add_vertex(VertexKind::action, "a");
  const VertexId b = g.add_vertex(VertexKind::observation, "b");
  g.add_edge(a, b, SymbolSet{0});
  const VertexId far = g.add_vertex(VertexKind::observation, "far");
  g.add_edge(b, a, SymbolSet{0});
  g.set_initial({a});
  return PlanningProblem{g, {far}};
}

}  // namespace

TEST_CASE("track root belief") {
  const ProblemFile f = builtin_scenario("track-cyclic");
  const BeliefTree t = build_tree(f.problem, f.spec);
  const PGraph& w = f.problem.world;
  CHECK(t.root().states == StateSet{w.vertex("s1"), w.vertex("s3")});
  CHECK(t.root().kind == VertexKind::observation);
}

TEST_CASE("initial states inside the goal give a single goal root") {
  PlanningProblem p = cycle_world();
  p.goal = {0};
  const BeliefTree t = build_tree(p);
  CHECK(t.size() == 1);
  CHECK(t.root().goal);
  CHECK(t.root().children.empty());
}

TEST_CASE("a revisited belief routes to the dummy") {
  const BeliefTree t = build_tree(cycle_world());
  REQUIRE(t.dummy() != BeliefTree::npos);
  REQUIRE(t.root().children.size() == 1);
  const BeliefVertex& obs = t.vertex(t.root().children[0].child);
  CHECK(obs.states == StateSet{1});
  REQUIRE(obs.children.size() == 1);
  CHECK(obs.children[0].child == t.dummy());
  CHECK(t.vertex(t.dummy()).dummy);
  CHECK_FALSE(t.vertex(t.dummy()).goal);
}

TEST_CASE("belief image") {
  const ProblemFile f = builtin_scenario("track-cyclic");
  const PGraph& w = f.problem.world;
  const Alphabet& y = w.observations();
  const StateSet s5{w.vertex("s5"), w.vertex("s6")};
  CHECK(belief_image(w, s5, y.set_of({"o"})) == StateSet{w.vertex("m5"), w.vertex("m6")});
  CHECK(belief_image(w, s5, y.set_of({"o5"})) == StateSet{w.vertex("m5")});
  CHECK(belief_image(w, {w.vertex("m1")}, w.actions().set_of({"f"})) == StateSet{w.vertex("s2")});
}

TEST_CASE("structural tree properties on random worlds") {
  std::mt19937 rng(31);
  for (int i = 0; i < 300; ++i) {
    const PlanningProblem p = testing::random_world(rng);
    const BeliefTree t = build_tree(p);
    CHECK(t == build_tree(p));
    std::set<StateSet> seen;
    CHECK(paths_distinct(t, 0, seen));
    for (std::size_t v = 0; v < t.size(); ++v) {
      const BeliefVertex& b = t.vertex(v);
      if (b.dummy || b.goal) {
        CHECK(b.children.empty());
        continue;
      }
      // U(W) is the intersection, Y(W) the union of the members' events.
      SymbolSet events = b.kind == VertexKind::action ? p.world.outgoing_events(b.states.front()) : SymbolSet{};
      for (VertexId s : b.states) {
        CHECK(p.world.kind(s) == b.kind);
        if (b.kind == VertexKind::action) events &= p.world.outgoing_events(s);
        else events |= p.world.outgoing_events(s);
      }
      CHECK(b.events == events);
      for (const BeliefEdge& e : b.children) {
        const BeliefVertex& c = t.vertex(e.child);
        if (!c.dummy) CHECK(c.kind == opposite(b.kind));
        if (b.kind == VertexKind::action) CHECK(e.label.size() == 1);
        CHECK(e.label.subset_of(b.events));
      }
      if (b.kind == VertexKind::observation && !b.dead_end) {
        // one child per non-empty G ⊆ Y(W)
        CHECK(b.children.size() == (std::size_t{1} << b.events.size()) - 1);
      }
    }
  }
}

TEST_CASE("contiguity restricts observation expansion") {
  const ProblemFile f = builtin_scenario("track-cyclic");
  const BeliefTree t = build_tree(f.problem, f.spec);
  for (const BeliefVertex& b : t.vertices())
    if (b.kind == VertexKind::observation && !b.dummy)
      for (const BeliefEdge& e : b.children) CHECK(f.spec.neighbor->connected(e.label));
}

TEST_CASE("tree budgets") {
  const ProblemFile f = builtin_scenario("track-cyclic");
  BeliefConfig small;
  small.max_vertices = 3;
  CHECK_THROWS_WITH_AS(build_tree(f.problem, f.spec, nullptr, small), doctest::Contains("max-tree-vertices"),
                       ResourceError);
  BeliefConfig shallow;
  shallow.max_depth = 2;
  CHECK_THROWS_AS(build_tree(f.problem, f.spec, nullptr, shallow), ResourceError);
}

TEST_CASE("stipulations prune beliefs") {
  const ProblemFile f = builtin_scenario("corridor");
  const PGraph& w = f.problem.world;
  const StipulationFormula hide = parse_stipulation("disjoint-from({c2})", w);
  const BeliefTree t = build_tree(f.problem, f.spec, &hide);
  CHECK(t.root_violates_stipulation());

  const StipulationFormula vague = parse_stipulation("not(subset-of({c1}))", w);
  const BeliefTree v = build_tree(f.problem, f.spec, &vague);
  CHECK(v.action_subsets());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const BeliefVertex& b = v.vertex(i);
    if (!b.dummy) CHECK(vague.eval(b.states));
  }
}

TEST_CASE("action subsets expand every non-empty subset") {
  const ProblemFile f = builtin_scenario("corridor");
  BeliefConfig cfg;
  cfg.action_subsets = true;
  const BeliefTree t = build_tree(f.problem, f.spec, nullptr, cfg);
  bool saw_pair = false;
  for (const BeliefVertex& b : t.vertices())
    if (b.kind == VertexKind::action && !b.dummy && !b.goal && !b.dead_end) {
      CHECK(b.children.size() == (std::size_t{1} << b.events.size()) - 1);
      for (const BeliefEdge& e : b.children) saw_pair = saw_pair || e.label.size() == 2;
    }
  CHECK(saw_pair);
}
