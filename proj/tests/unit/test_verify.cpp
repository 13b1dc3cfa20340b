#include "doctest.h"

#include <map>
#include <random>

#include "coversynth/errors.hpp"
#include "coversynth/workspace.hpp"
#include "support/worlds.hpp"

using namespace coversynth;

namespace {

// Second implementation of the solves check: enumerates joint executions
// path by path. A path that revisits a joint state, or runs longer than the
// number of joint states, has no uniform bound.
class PathEnumerator {
 public:
  PathEnumerator(const Plan& plan, const PlanningProblem& p, const Cover& cover) : plan_(plan), p_(p), cover_(cover) {}

  bool solves() {
    limit_ = plan_.graph.vertex_count() * p_.world.vertex_count() + 1;
    for (VertexId v : plan_.graph.initial())
      for (VertexId w : p_.world.initial())
        if (!explore(v, w, 0)) return false;
    return true;
  }

 private:
  SymbolSet preimage(const Edge& e) const {
    SymbolSet out;
    e.labels.for_each([&](SymbolId r) {
      const std::size_t i = std::stoul(plan_.graph.observations().name(r));
      out |= cover_.blocks().at(i - 1);
    });
    return out;
  }

  SymbolSet world_action(const Edge& e) const {
    SymbolSet out;
    e.labels.for_each([&](SymbolId a) { out.insert(*p_.world.actions().find(plan_.graph.actions().name(a))); });
    return out;
  }

  bool explore(VertexId v, VertexId w, std::size_t depth) {
    const std::pair<VertexId, VertexId> here{v, w};
    if (depth > limit_ || std::find(path_.begin(), path_.end(), here) != path_.end()) return false;
    if (std::binary_search(plan_.termination.begin(), plan_.termination.end(), v))
      return std::binary_search(p_.goal.begin(), p_.goal.end(), w);
    path_.push_back(here);
    const bool ok = step(v, w, depth);
    path_.pop_back();
    return ok;
  }

  bool step(VertexId v, VertexId w, std::size_t depth) {
    const PGraph& pg = plan_.graph;
    const PGraph& wg = p_.world;
    std::vector<std::pair<VertexId, VertexId>> next;
    if (pg.kind(v) == VertexKind::action) {
      for (std::size_t pe : pg.out_edges(v)) {
        const SymbolSet u = world_action(pg.edges()[pe]);
        if (!u.subset_of(wg.outgoing_events(w))) return false;
        for (std::size_t we : wg.out_edges(w))
          if (u.intersects(wg.edges()[we].labels)) next.emplace_back(pg.edges()[pe].target, wg.edges()[we].target);
      }
    } else {
      for (std::size_t we : wg.out_edges(w)) {
        for (SymbolId y : wg.edges()[we].labels.members()) {
          bool read = false;
          for (std::size_t pe : pg.out_edges(v))
            if (preimage(pg.edges()[pe]).contains(y)) {
              read = true;
              next.emplace_back(pg.edges()[pe].target, wg.edges()[we].target);
            }
          // every block that may report y must lie inside one plan edge's preimage
          for (SymbolSet s : cover_.blocks()) {
            if (!s.contains(y)) continue;
            bool whole = false;
            for (std::size_t pe : pg.out_edges(v)) whole = whole || s.subset_of(preimage(pg.edges()[pe]));
            if (!whole) return false;
          }
          if (!read) return false;
        }
      }
    }
    if (next.empty()) return false;
    for (auto [v2, w2] : next)
      if (!explore(v2, w2, depth + 1)) return false;
    return true;
  }

  const Plan& plan_;
  const PlanningProblem& p_;
  const Cover& cover_;
  std::size_t limit_ = 0;
  std::vector<std::pair<VertexId, VertexId>> path_;
};

PlanningProblem one_step_world() {
  PGraph g(Alphabet({"u", "v"}), Alphabet({"y"}));
  const VertexId a = g.add_vertex(VertexKind::action, "a");
  const VertexId o = g.add_vertex(VertexKind::observation, "o");
  g.add_edge(a, o, SymbolSet{0});
  g.set_initial({a});
  return PlanningProblem{g, {o}};
}

Plan one_step_plan(const char* action) {
  PGraph g(Alphabet({action}), Alphabet());
  const VertexId a = g.add_vertex(VertexKind::action, "p0");
  const VertexId o = g.add_vertex(VertexKind::observation, "p1");
  g.add_edge(a, o, SymbolSet{0});
  g.set_initial({a});
  return Plan{g, {o}};
}

std::uint64_t binom(unsigned n, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("trivial plan at the goal solves") {
  PGraph w(Alphabet({"u"}), Alphabet({"y"}));
  const VertexId a = w.add_vertex(VertexKind::action, "a");
  w.set_initial({a});
  PGraph pg(Alphabet({"u"}), Alphabet());
  const VertexId p = pg.add_vertex(VertexKind::action, "p");
  pg.set_initial({p});
  const VerifyReport r = solves(Plan{pg, {p}}, PlanningProblem{w, {a}}, Cover::epsilon());
  CHECK(r.solves);
  CHECK(r.bound == std::size_t{0});
}

TEST_CASE("unavailable action fails condition 1") {
  const PlanningProblem p = one_step_world();
  CHECK(solves(one_step_plan("u"), p, Cover::epsilon()).solves);
  const VerifyReport r = solves(one_step_plan("v"), p, Cover::epsilon());
  CHECK_FALSE(r.solves);
  CHECK(r.violation == Condition::safety_action);
  REQUIRE(r.witness.size() == 1);
  CHECK(r.witness[0].world == 0);
  CHECK(r.witness[0].plan == 0);
}

TEST_CASE("branching on one block of two fails condition 2") {
  PGraph w(Alphabet({"u"}), Alphabet({"y1", "y2"}));
  const VertexId o = w.add_vertex(VertexKind::observation, "o");
  const VertexId a1 = w.add_vertex(VertexKind::action, "a1");
  const VertexId a2 = w.add_vertex(VertexKind::action, "a2");
  w.add_edge(o, a1, SymbolSet{0});
  w.add_edge(o, a2, SymbolSet{1});
  w.set_initial({o});
  const PlanningProblem p{w, {a1, a2}};
  const Cover c{SymbolSet{0}, SymbolSet{1}};

  PGraph pg(Alphabet({"u"}), Alphabet({"1", "2"}));
  const VertexId p0 = pg.add_vertex(VertexKind::observation, "p0");
  const VertexId p1 = pg.add_vertex(VertexKind::action, "p1");
  pg.add_edge(p0, p1, SymbolSet{0});
  pg.set_initial({p0});
  const VerifyReport r = solves(Plan{pg, {p1}}, p, c);
  CHECK_FALSE(r.solves);
  CHECK(r.violation == Condition::safety_observation);
  CHECK(r.detail.find("y2") != std::string::npos);

  pg.add_edge(p0, p1, SymbolSet{1});
  CHECK(solves(Plan{pg, {p1}}, p, c).solves);
  CHECK_THROWS_AS(solves(Plan{pg, {p1}}, p, Cover{SymbolSet{0, 1}}), MappingError);
}

TEST_CASE("termination outside the goal and unbounded cycles fail") {
  const ProblemFile f = builtin_scenario("corridor");
  const PGraph& w = f.problem.world;
  // Always move back: reaches the stairs, which emit nothing.
  PGraph pg(Alphabet({"f", "b"}), Alphabet({"1"}));
  const VertexId o = pg.add_vertex(VertexKind::observation, "look");
  const VertexId a = pg.add_vertex(VertexKind::action, "back");
  pg.add_edge(o, a, SymbolSet{0});
  pg.add_edge(a, o, SymbolSet{1});
  pg.set_initial({o});
  const Cover one{w.observation_events()};
  const VerifyReport r = solves(Plan{pg, {}}, f.problem, one);
  CHECK_FALSE(r.solves);
  CHECK(r.violation == Condition::liveness);

  const VerifyReport t = solves(Plan{pg, {a}}, f.problem, one);
  CHECK(t.violation == Condition::correctness);

  // d1, d2 -> forward, d3 -> back: shuttles between c2 and c3 forever
  PGraph loop(Alphabet({"f", "b"}), Alphabet({"1", "2", "3", "4"}));
  const VertexId lo = loop.add_vertex(VertexKind::observation, "look");
  const VertexId lf = loop.add_vertex(VertexKind::action, "fwd");
  const VertexId lb = loop.add_vertex(VertexKind::action, "back");
  const VertexId end = loop.add_vertex(VertexKind::action, "end");
  loop.add_edge(lo, lf, SymbolSet{0, 1});
  loop.add_edge(lo, lb, SymbolSet{2});
  loop.add_edge(lo, end, SymbolSet{3});
  loop.add_edge(lf, lo, SymbolSet{0});
  loop.add_edge(lb, lo, SymbolSet{1});
  loop.set_initial({lo});
  const Cover sing = Cover::singletons(w.observation_events());
  const VerifyReport u = solves(Plan{loop, {end}}, f.problem, sing);
  CHECK_FALSE(u.solves);
  CHECK(u.violation == Condition::boundedness);
}

TEST_CASE("malformed inputs are validation errors") {
  const PlanningProblem p = one_step_world();
  PGraph pg(Alphabet({"zz"}), Alphabet());
  const VertexId a = pg.add_vertex(VertexKind::action);
  const VertexId o = pg.add_vertex(VertexKind::observation);
  pg.add_edge(a, o, SymbolSet{0});
  pg.set_initial({a});
  CHECK_THROWS_AS(solves(Plan{pg, {o}}, p, Cover::epsilon()), ValidationError);
  PGraph wrong(Alphabet({"u"}), Alphabet());
  wrong.add_vertex(VertexKind::observation);
  wrong.set_initial({0});
  CHECK_THROWS_AS(solves(Plan{wrong, {0}}, p, Cover::epsilon()), ValidationError);
}

TEST_CASE("solves agrees with path enumeration") {
  std::mt19937 rng(61);
  std::size_t agree_pass = 0, agree_fail = 0;
  testing::WorldShape shape;
  shape.max_vertices = 5;
  for (int i = 0; i < 600; ++i) {
    const PlanningProblem p = testing::random_world(rng, shape);
    const SymbolSet y = p.world.observation_events();
    std::vector<std::pair<Plan, Cover>> cases;
    const SolutionSet s = synthesize(build_tree(p));
    for (const Cover& c : s.root_covers()) {
      const Plan good = extract_plan(s, c, p.world);
      cases.emplace_back(good, c);
      std::uniform_int_distribution<std::size_t> e(0, good.graph.edges().size() + 1);
      std::uniform_int_distribution<std::size_t> t(0, good.graph.vertex_count() + 1);
      cases.emplace_back(testing::edit_plan(good, e(rng), t(rng)), c);
    }
    if (!y.empty()) {
      const Cover c = testing::random_cover(rng, y);
      for (int k = 0; k < 3; ++k) cases.emplace_back(testing::random_plan(rng, p.world, c.size()), c);
    }
    for (const auto& [plan, cover] : cases) {
      const bool a = solves(plan, p, cover).solves;
      const bool b = PathEnumerator(plan, p, cover).solves();
      CHECK(a == b);
      if (a == b) ++(a ? agree_pass : agree_fail);
    }
  }
  CHECK(agree_pass > 100);
  CHECK(agree_fail > 100);
}

TEST_CASE("sensor-map route agrees with the cover route") {
  std::mt19937 rng(67);
  for (int i = 0; i < 200; ++i) {
    const PlanningProblem p = testing::random_world(rng);
    const SymbolSet y = p.world.observation_events();
    if (y.empty()) continue;
    const Cover c = testing::random_cover(rng, y);
    const SensorMap h = to_sensor_map(c);
    const Plan plan = testing::random_plan(rng, p.world, c.size());
    CHECK(solves(plan, p, c).solves == solves(plan, p, h).solves);
  }
}

TEST_CASE("refining a partition keeps plans solving") {
  std::mt19937 rng(71);
  std::size_t refined = 0;
  for (int i = 0; i < 300; ++i) {
    const PlanningProblem p = testing::random_world(rng);
    const SolutionSet s = synthesize(build_tree(p));
    for (const Cover& c : testing::lifted_closure(s, p)) {
      if (!c.is_partition()) continue;
      const Plan plan = extract_plan(s, c, p.world);
      REQUIRE(solves(plan, p, c).solves);
      // split every block into singletons; reading i becomes its members' readings
      const Cover fine = Cover::singletons(c.domain());
      Alphabet r;
      for (std::size_t k = 1; k <= fine.size(); ++k) r.intern(reading_name(k));
      PGraph g(plan.graph.actions(), r);
      for (VertexId v = 0; v < plan.graph.vertex_count(); ++v) g.add_vertex(plan.graph.kind(v));
      for (const Edge& e : plan.graph.edges()) {
        Edge m = e;
        if (e.label_kind == VertexKind::observation) {
          m.labels = SymbolSet{};
          e.labels.for_each([&](SymbolId reading) {
            const SymbolSet block = c.blocks()[std::stoul(plan.graph.observations().name(reading)) - 1];
            for (std::size_t k = 0; k < fine.size(); ++k)
              if (fine.blocks()[k].subset_of(block)) m.labels.insert(static_cast<SymbolId>(k));
          });
        }
        g.add_edge(m);
      }
      g.set_initial(plan.graph.initial());
      CHECK(solves(Plan{g, plan.termination}, p, fine).solves);
      ++refined;
    }
  }
  CHECK(refined > 50);
}

TEST_CASE("enumerate_covers counts") {
  CHECK(enumerate_covers(SymbolSet{0}).size() == 1);
  CHECK(enumerate_covers(SymbolSet{0, 1}).size() == 5);
  CHECK(enumerate_covers(SymbolSet{0, 1, 2}).size() == 109);
  // inclusion–exclusion over the 2^n - 1 non-empty blocks
  for (unsigned n = 1; n <= 4; ++n) {
    std::int64_t total = 0;
    for (unsigned k = 0; k <= n; ++k) {
      const std::int64_t term = static_cast<std::int64_t>(binom(n, k)) << ((1U << (n - k)) - 1);
      total += (k % 2 == 0) ? term : -term;
    }
    CHECK(enumerate_covers(SymbolSet::first(n)).size() == static_cast<std::size_t>(total));
  }
  CHECK(enumerate_covers(SymbolSet{0, 1, 2}, 1).size() == 1);
  CHECK(enumerate_covers(SymbolSet{}).size() == 1);
  CHECK_THROWS_AS(enumerate_covers(SymbolSet::first(5)), ResourceError);
}

TEST_CASE("oracle basics") {
  // goal unreachable
  PGraph g(Alphabet({"u"}), Alphabet({"y"}));
  const VertexId o = g.add_vertex(VertexKind::observation, "o");
  const VertexId a = g.add_vertex(VertexKind::action, "a");
  const VertexId o2 = g.add_vertex(VertexKind::observation, "o2");
  g.add_edge(o, a, SymbolSet{0});
  g.add_edge(a, o, SymbolSet{0});
  g.set_initial({o});
  CHECK(oracle(PlanningProblem{g, {o2}}).empty());

  // sensorless chain: any sensor works
  PGraph c(Alphabet({"u"}), Alphabet({"y1", "y2"}));
  const VertexId s0 = c.add_vertex(VertexKind::observation, "s0");
  const VertexId s1 = c.add_vertex(VertexKind::observation, "s1");
  const VertexId m0 = c.add_vertex(VertexKind::action, "m0");
  const VertexId m1 = c.add_vertex(VertexKind::action, "m1");
  const VertexId t = c.add_vertex(VertexKind::observation, "t");
  c.add_edge(s0, m0, SymbolSet{0});
  c.add_edge(s1, m1, SymbolSet{1});
  c.add_edge(m0, t, SymbolSet{0});
  c.add_edge(m1, t, SymbolSet{0});
  c.set_initial({s0, s1});
  CHECK(oracle(PlanningProblem{c, {t}}) == enumerate_covers(SymbolSet{0, 1}));

  OracleBounds tight;
  tight.max_world_vertices = 2;
  CHECK_THROWS_AS(oracle(PlanningProblem{c, {t}}, tight), ResourceError);
}

TEST_CASE("oracle output is downward closed") {
  std::mt19937 rng(73);
  for (int i = 0; i < 150; ++i) {
    const PlanningProblem p = testing::random_world(rng);
    const CoverList found = oracle(p);
    for (const Cover& c : found)
      for (const Cover& sub : subcovers(c)) CHECK(found.contains(sub));
  }
}
