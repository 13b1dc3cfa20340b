#pragma once

// Random small worlds and brute-force helpers shared by the unit and
// acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include "coversynth/belief.hpp"
#include "coversynth/cover.hpp"
#include "coversynth/pgraph.hpp"
#include "coversynth/synth.hpp"
#include "coversynth/verify.hpp"

namespace coversynth::testing {

struct WorldShape {
  std::size_t max_vertices = 6;
  std::size_t actions = 2;
  std::size_t observations = 3;
};

inline Alphabet make_alphabet(const char* prefix, std::size_t n) {
  Alphabet a;
  for (std::size_t i = 1; i <= n; ++i) a.intern(prefix + std::to_string(i));
  return a;
}

/// Random bipartite world with a non-empty goal. Some vertices may be stuck
/// and some transitions nondeterministic.
inline PlanningProblem random_world(std::mt19937& rng, const WorldShape& shape = {}) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  const std::size_t total = 2 + pick(shape.max_vertices - 1);
  const std::size_t n_obs = 1 + pick(total - 1);
  PGraph g(make_alphabet("a", shape.actions), make_alphabet("y", shape.observations));
  std::vector<VertexId> obs, act;
  for (std::size_t i = 0; i < n_obs; ++i) obs.push_back(g.add_vertex(VertexKind::observation, "w" + std::to_string(i)));
  for (std::size_t i = n_obs; i < total; ++i) act.push_back(g.add_vertex(VertexKind::action, "w" + std::to_string(i)));

  const std::uint64_t ymask = (std::uint64_t{1} << shape.observations) - 1;
  if (!act.empty()) {
    for (VertexId w : obs) {
      if (coin(0.08)) continue;  // stuck
      const std::size_t k = 1 + pick(2);
      for (std::size_t e = 0; e < k; ++e) {
        SymbolSet labels(1 + pick(ymask));
        g.add_edge(w, act[pick(act.size())], labels);
      }
    }
  }
  for (VertexId w : act) {
    for (SymbolId a = 0; a < shape.actions; ++a) {
      if (coin(0.3)) continue;
      g.add_edge(w, obs[pick(obs.size())], SymbolSet::single(a));
      if (coin(0.25)) g.add_edge(w, obs[pick(obs.size())], SymbolSet::single(a));
    }
  }
  const bool start_obs = act.empty() || coin(0.6);
  const auto& pool = start_obs ? obs : act;
  std::vector<VertexId> init{pool[pick(pool.size())]};
  if (coin(0.5)) init.push_back(pool[pick(pool.size())]);
  g.set_initial(init);

  std::vector<VertexId> goal{static_cast<VertexId>(pick(total))};
  if (coin(0.5)) goal.push_back(static_cast<VertexId>(pick(total)));
  std::sort(goal.begin(), goal.end());
  goal.erase(std::unique(goal.begin(), goal.end()), goal.end());
  return PlanningProblem{std::move(g), std::move(goal)};
}

/// Covers of Y(W) admitted by the solution (the downward closure lifted to
/// the full observation domain).
inline CoverList lifted_closure(const SolutionSet& s, const PlanningProblem& p, std::size_t cap = 4) {
  CoverList out;
  for (const Cover& c : enumerate_covers(p.world.observation_events(), std::nullopt, cap))
    if (s.admits(c)) out.insert(c);
  return out;
}

/// Equal-domain subcovers of every root cover (no lifting).
inline CoverList downward_closure(const CoverList& roots) {
  CoverList out;
  for (const Cover& r : roots)
    for (Cover& c : subcovers(r)) out.insert(std::move(c));
  return out;
}


/// Random plan over readings "1".."readings" for `world`, shaped to match the
/// kind of the world's initial vertices. Mostly fails; useful for verdict
/// comparisons.
inline Plan random_plan(std::mt19937& rng, const PGraph& world, std::size_t readings, std::size_t max_vertices = 5) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
  Alphabet r;
  for (std::size_t i = 1; i <= readings; ++i) r.intern(reading_name(i));
  PGraph g(world.actions(), r);
  const std::size_t n = 1 + pick(max_vertices);
  std::vector<VertexId> act, obs;
  for (std::size_t i = 0; i < n; ++i) {
    const VertexKind k = i == 0 ? world.kind(world.initial().front()) : (coin(0.5) ? VertexKind::action : VertexKind::observation);
    const VertexId v = g.add_vertex(k, "p" + std::to_string(i));
    (k == VertexKind::action ? act : obs).push_back(v);
  }
  for (VertexId v : act) {
    if (obs.empty() || coin(0.2)) continue;
    const std::size_t k = coin(0.2) ? 2 : 1;
    for (std::size_t e = 0; e < k; ++e)
      g.add_edge(v, obs[pick(obs.size())], SymbolSet::single(static_cast<SymbolId>(pick(world.actions().size()))));
  }
  for (VertexId v : obs) {
    if (act.empty() || coin(0.15)) continue;
    const std::size_t k = 1 + pick(2);
    for (std::size_t e = 0; e < k; ++e) g.add_edge(v, act[pick(act.size())], SymbolSet(1 + pick((std::uint64_t{1} << readings) - 1)));
  }
  g.set_initial({0});
  std::vector<VertexId> term;
  for (VertexId v = 0; v < n; ++v)
    if (coin(0.35)) term.push_back(v);
  return Plan{std::move(g), std::move(term)};
}

/// Copy of `plan` without edge `drop` (or unchanged when out of range) and
/// with termination membership of `toggle` flipped (when in range).
inline Plan edit_plan(const Plan& plan, std::size_t drop, std::size_t toggle) {
  PGraph g(plan.graph.actions(), plan.graph.observations());
  for (VertexId v = 0; v < plan.graph.vertex_count(); ++v) g.add_vertex(plan.graph.kind(v), plan.graph.name(v));
  for (std::size_t i = 0; i < plan.graph.edges().size(); ++i)
    if (i != drop) g.add_edge(plan.graph.edges()[i]);
  g.set_initial(plan.graph.initial());
  std::vector<VertexId> term = plan.termination;
  if (toggle < plan.graph.vertex_count()) {
    const auto v = static_cast<VertexId>(toggle);
    if (auto it = std::find(term.begin(), term.end(), v); it != term.end()) term.erase(it);
    else term.insert(std::upper_bound(term.begin(), term.end(), v), v);
  }
  return Plan{std::move(g), std::move(term)};
}

/// Random cover of `domain`: random non-empty blocks until the union is full.
inline Cover random_cover(std::mt19937& rng, SymbolSet domain) {
  std::vector<SymbolSet> subsets;
  domain.for_each_subset([&](SymbolSet s) { subsets.push_back(s); });
  std::vector<SymbolSet> blocks;
  SymbolSet covered;
  std::uniform_int_distribution<std::size_t> pick(0, subsets.size() - 1);
  while (covered != domain) {
    blocks.push_back(subsets[pick(rng)]);
    covered |= blocks.back();
  }
  if (std::bernoulli_distribution(0.4)(rng)) blocks.push_back(subsets[pick(rng)]);
  return Cover(std::move(blocks));
}

}  // namespace coversynth::testing
