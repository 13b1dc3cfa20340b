#include "coversynth/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "coversynth/belief.hpp"
#include "coversynth/errors.hpp"

namespace coversynth {

const char* to_string(Condition c) {
  switch (c) {
    case Condition::none: return "none";
    case Condition::safety_action: return "safety-action";
    case Condition::safety_observation: return "safety-observation";
    case Condition::correctness: return "correctness";
    case Condition::liveness: return "liveness";
    case Condition::boundedness: return "boundedness";
  }
  return "?";
}

namespace {

// Plan with every edge label translated into world event ids: actions by
// name, readings to their observation preimages. `blocks` are the distinct
// preimages of single readings.
struct Translated {
  std::vector<SymbolSet> labels;
  std::vector<SymbolSet> blocks;
};

void check_inputs(const Plan& plan, const PlanningProblem& problem) {
  if (auto r = validate(problem); !r.ok()) throw ValidationError("invalid planning problem:\n" + r.describe());
  if (auto r = validate(plan); !r.ok()) throw ValidationError("invalid plan:\n" + r.describe());
  const auto& pi = plan.graph.initial();
  const auto& wi = problem.world.initial();
  if (plan.graph.kind(pi.front()) != problem.world.kind(wi.front()))
    throw ValidationError("plan and world initial vertices differ in kind");
}

SymbolSet translate_actions(const PGraph& plan, const PGraph& world, SymbolSet labels) {
  SymbolSet out;
  labels.for_each([&](SymbolId a) {
    const std::string& n = plan.actions().name(a);
    const auto id = world.actions().find(n);
    if (!id) throw ValidationError("plan action '" + n + "' is not a world action");
    out.insert(*id);
  });
  return out;
}

template <class ReadingPreimage>
Translated translate(const Plan& plan, const PlanningProblem& problem, ReadingPreimage&& preimage) {
  Translated t;
  for (const Edge& e : plan.graph.edges()) {
    if (e.label_kind == VertexKind::action) {
      t.labels.push_back(translate_actions(plan.graph, problem.world, e.labels));
    } else {
      SymbolSet pre;
      e.labels.for_each([&](SymbolId r) { pre |= preimage(plan.graph.observations().name(r)); });
      t.labels.push_back(pre);
    }
  }
  return t;
}

class JointSearch {
 public:
  JointSearch(const Plan& plan, const PlanningProblem& problem, Translated t)
      : plan_(plan), problem_(problem), world_(problem.world), t_(std::move(t)) {}

  VerifyReport run() {
    for (VertexId v : plan_.graph.initial())
      for (VertexId w : world_.initial()) visit(v, w, npos, {});
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      expand(i);
      if (report_.violation != Condition::none) return report_;
    }
    if (auto cyc = find_cycle()) {
      fail(*cyc, Condition::boundedness, "a joint execution can repeat without terminating");
      return report_;
    }
    report_.solves = true;
    report_.bound = longest();
    return report_;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Node {
    VertexId v, w;
    std::size_t parent, depth;
    std::string event;
    std::vector<std::size_t> next;
  };

  std::size_t visit(VertexId v, VertexId w, std::size_t parent, std::string event) {
    auto [it, fresh] = index_.try_emplace({v, w}, nodes_.size());
    if (fresh) {
      const std::size_t depth = parent == npos ? 0 : nodes_[parent].depth + 1;
      nodes_.push_back({v, w, parent, depth, std::move(event), {}});
    }
    return it->second;
  }

  void fail(std::size_t at, Condition c, std::string detail) {
    report_.solves = false;
    report_.violation = c;
    report_.detail = std::move(detail);
    std::vector<std::size_t> chain;
    for (std::size_t i = at; i != npos; i = nodes_[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t i : chain) {
      report_.witness.push_back({nodes_[i].v, nodes_[i].w, nodes_[i].depth});
      if (nodes_[i].parent != npos) report_.events.push_back(nodes_[i].event);
    }
  }

  bool terminated(std::size_t i) const { return plan_.terminates(nodes_[i].v); }

  void expand(std::size_t i) {
    const VertexId v = nodes_[i].v;
    const VertexId w = nodes_[i].w;
    if (terminated(i)) {
      if (!problem_.in_goal(w)) fail(i, Condition::correctness, "plan terminates at non-goal " + world_.name(w));
      return;
    }
    const auto plan_edges = plan_.graph.out_edges(v);
    const SymbolSet available = world_.outgoing_events(w);
    std::vector<std::size_t> next;
    if (plan_.graph.kind(v) == VertexKind::action) {
      for (std::size_t pe : plan_edges) {
        const SymbolSet missing = t_.labels[pe] - available;
        if (!missing.empty()) {
          fail(i, Condition::safety_action,
               "action " + world_.actions().name(missing.front()) + " unavailable at " + world_.name(w));
          return;
        }
      }
      for (std::size_t pe : plan_edges)
        for (std::size_t we : world_.out_edges(w))
          (t_.labels[pe] & world_.edges()[we].labels).for_each([&](SymbolId u) {
            next.push_back(visit(plan_.graph.edges()[pe].target, world_.edges()[we].target, i, world_.actions().name(u)));
          });
    } else {
      std::string problem;
      available.for_each([&](SymbolId y) {
        if (!problem.empty()) return;
        const bool read = std::any_of(plan_edges.begin(), plan_edges.end(),
                                      [&](std::size_t pe) { return t_.labels[pe].contains(y); });
        if (!read) {
          problem = "observation " + world_.observations().name(y) + " at " + world_.name(w) + " is not read";
          return;
        }
        for (SymbolSet s : t_.blocks) {
          if (!s.contains(y)) continue;
          const bool whole = std::any_of(plan_edges.begin(), plan_edges.end(),
                                         [&](std::size_t pe) { return s.subset_of(t_.labels[pe]); });
          if (!whole) {
            problem = "reading " + world_.observations().format(s) + " of " + world_.observations().name(y) + " at " +
                      world_.name(w) + " has no plan edge";
            return;
          }
        }
      });
      if (!problem.empty()) {
        fail(i, Condition::safety_observation, problem);
        return;
      }
      for (std::size_t we : world_.out_edges(w))
        world_.edges()[we].labels.for_each([&](SymbolId y) {
          for (std::size_t pe : plan_edges)
            if (t_.labels[pe].contains(y))
              next.push_back(
                  visit(plan_.graph.edges()[pe].target, world_.edges()[we].target, i, world_.observations().name(y)));
        });
    }
    if (next.empty()) {
      fail(i, Condition::liveness, "no continuation at " + world_.name(w));
      return;
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    nodes_[i].next = std::move(next);
  }

  std::optional<std::size_t> find_cycle() {
    enum : std::uint8_t { white, grey, black };
    std::vector<std::uint8_t> color(nodes_.size(), white);
    for (std::size_t root = 0; root < nodes_.size(); ++root) {
      if (color[root] != white) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
      color[root] = grey;
      while (!stack.empty()) {
        auto& [n, k] = stack.back();
        if (k < nodes_[n].next.size()) {
          const std::size_t m = nodes_[n].next[k++];
          if (color[m] == grey) return m;
          if (color[m] == white) {
            color[m] = grey;
            stack.emplace_back(m, 0);
          }
        } else {
          color[n] = black;
          stack.pop_back();
        }
      }
    }
    return std::nullopt;
  }

  std::size_t longest() {
    std::vector<std::optional<std::size_t>> memo(nodes_.size());
    auto rec = [&](auto&& self, std::size_t n) -> std::size_t {
      if (memo[n]) return *memo[n];
      std::size_t best = 0;
      for (std::size_t m : nodes_[n].next) best = std::max(best, self(self, m) + 1);
      memo[n] = best;
      return best;
    };
    std::size_t best = 0;
    for (VertexId v : plan_.graph.initial())
      for (VertexId w : world_.initial()) best = std::max(best, rec(rec, index_.at({v, w})));
    return best;
  }

  const Plan& plan_;
  const PlanningProblem& problem_;
  const PGraph& world_;
  Translated t_;
  std::vector<Node> nodes_;
  std::map<std::pair<VertexId, VertexId>, std::size_t> index_;
  VerifyReport report_;
};

}  // namespace

VerifyReport solves(const Plan& plan, const PlanningProblem& problem, const Cover& cover) {
  check_inputs(plan, problem);
  auto t = translate(plan, problem, [&](const std::string& reading) {
    std::size_t i = 0;
    const bool numeric = !reading.empty() && std::all_of(reading.begin(), reading.end(), ::isdigit);
    if (numeric) i = std::stoul(reading);
    if (i == 0 || i > cover.size()) throw MappingError("reading '" + reading + "' does not index a cover block");
    return cover.blocks()[i - 1];
  });
  t.blocks = cover.blocks();
  return JointSearch(plan, problem, std::move(t)).run();
}

VerifyReport solves(const Plan& plan, const PlanningProblem& problem, const SensorMap& h) {
  check_inputs(plan, problem);
  const auto pre = h.preimages();
  auto t = translate(plan, problem, [&](const std::string& reading) {
    const auto it = pre.find(reading);
    if (it == pre.end()) throw MappingError("reading '" + reading + "' is not produced by the sensor map");
    return it->second;
  });
  for (const auto& [reading, s] : pre) t.blocks.push_back(s);
  return JointSearch(plan, problem, std::move(t)).run();
}

VerifyReport solves_by_preimage(const Plan& plan, const PlanningProblem& problem, const Cover& cover) {
  check_inputs(plan, problem);
  const Alphabet& y = problem.world.observations();
  auto t = translate(plan, problem, [&](const std::string& name) {
    const auto id = y.find(name);
    if (!id) throw MappingError("observation '" + name + "' is not a world observation");
    return SymbolSet::single(*id);
  });
  t.blocks = cover.blocks();
  return JointSearch(plan, problem, std::move(t)).run();
}

CoverList enumerate_covers(SymbolSet domain, std::optional<std::size_t> max_blocks, std::size_t hard_cap) {
  if (domain.size() > hard_cap)
    throw ResourceError("max-enumerate-domain", std::to_string(domain.size()) + " observations, cap " +
                                                    std::to_string(hard_cap));
  std::vector<SymbolSet> candidates;
  domain.for_each_subset([&](SymbolSet s) { candidates.push_back(s); });
  return enumerate_covers(candidates, domain, max_blocks, candidates.size());
}

CoverList enumerate_covers(const std::vector<SymbolSet>& candidates, SymbolSet domain,
                           std::optional<std::size_t> max_blocks, std::size_t max_candidates) {
  if (candidates.size() > max_candidates)
    throw ResourceError("max-enumerate-blocks", std::to_string(candidates.size()) + " candidate blocks, cap " +
                                                    std::to_string(max_candidates));
  if (domain.empty()) return CoverList{Cover::epsilon()};
  std::vector<SymbolSet> usable;
  for (SymbolSet s : candidates)
    if (!s.empty() && s.subset_of(domain)) usable.push_back(s);
  std::vector<SymbolSet> suffix(usable.size() + 1);
  for (std::size_t i = usable.size(); i-- > 0;) suffix[i] = suffix[i + 1] | usable[i];
  std::vector<Cover> out;
  std::vector<SymbolSet> chosen;
  auto rec = [&](auto&& self, std::size_t i, SymbolSet covered) -> void {
    if ((covered | suffix[i]) != domain) return;
    if (i == usable.size()) {
      out.emplace_back(chosen);
      return;
    }
    if (!max_blocks || chosen.size() < *max_blocks) {
      chosen.push_back(usable[i]);
      self(self, i + 1, covered | usable[i]);
      chosen.pop_back();
    }
    self(self, i + 1, covered);
  };
  rec(rec, 0, SymbolSet{});
  return CoverList(std::move(out));
}

namespace {

class BeliefFixpoint {
 public:
  BeliefFixpoint(const PlanningProblem& problem, const Cover& cover, const OracleBounds& bounds,
                 const StipulationFormula* stipulation)
      : problem_(problem), world_(problem.world), cover_(cover), bounds_(bounds), stipulation_(stipulation) {}

  bool solvable() {
    intern(world_.initial());
    for (std::size_t i = 0; i < nodes_.size(); ++i) expand(i);
    std::vector<char> ok(nodes_.size(), 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = nodes_.size(); i-- > 0;) {
        if (ok[i]) continue;
        const Node& n = nodes_[i];
        const bool now = n.goal || std::any_of(n.options.begin(), n.options.end(), [&](const auto& opt) {
                           return std::all_of(opt.begin(), opt.end(), [&](std::size_t c) { return ok[c] != 0; });
                         });
        if (now) {
          ok[i] = 1;
          changed = true;
        }
      }
    }
    return ok[0] != 0;
  }

 private:
  struct Node {
    StateSet states;
    bool goal = false;
    bool dead = false;
    std::vector<std::vector<std::size_t>> options;  // any option whose children all succeed
  };

  std::size_t intern(const StateSet& s) {
    auto [it, fresh] = index_.try_emplace(s, nodes_.size());
    if (fresh) {
      if (nodes_.size() >= bounds_.max_beliefs)
        throw ResourceError("max-oracle-beliefs", std::to_string(bounds_.max_beliefs) + " beliefs");
      Node n;
      n.states = s;
      n.dead = stipulation_ && !stipulation_->eval(s);
      n.goal = !n.dead && std::all_of(s.begin(), s.end(), [&](VertexId w) { return problem_.in_goal(w); });
      nodes_.push_back(std::move(n));
    }
    return it->second;
  }

  void expand(std::size_t i) {
    if (nodes_[i].goal || nodes_[i].dead) return;
    const StateSet states = nodes_[i].states;
    std::vector<std::vector<std::size_t>> options;
    if (world_.kind(states.front()) == VertexKind::action) {
      SymbolSet common = world_.actions().all();
      for (VertexId w : states) common &= world_.outgoing_events(w);
      if (bounds_.action_subsets) {
        common.for_each_subset([&](SymbolSet a) { options.push_back({intern(belief_image(world_, states, a))}); });
      } else {
        common.for_each([&](SymbolId a) {
          options.push_back({intern(belief_image(world_, states, SymbolSet::single(a)))});
        });
      }
    } else {
      SymbolSet y;
      for (VertexId w : states) {
        const SymbolSet a = world_.outgoing_events(w);
        if (a.empty()) return;
        y |= a;
      }
      std::vector<std::size_t> all;
      const Cover seen = project(cover_, y);
      for (SymbolSet b : seen.blocks()) all.push_back(intern(belief_image(world_, states, b)));
      options.push_back(std::move(all));
    }
    nodes_[i].options = std::move(options);
  }

  const PlanningProblem& problem_;
  const PGraph& world_;
  const Cover& cover_;
  const OracleBounds& bounds_;
  const StipulationFormula* stipulation_;
  std::vector<Node> nodes_;
  std::map<StateSet, std::size_t> index_;
};

void check_oracle_inputs(const PlanningProblem& problem, const OracleBounds& bounds) {
  if (auto r = validate(problem); !r.ok()) throw ValidationError("invalid planning problem:\n" + r.describe());
  if (problem.world.vertex_count() > bounds.max_world_vertices)
    throw ResourceError("max-oracle-vertices", std::to_string(problem.world.vertex_count()) + " world vertices");
  if (!bounds.block_filter && problem.world.observation_events().size() > bounds.max_observations)
    throw ResourceError("max-oracle-observations",
                        std::to_string(problem.world.observation_events().size()) + " observations");
}

}  // namespace

bool oracle_admits(const PlanningProblem& problem, const Cover& cover, const OracleBounds& bounds,
                   const StipulationFormula* stipulation) {
  check_oracle_inputs(problem, bounds);
  return BeliefFixpoint(problem, cover, bounds, stipulation).solvable();
}

CoverList oracle(const PlanningProblem& problem, const OracleBounds& bounds, const StipulationFormula* stipulation) {
  check_oracle_inputs(problem, bounds);
  const SymbolSet y = problem.world.observation_events();
  const CoverList candidates = bounds.block_filter
                                   ? enumerate_covers(generate_blocks(y, *bounds.block_filter), y)
                                   : enumerate_covers(y, std::nullopt, bounds.max_observations);
  CoverList out;
  for (const Cover& c : candidates)
    if (BeliefFixpoint(problem, c, bounds, stipulation).solvable()) out.insert(c);
  return out;
}

}  // namespace coversynth
