#include "coversynth/synth.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "coversynth/errors.hpp"

namespace coversynth {

std::vector<std::vector<std::size_t>> covering_combinations(const std::vector<SymbolSet>& labels, SymbolSet target,
                                                            bool minimal_only) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<SymbolSet> suffix(labels.size() + 1);
  for (std::size_t i = labels.size(); i-- > 0;) suffix[i] = suffix[i + 1] | labels[i];

  std::vector<std::size_t> current;
  auto rec = [&](auto&& self, std::size_t next, SymbolSet covered) -> void {
    if (covered == target && !current.empty()) out.push_back(current);
    for (std::size_t i = next; i < labels.size(); ++i) {
      if (!labels[i].subset_of(target)) continue;
      if (((covered | suffix[i]) & target) != target) break;
      current.push_back(i);
      self(self, i + 1, covered | labels[i]);
      current.pop_back();
    }
  };
  rec(rec, 0, SymbolSet{});

  if (minimal_only) {
    std::erase_if(out, [&](const std::vector<std::size_t>& k) {
      for (std::size_t drop = 0; drop < k.size(); ++drop) {
        SymbolSet rest;
        for (std::size_t i = 0; i < k.size(); ++i)
          if (i != drop) rest |= labels[k[i]];
        if (rest == target) return true;
      }
      return false;
    });
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

namespace {

class Propagator {
 public:
  Propagator(const BeliefTree& tree, const ConstraintSpec& spec, const SynthConfig& config)
      : tree_(tree), spec_(spec), config_(config), solutions_(tree.size()) {}

  std::vector<VertexSolution> run() {
    if (tree_.dummy() != BeliefTree::npos) solutions_[tree_.dummy()] = {};
    std::size_t max_depth = 0;
    for (const auto& v : tree_.vertices()) max_depth = std::max(max_depth, v.depth);
    std::vector<std::vector<std::size_t>> levels(max_depth + 1);
    for (std::size_t i = 0; i < tree_.size(); ++i)
      if (!tree_.vertex(i).dummy) levels[tree_.vertex(i).depth].push_back(i);
    for (std::size_t d = levels.size(); d-- > 0;) run_level(levels[d]);
    return std::move(solutions_);
  }

 private:
  void run_level(const std::vector<std::size_t>& level) {
    const unsigned workers = std::max(1U, std::min<unsigned>(config_.workers, static_cast<unsigned>(level.size())));
    if (workers == 1) {
      for (std::size_t v : level) solve(v);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < level.size(); i = next++) {
          try {
            solve(level[i]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = level.size();
          }
        }
      });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  void solve(std::size_t id) {
    const BeliefVertex& v = tree_.vertex(id);
    Accumulator acc;
    if (v.goal) {
      acc.add(Cover::epsilon(), Witness{});
    } else if (v.kind == VertexKind::action) {
      for (std::uint32_t e = 0; e < v.children.size(); ++e) {
        const CoverList& child = solutions_[v.children[e].child].covers;
        for (std::uint32_t c = 0; c < child.size(); ++c) acc.add(child[c], Witness{{e}, {c}});
      }
    } else if (!v.children.empty()) {
      solve_observation(id, v, acc);
    }
    solutions_[id] = finish(id, std::move(acc));
  }

  struct Accumulator {
    std::unordered_map<Cover, Witness, CoverHash> found;
    void add(Cover c, Witness w) { found.try_emplace(std::move(c), std::move(w)); }
  };

  VertexSolution finish(std::size_t id, Accumulator acc) {
    std::vector<Cover> covers;
    covers.reserve(acc.found.size());
    for (const auto& [c, w] : acc.found) covers.push_back(c);
    CoverList list(std::move(covers));
    if (config_.compact) list = upper_covers(list);
    if (list.size() > config_.max_cover_list)
      throw ResourceError("max-cover-list",
                          std::to_string(list.size()) + " covers at belief vertex " + std::to_string(id));
    VertexSolution out;
    out.witnesses.reserve(list.size());
    for (const Cover& c : list) out.witnesses.push_back(std::move(acc.found.at(c)));
    out.covers = std::move(list);
    return out;
  }

  struct Partial {
    std::vector<std::uint32_t> edges;
    std::vector<std::uint32_t> covers;
    SymbolSet handled;
    Cover joint;  // ⋒ of the chosen child covers (upper form)
  };

  void solve_observation(std::size_t id, const BeliefVertex& v, Accumulator& acc) {
    const SymbolSet target = v.events;
    const auto& kids = v.children;
    std::vector<SymbolSet> reach(kids.size() + 1);
    for (std::size_t j = kids.size(); j-- > 0;)
      reach[j] = reach[j + 1] | (solutions_[kids[j].child].covers.empty() ? SymbolSet{} : kids[j].label);
    if (reach[0] != target) return;

    std::size_t work = 0;
    std::vector<Partial> states{Partial{}};
    for (std::uint32_t j = 0; j < kids.size(); ++j) {
      const CoverList& child = solutions_[kids[j].child].covers;
      if (child.empty()) continue;
      std::vector<Partial> next;
      for (const Partial& s : states) {
        if ((s.handled | reach[j + 1]) == target) next.push_back(s);
        for (std::uint32_t c = 0; c < child.size(); ++c) {
          if (++work > config_.max_combinations)
            throw ResourceError("max-combinations", "observation belief vertex " + std::to_string(id));
          auto joint = intersect_upper(s.joint, child[c]);
          if (!joint) continue;
          Partial t{s.edges, s.covers, s.handled | kids[j].label, std::move(*joint)};
          if ((t.handled | reach[j + 1]) != target) continue;
          t.edges.push_back(j);
          t.covers.push_back(c);
          next.push_back(std::move(t));
        }
      }
      states = reduce(std::move(next));
    }

    const bool filter = spec_.has_block_constraints() && (config_.filter_blocks_each_vertex || id == 0);
    for (const Partial& s : states) {
      if (s.handled != target) continue;
      std::vector<SymbolSet> k;
      for (std::uint32_t e : s.edges) k.push_back(kids[e].label);
      auto result = intersect_upper(Cover(std::move(k)), s.joint);
      if (!result) continue;
      if (filter) {
        auto admissible = admissible_part(*result);
        if (!admissible) continue;
        result = std::move(admissible);
      }
      acc.add(std::move(*result), Witness{s.edges, s.covers});
    }
  }

  std::optional<Cover> admissible_part(const Cover& c) const {
    std::vector<SymbolSet> kept;
    SymbolSet covered;
    for (SymbolSet b : c.blocks())
      if (spec_.block_admissible(b)) {
        kept.push_back(b);
        covered |= b;
      }
    if (covered != c.domain()) return std::nullopt;
    return Cover(std::move(kept));
  }

  // Identical (K, joint) states are merged; with compaction, a joint cover
  // dominated by another of equal domain under the same K is dropped.
  std::vector<Partial> reduce(std::vector<Partial> states) const {
    std::map<std::vector<std::uint32_t>, std::vector<std::size_t>> by_edges;
    for (std::size_t i = 0; i < states.size(); ++i) by_edges[states[i].edges].push_back(i);
    std::vector<Partial> out;
    for (auto& [edges, idx] : by_edges) {
      std::vector<std::size_t> keep;
      std::unordered_set<Cover, CoverHash> seen;
      for (std::size_t i : idx)
        if (seen.insert(states[i].joint).second) keep.push_back(i);
      if (config_.compact && keep.size() > 1) {
        std::stable_sort(keep.begin(), keep.end(),
                         [&](std::size_t a, std::size_t b) { return states[a].joint.size() > states[b].joint.size(); });
        std::vector<std::size_t> maximal;
        for (std::size_t i : keep) {
          const Cover& c = states[i].joint;
          const bool dominated = std::any_of(maximal.begin(), maximal.end(), [&](std::size_t m) {
            const Cover& big = states[m].joint;
            return big.domain() == c.domain() && big.size() > c.size() && c.subcover_of(big);
          });
          if (!dominated) maximal.push_back(i);
        }
        keep = std::move(maximal);
        std::sort(keep.begin(), keep.end());
      }
      for (std::size_t i : keep) out.push_back(std::move(states[i]));
    }
    return out;
  }

  const BeliefTree& tree_;
  const ConstraintSpec& spec_;
  const SynthConfig& config_;
  std::vector<VertexSolution> solutions_;
};

}  // namespace

SolutionSet synthesize(BeliefTree tree, const ConstraintSpec& spec, const SynthConfig& config) {
  if (spec.has_block_constraints() || spec.has_global_constraints()) spec.validate();
  std::vector<VertexSolution> solutions;
  if (tree.root().dummy) {
    solutions.resize(tree.size());
  } else {
    solutions = Propagator(tree, spec, config).run();
  }
  return SolutionSet(std::move(tree), std::move(solutions), spec);
}

bool SolutionSet::sensorless() const { return root_covers().contains(Cover::epsilon()); }

std::optional<std::size_t> SolutionSet::find_root(const Cover& cover) const {
  const CoverList& roots = root_covers();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Cover& r = roots[i];
    if (r.domain().subset_of(cover.domain()) && project(cover, r.domain()).subcover_of(r)) return i;
  }
  return std::nullopt;
}

CoverList SolutionSet::constrained_closure(std::size_t budget) const {
  std::unordered_set<Cover, CoverHash> found;
  const std::size_t limit = spec_.partition ? 0 : spec_.overlapping.value_or(kMaxSymbols);
  const bool pairwise = spec_.partition || spec_.overlapping.has_value();
  for (const Cover& root : root_covers()) {
    if (root.is_epsilon()) {
      found.insert(root);
      continue;
    }
    const auto& blocks = root.blocks();
    std::vector<SymbolSet> suffix(blocks.size() + 1);
    for (std::size_t i = blocks.size(); i-- > 0;) suffix[i] = suffix[i + 1] | blocks[i];
    std::vector<SymbolSet> chosen;
    auto rec = [&](auto&& self, std::size_t i, SymbolSet covered) -> void {
      if ((covered | suffix[i]) != root.domain()) return;
      if (spec_.outputting && chosen.size() > *spec_.outputting) return;
      if (i == blocks.size()) {
        if (spec_.outputting && chosen.size() != *spec_.outputting) return;
        if (found.emplace(chosen).second && budget != 0 && found.size() > budget)
          throw ResourceError("max-closure", "more than " + std::to_string(budget) + " constrained covers");
        return;
      }
      const bool fits = !pairwise || std::all_of(chosen.begin(), chosen.end(), [&](SymbolSet b) {
        return (b & blocks[i]).size() <= limit;
      });
      if (fits) {
        chosen.push_back(blocks[i]);
        self(self, i + 1, covered | blocks[i]);
        chosen.pop_back();
      }
      self(self, i + 1, covered);
    };
    rec(rec, 0, SymbolSet{});
  }
  return CoverList(std::vector<Cover>(found.begin(), found.end()));
}

std::optional<std::uint64_t> SolutionSet::closure_count() const {
  constexpr std::size_t kMaxGroup = 20;
  std::map<std::uint64_t, std::vector<const Cover*>> groups;
  for (const Cover& c : root_covers()) groups[c.domain().bits()].push_back(&c);
  __int128 total = 0;
  for (const auto& [domain_bits, group] : groups) {
    if (group.size() > kMaxGroup) return std::nullopt;
    const SymbolSet domain(domain_bits);
    if (domain.empty()) {
      total += 1;
      continue;
    }
    const std::uint64_t subsets = std::uint64_t{1} << group.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      std::vector<SymbolSet> common;
      bool first = true;
      for (std::size_t i = 0; i < group.size(); ++i) {
        if (((mask >> i) & 1U) == 0) continue;
        if (first) {
          common = group[i]->blocks();
          first = false;
        } else {
          std::vector<SymbolSet> next;
          std::set_intersection(common.begin(), common.end(), group[i]->blocks().begin(), group[i]->blocks().end(),
                                std::back_inserter(next));
          common = std::move(next);
        }
      }
      const std::uint64_t n = count_covering_subfamilies(common, domain);
      if (n == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
      total += (std::popcount(mask) % 2 == 1) ? static_cast<__int128>(n) : -static_cast<__int128>(n);
    }
  }
  if (total < 0 || total > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
  return static_cast<std::uint64_t>(total);
}

namespace {

class PlanBuilder {
 public:
  PlanBuilder(const SolutionSet& solution, const Cover& cover, const PGraph& world, bool preimages)
      : solution_(solution),
        cover_(cover),
        preimages_(preimages),
        plan_graph_(world.actions(), preimages ? world.observations() : readings(cover)) {}

  Plan build(std::size_t root_cover) {
    const VertexId root = emit(0, root_cover);
    plan_graph_.set_initial({root});
    std::sort(termination_.begin(), termination_.end());
    return Plan{std::move(plan_graph_), std::move(termination_)};
  }

 private:
  static Alphabet readings(const Cover& cover) {
    if (cover.size() > kMaxSymbols)
      throw ResourceError("max-readings", std::to_string(cover.size()) + " blocks, cap " + std::to_string(kMaxSymbols));
    Alphabet a;
    for (std::size_t i = 1; i <= cover.size(); ++i) a.intern(reading_name(i));
    return a;
  }

  VertexId emit(std::size_t vertex, std::size_t cover_index) {
    const BeliefTree& tree = solution_.tree();
    const BeliefVertex& b = tree.vertex(vertex);
    if (b.dummy) throw InvariantError("witness chain reaches the dummy vertex");
    const VertexId here = plan_graph_.add_vertex(b.kind, "b" + std::to_string(vertex));
    if (b.goal) {
      termination_.push_back(here);
      return here;
    }
    const Witness& w = solution_.at(vertex).witnesses.at(cover_index);
    if (b.kind == VertexKind::action) {
      const BeliefEdge& e = b.children.at(w.edges.front());
      const VertexId next = emit(e.child, w.child_covers.front());
      plan_graph_.add_edge(here, next, e.label);
      return here;
    }
    // One plan edge per used child; its labels are the readings whose block
    // traces to that child's observation subset.
    for (std::size_t k = 0; k < w.edges.size(); ++k) {
      const BeliefEdge& e = b.children.at(w.edges[k]);
      SymbolSet labels;
      for (std::size_t i = 0; i < cover_.size(); ++i) {
        const SymbolSet block = cover_.blocks()[i];
        if ((block & b.events) != e.label) continue;
        if (preimages_)
          labels |= block;
        else
          labels.insert(static_cast<SymbolId>(i));
      }
      if (labels.empty()) continue;
      const VertexId next = emit(e.child, w.child_covers[k]);
      plan_graph_.add_edge(here, next, labels);
    }
    return here;
  }

  const SolutionSet& solution_;
  const Cover& cover_;
  bool preimages_;
  PGraph plan_graph_;
  std::vector<VertexId> termination_;
};

}  // namespace

Plan extract_plan(const SolutionSet& solution, const Cover& cover, const PGraph& world) {
  const auto root = solution.find_root(cover);
  if (!root) throw NotASolutionError("cover " + cover.format(world.observations()) + " is not admitted by the solution");
  return PlanBuilder(solution, cover, world, false).build(*root);
}

Plan extract_preimage_plan(const SolutionSet& solution, const Cover& cover, const PGraph& world) {
  const auto root = solution.find_root(cover);
  if (!root) throw NotASolutionError("cover " + cover.format(world.observations()) + " is not admitted by the solution");
  return PlanBuilder(solution, cover, world, true).build(*root);
}

}  // namespace coversynth
