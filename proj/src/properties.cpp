#include "coversynth/properties.hpp"

#include <algorithm>

#include "coversynth/errors.hpp"

namespace coversynth {

NeighborRelation::NeighborRelation(SymbolSet carrier, const std::vector<std::pair<SymbolId, SymbolId>>& pairs)
    : carrier_(carrier) {
  carrier.for_each([&](SymbolId y) { adjacency_[y].insert(y); });
  for (auto [a, b] : pairs) {
    if (!carrier.contains(a) || !carrier.contains(b))
      throw SpecError("neighbor pair references an observation outside the carrier");
    adjacency_[a].insert(b);
    adjacency_[b].insert(a);
  }
}

bool NeighborRelation::related(SymbolId a, SymbolId b) const {
  return a < kMaxSymbols && adjacency_[a].contains(b);
}

std::vector<std::pair<SymbolId, SymbolId>> NeighborRelation::pairs() const {
  std::vector<std::pair<SymbolId, SymbolId>> out;
  carrier_.for_each([&](SymbolId a) {
    adjacency_[a].for_each([&](SymbolId b) {
      if (a < b) out.emplace_back(a, b);
    });
  });
  return out;
}

bool NeighborRelation::connected(SymbolSet block) const {
  if (block.empty()) return true;
  SymbolSet reached = SymbolSet::single(block.front());
  SymbolSet frontier = reached;
  while (!frontier.empty()) {
    SymbolSet next;
    frontier.for_each([&](SymbolId y) { next |= adjacency_[y] & block; });
    frontier = next - reached;
    reached |= next;
  }
  return reached == block;
}

void ConstraintSpec::validate() const {
  if (contiguous && !neighbor) throw SpecError("contiguity requested without a neighbor relation");
  for (const auto& [name, k] : {std::pair{"outputting", outputting}, std::pair{"overlapping", overlapping},
                                std::pair{"wide", wide}})
    if (k && *k == 0) throw SpecError(std::string(name) + " requires k >= 1");
}

bool ConstraintSpec::block_admissible(SymbolSet block) const {
  if (wide) {
    if (wide_is_maximum ? block.size() > *wide : block.size() != *wide) return false;
  }
  if (contiguous && !neighbor->connected(block)) return false;
  return true;
}

bool PropertyReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.pass; });
}

const PropertyResult* PropertyReport::find(std::string_view property) const {
  for (const auto& r : results)
    if (r.property == property) return &r;
  return nullptr;
}

namespace {

void require_carrier(const ConstraintSpec& spec, SymbolSet domain) {
  if (spec.contiguous && !domain.subset_of(spec.neighbor->carrier()))
    throw SpecError("domain contains observations outside the neighbor relation");
}

PropertyResult check_pairs(const Cover& cover, std::string name, std::size_t max_shared) {
  PropertyResult r{std::move(name), true, {}, {}};
  const auto& blocks = cover.blocks();
  for (std::size_t i = 0; i < blocks.size() && r.pass; ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if ((blocks[i] & blocks[j]).size() > max_shared) {
        r.pass = false;
        r.witness = {blocks[i], blocks[j]};
        r.detail = "blocks share " + std::to_string((blocks[i] & blocks[j]).size()) + " observations";
        break;
      }
  return r;
}

}  // namespace

PropertyReport check(const Cover& cover, const ConstraintSpec& spec) {
  spec.validate();
  require_carrier(spec, cover.domain());
  PropertyReport report;
  if (spec.partition) report.results.push_back(check_pairs(cover, "partition", 0));
  if (spec.contiguous) {
    PropertyResult r{"contiguous", true, {}, {}};
    for (SymbolSet b : cover.blocks())
      if (!spec.neighbor->connected(b)) {
        r.pass = false;
        r.witness = {b};
        r.detail = "block is not connected under the neighbor relation";
        break;
      }
    report.results.push_back(std::move(r));
  }
  if (spec.outputting) {
    PropertyResult r{"outputting", cover.size() == *spec.outputting, {}, {}};
    r.detail = std::to_string(cover.size()) + " blocks, expected " + std::to_string(*spec.outputting);
    report.results.push_back(std::move(r));
  }
  if (spec.overlapping) report.results.push_back(check_pairs(cover, "overlapping", *spec.overlapping));
  if (spec.wide) {
    PropertyResult r{"wide", true, {}, {}};
    for (SymbolSet b : cover.blocks())
      if (spec.wide_is_maximum ? b.size() > *spec.wide : b.size() != *spec.wide) {
        r.pass = false;
        r.witness = {b};
        r.detail = "block has " + std::to_string(b.size()) + " observations";
        break;
      }
    report.results.push_back(std::move(r));
  }
  return report;
}

bool satisfies_global(const Cover& cover, const ConstraintSpec& spec) {
  if (spec.outputting && cover.size() != *spec.outputting) return false;
  if (!spec.partition && !spec.overlapping) return true;
  const std::size_t limit = spec.partition ? 0 : *spec.overlapping;
  const auto& blocks = cover.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (std::size_t j = i + 1; j < blocks.size(); ++j)
      if ((blocks[i] & blocks[j]).size() > limit) return false;
  return true;
}

std::vector<SymbolSet> generate_blocks(SymbolSet domain, const ConstraintSpec& spec) {
  spec.validate();
  require_carrier(spec, domain);
  std::vector<SymbolSet> out;
  if (spec.wide && !spec.wide_is_maximum && *spec.wide > domain.size()) return out;
  domain.for_each_subset([&](SymbolSet b) {
    if (spec.block_admissible(b)) out.push_back(b);
  });
  std::sort(out.begin(), out.end());
  return out;
}

Cover discretize_partition(const std::vector<double>& sensor_cuts, const std::vector<double>& cell_cuts) {
  auto check_cuts = [](const std::vector<double>& cuts, const char* what) {
    if (cuts.size() < 2) throw ValidationError(std::string(what) + " needs at least two cut points");
    for (std::size_t i = 1; i < cuts.size(); ++i)
      if (!(cuts[i - 1] < cuts[i])) throw ValidationError(std::string(what) + " cut points must increase strictly");
  };
  check_cuts(sensor_cuts, "sensor");
  check_cuts(cell_cuts, "cells");
  if (sensor_cuts.front() != cell_cuts.front() || sensor_cuts.back() != cell_cuts.back())
    throw ValidationError("cells and sensor intervals must partition the same space");
  if (cell_cuts.size() - 1 > kMaxSymbols) throw ValidationError("too many cells");

  std::vector<SymbolSet> blocks;
  for (std::size_t i = 0; i + 1 < sensor_cuts.size(); ++i) {
    SymbolSet block;
    for (std::size_t j = 0; j + 1 < cell_cuts.size(); ++j) {
      const double lo = std::max(sensor_cuts[i], cell_cuts[j]);
      const double hi = std::min(sensor_cuts[i + 1], cell_cuts[j + 1]);
      if (lo < hi) block.insert(static_cast<SymbolId>(j));
    }
    blocks.push_back(block);
  }
  return Cover(std::move(blocks));
}

}  // namespace coversynth
