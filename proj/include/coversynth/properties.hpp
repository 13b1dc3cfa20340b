#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coversynth/cover.hpp"
#include "coversynth/symbol_set.hpp"

namespace coversynth {

/// Reflexive, symmetric relation over observations. Reflexive pairs are
/// implicit; only distinct pairs need to be supplied.
class NeighborRelation {
 public:
  NeighborRelation() = default;
  NeighborRelation(SymbolSet carrier, const std::vector<std::pair<SymbolId, SymbolId>>& pairs);

  SymbolSet carrier() const { return carrier_; }
  bool related(SymbolId a, SymbolId b) const;
  /// Neighbors of y, including y itself.
  SymbolSet neighbors(SymbolId y) const { return adjacency_.at(y); }
  /// Distinct unordered pairs (a < b).
  std::vector<std::pair<SymbolId, SymbolId>> pairs() const;

  /// Whether `block` induces a connected subgraph.
  bool connected(SymbolSet block) const;

 private:
  SymbolSet carrier_;
  std::array<SymbolSet, kMaxSymbols> adjacency_{};
};

/// Conjunction of sensor-map properties. Per-block properties (contiguity,
/// width) restrict individual blocks; global properties (partition, output
/// count, overlap) constrain whole covers.
struct ConstraintSpec {
  bool partition = false;
  bool contiguous = false;
  std::optional<NeighborRelation> neighbor;
  std::optional<std::size_t> outputting;
  std::optional<std::size_t> overlapping;
  std::optional<std::size_t> wide;
  /// Treat `wide` as an upper bound |G| <= k instead of |G| == k.
  bool wide_is_maximum = false;

  bool empty() const { return !has_block_constraints() && !has_global_constraints(); }
  bool has_block_constraints() const { return contiguous || wide.has_value(); }
  bool has_global_constraints() const { return partition || outputting || overlapping; }

  /// Throws SpecError for k = 0 or contiguity without a neighbor relation.
  void validate() const;
  /// Per-block admissibility. Assumes validate() passed.
  bool block_admissible(SymbolSet block) const;
};

struct PropertyResult {
  std::string property;
  bool pass = true;
  /// Violating block(s), empty when passing or when the property is cardinal.
  std::vector<SymbolSet> witness;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyResult> results;

  bool pass() const;
  const PropertyResult* find(std::string_view property) const;
};

/// Evaluates every property requested by `spec` on `cover`.
PropertyReport check(const Cover& cover, const ConstraintSpec& spec);
/// check(...).pass() restricted to the global properties.
bool satisfies_global(const Cover& cover, const ConstraintSpec& spec);

/// Non-empty subsets of `domain` that satisfy the per-block constraints, in
/// canonical block order.
std::vector<SymbolSet> generate_blocks(SymbolSet domain, const ConstraintSpec& spec);

/// Cover over discretization cells induced by a noiseless sensor on a 1-D
/// measurement space. Both arguments are strictly increasing cut-point lists
/// sharing their first and last points; sensor reading i is the interval
/// [sensor_cuts[i], sensor_cuts[i+1]) and cell j is [cell_cuts[j], cell_cuts[j+1]).
/// Block i holds every cell overlapping reading i on a set of positive length.
Cover discretize_partition(const std::vector<double>& sensor_cuts, const std::vector<double>& cell_cuts);

}  // namespace coversynth
