#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coversynth/symbol_set.hpp"

namespace coversynth {

/// A set of non-empty observation subsets (blocks). Covers are the canonical
/// representation of sensor maps: two sensor maps with the same cover are
/// interchangeable for plan solvability.
///
/// Blocks are kept sorted in canonical block order and deduplicated, so that
/// equality, ordering and hashing are structural. The cover with no blocks is
/// the epsilon cover: empty domain, identity of intersection, and the
/// "no sensing required" answer of a problem solved at the root.
class Cover {
 public:
  Cover() = default;
  /// Canonicalizes. Throws InvariantError on an empty block.
  explicit Cover(std::vector<SymbolSet> blocks);
  Cover(std::initializer_list<SymbolSet> blocks) : Cover(std::vector<SymbolSet>(blocks)) {}

  static Cover epsilon() { return Cover{}; }
  /// Every non-empty subset of `domain`.
  static Cover powerset(SymbolSet domain);
  /// {{y} : y in domain}
  static Cover singletons(SymbolSet domain);

  bool is_epsilon() const { return blocks_.empty(); }
  const std::vector<SymbolSet>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  SymbolSet domain() const { return domain_; }

  bool contains_block(SymbolSet b) const;
  /// Block-set inclusion (this ⊆ other).
  bool subcover_of(const Cover& other) const;
  bool is_partition() const;

  std::string format(const Alphabet& observations) const;

  friend bool operator==(const Cover& a, const Cover& b) { return a.blocks_ == b.blocks_; }
  /// Domain first, then block list; groups covers of one domain together.
  friend std::strong_ordering operator<=>(const Cover& a, const Cover& b);

 private:
  std::vector<SymbolSet> blocks_;
  SymbolSet domain_;
};

struct CoverHash {
  std::size_t operator()(const Cover& c) const noexcept;
};

/// Canonically ordered, duplicate-free collection of covers.
class CoverList {
 public:
  CoverList() = default;
  explicit CoverList(std::vector<Cover> covers);
  CoverList(std::initializer_list<Cover> covers) : CoverList(std::vector<Cover>(covers)) {}

  /// Returns false if the cover was already present.
  bool insert(Cover c);
  void merge(const CoverList& other);

  bool contains(const Cover& c) const;
  std::optional<std::size_t> index_of(const Cover& c) const;
  bool empty() const { return covers_.empty(); }
  std::size_t size() const { return covers_.size(); }
  const std::vector<Cover>& covers() const { return covers_; }
  const Cover& operator[](std::size_t i) const { return covers_[i]; }
  auto begin() const { return covers_.begin(); }
  auto end() const { return covers_.end(); }

  friend bool operator==(const CoverList&, const CoverList&) = default;

 private:
  std::vector<Cover> covers_;
};

/// Sensor map h: observation -> non-empty set of readings.
struct SensorMap {
  std::map<SymbolId, std::set<std::string>> image;

  /// Observations with a non-empty image.
  SymbolSet domain() const;
  /// h^{-1}(x) = {y : x in h(y)}, keyed by reading.
  std::map<std::string, SymbolSet> preimages() const;
};

/// {G ∩ D : G ∈ C, G ∩ D ≠ ∅}. Empty intersections are dropped.
Cover project(const Cover& cover, SymbolSet domain);

/// The largest cover in c1 ⋒ c2: every block B over dom(c1) ∪ dom(c2) whose
/// traces on dom(c1) and dom(c2) are blocks of c1 and c2 (or empty). The full
/// intersection is exactly the set of subfamilies of this cover that still
/// cover the union domain. nullopt iff c1 and c2 are incompatible.
std::optional<Cover> intersect_upper(const Cover& c1, const Cover& c2);
/// n-ary form of intersect_upper; associative fold with early exit.
std::optional<Cover> intersect_upper(const std::vector<const Cover*>& covers);

/// All covers C' with domain dom(c1) ∪ dom(c2), project(C', dom ci) ⊆ ci.
/// The epsilon cover is the identity. `budget` caps the number of results
/// (ResourceError when exceeded; 0 means unlimited).
CoverList intersect(const Cover& c1, const Cover& c2, std::size_t budget = 0);
CoverList intersect_lists(const CoverList& l1, const CoverList& l2, std::size_t budget = 0);
bool compatible(const Cover& c1, const Cover& c2);

/// Keeps the covers not strictly contained in another cover of equal domain.
CoverList upper_covers(const CoverList& list);

/// Every subfamily of `upper` whose union is dom(upper), including itself.
/// ResourceError once more than `budget` results would be produced (0 = unlimited).
std::vector<Cover> subcovers(const Cover& upper, std::size_t budget = 0);
/// Number of subfamilies of `blocks` whose union is exactly `domain`
/// (inclusion–exclusion; saturates at UINT64_MAX).
std::uint64_t count_covering_subfamilies(const std::vector<SymbolSet>& blocks, SymbolSet domain);

/// Merges readings with identical preimages; domain is the set of observations
/// with a non-empty image. Throws InvariantError on an empty image.
Cover from_sensor_map(const SensorMap& h);
/// Readings are the 1-based block positions: y ↦ {i : y ∈ S_i}.
SensorMap to_sensor_map(const Cover& cover);

}  // namespace coversynth
