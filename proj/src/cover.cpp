#include "coversynth/cover.hpp"

#include <algorithm>
#include <limits>

#include "coversynth/errors.hpp"

namespace coversynth {

Cover::Cover(std::vector<SymbolSet> blocks) : blocks_(std::move(blocks)) {
  for (SymbolSet b : blocks_) {
    if (b.empty()) throw InvariantError("cover block must be non-empty");
    domain_ |= b;
  }
  std::sort(blocks_.begin(), blocks_.end());
  blocks_.erase(std::unique(blocks_.begin(), blocks_.end()), blocks_.end());
}

Cover Cover::powerset(SymbolSet domain) {
  std::vector<SymbolSet> blocks;
  domain.for_each_subset([&](SymbolSet s) { blocks.push_back(s); });
  return Cover(std::move(blocks));
}

Cover Cover::singletons(SymbolSet domain) {
  std::vector<SymbolSet> blocks;
  domain.for_each([&](SymbolId y) { blocks.push_back(SymbolSet::single(y)); });
  return Cover(std::move(blocks));
}

bool Cover::contains_block(SymbolSet b) const { return std::binary_search(blocks_.begin(), blocks_.end(), b); }

bool Cover::subcover_of(const Cover& other) const {
  return std::includes(other.blocks_.begin(), other.blocks_.end(), blocks_.begin(), blocks_.end());
}

bool Cover::is_partition() const {
  std::size_t total = 0;
  for (SymbolSet b : blocks_) total += b.size();
  return total == domain_.size();
}

std::string Cover::format(const Alphabet& observations) const {
  if (is_epsilon()) return "[ε]";
  std::string out = "[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i != 0) out += ", ";
    out += observations.format(blocks_[i]);
  }
  return out + "]";
}

std::strong_ordering operator<=>(const Cover& a, const Cover& b) {
  if (a.domain_ != b.domain_) return a.domain_.bits() <=> b.domain_.bits();
  return std::lexicographical_compare_three_way(a.blocks_.begin(), a.blocks_.end(), b.blocks_.begin(),
                                                b.blocks_.end());
}

std::size_t CoverHash::operator()(const Cover& c) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ c.size();
  for (SymbolSet b : c.blocks()) {
    h ^= b.bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

CoverList::CoverList(std::vector<Cover> covers) : covers_(std::move(covers)) {
  std::sort(covers_.begin(), covers_.end());
  covers_.erase(std::unique(covers_.begin(), covers_.end()), covers_.end());
}

bool CoverList::insert(Cover c) {
  auto it = std::lower_bound(covers_.begin(), covers_.end(), c);
  if (it != covers_.end() && *it == c) return false;
  covers_.insert(it, std::move(c));
  return true;
}

void CoverList::merge(const CoverList& other) {
  std::vector<Cover> merged;
  merged.reserve(covers_.size() + other.covers_.size());
  std::set_union(covers_.begin(), covers_.end(), other.covers_.begin(), other.covers_.end(),
                 std::back_inserter(merged));
  covers_ = std::move(merged);
}

bool CoverList::contains(const Cover& c) const { return std::binary_search(covers_.begin(), covers_.end(), c); }

std::optional<std::size_t> CoverList::index_of(const Cover& c) const {
  auto it = std::lower_bound(covers_.begin(), covers_.end(), c);
  if (it == covers_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - covers_.begin());
}

SymbolSet SensorMap::domain() const {
  SymbolSet d;
  for (const auto& [y, readings] : image)
    if (!readings.empty()) d.insert(y);
  return d;
}

std::map<std::string, SymbolSet> SensorMap::preimages() const {
  std::map<std::string, SymbolSet> pre;
  for (const auto& [y, readings] : image)
    for (const auto& x : readings) pre[x].insert(y);
  return pre;
}

Cover project(const Cover& cover, SymbolSet domain) {
  std::vector<SymbolSet> blocks;
  blocks.reserve(cover.size());
  for (SymbolSet b : cover.blocks())
    if (SymbolSet t = b & domain; !t.empty()) blocks.push_back(t);
  return Cover(std::move(blocks));
}

std::optional<Cover> intersect_upper(const Cover& c1, const Cover& c2) {
  const SymbolSet d1 = c1.domain();
  const SymbolSet d2 = c2.domain();
  // A block B over d1 ∪ d2 is admissible iff B ∩ d1 ∈ c1 ∪ {∅} and
  // B ∩ d2 ∈ c2 ∪ {∅}; such B is b1 ∪ b2 for traces agreeing on d1 ∩ d2.
  std::vector<SymbolSet> blocks;
  auto consider = [&](SymbolSet b1, SymbolSet b2) {
    if ((b1 & d2) == (b2 & d1) && !(b1 | b2).empty()) blocks.push_back(b1 | b2);
  };
  for (SymbolSet b1 : c1.blocks()) {
    consider(b1, SymbolSet{});
    for (SymbolSet b2 : c2.blocks()) consider(b1, b2);
  }
  for (SymbolSet b2 : c2.blocks()) consider(SymbolSet{}, b2);

  SymbolSet covered;
  for (SymbolSet b : blocks) covered |= b;
  if (covered != (d1 | d2)) return std::nullopt;
  return Cover(std::move(blocks));
}

std::optional<Cover> intersect_upper(const std::vector<const Cover*>& covers) {
  Cover acc = Cover::epsilon();
  for (const Cover* c : covers) {
    auto next = intersect_upper(acc, *c);
    if (!next) return std::nullopt;
    acc = std::move(*next);
  }
  return acc;
}

bool compatible(const Cover& c1, const Cover& c2) { return intersect_upper(c1, c2).has_value(); }

CoverList intersect(const Cover& c1, const Cover& c2, std::size_t budget) {
  if (c1.is_epsilon()) return CoverList{c2};
  if (c2.is_epsilon()) return CoverList{c1};
  auto upper = intersect_upper(c1, c2);
  if (!upper) return {};
  return CoverList(subcovers(*upper, budget));
}

CoverList intersect_lists(const CoverList& l1, const CoverList& l2, std::size_t budget) {
  CoverList out;
  for (const Cover& a : l1)
    for (const Cover& b : l2) {
      out.merge(intersect(a, b, budget));
      if (budget != 0 && out.size() > budget)
        throw ResourceError("max-intersect-results", std::to_string(out.size()) + " covers");
    }
  return out;
}

CoverList upper_covers(const CoverList& list) {
  std::vector<Cover> kept;
  const auto& all = list.covers();
  // Sorted by domain first, so equal-domain covers form contiguous runs.
  for (std::size_t lo = 0; lo < all.size();) {
    std::size_t hi = lo;
    while (hi < all.size() && all[hi].domain() == all[lo].domain()) ++hi;
    std::vector<const Cover*> group;
    for (std::size_t i = lo; i < hi; ++i) group.push_back(&all[i]);
    std::stable_sort(group.begin(), group.end(), [](const Cover* a, const Cover* b) { return a->size() > b->size(); });
    std::vector<const Cover*> maximal;
    for (const Cover* c : group) {
      const bool dominated = std::any_of(maximal.begin(), maximal.end(), [&](const Cover* m) {
        return m->size() > c->size() && c->subcover_of(*m);
      });
      if (!dominated) maximal.push_back(c);
    }
    for (const Cover* c : maximal) kept.push_back(*c);
    lo = hi;
  }
  return CoverList(std::move(kept));
}

std::vector<Cover> subcovers(const Cover& upper, std::size_t budget) {
  const auto& blocks = upper.blocks();
  const SymbolSet domain = upper.domain();
  if (upper.is_epsilon()) return {upper};
  // suffix[i] = union of blocks[i..]
  std::vector<SymbolSet> suffix(blocks.size() + 1);
  for (std::size_t i = blocks.size(); i-- > 0;) suffix[i] = suffix[i + 1] | blocks[i];

  std::vector<Cover> out;
  std::vector<SymbolSet> chosen;
  auto rec = [&](auto&& self, std::size_t i, SymbolSet covered) -> void {
    if ((covered | suffix[i]) != domain) return;
    if (i == blocks.size()) {
      if (budget != 0 && out.size() >= budget)
        throw ResourceError("max-intersect-results", "more than " + std::to_string(budget) + " subcovers");
      out.emplace_back(chosen);
      return;
    }
    chosen.push_back(blocks[i]);
    self(self, i + 1, covered | blocks[i]);
    chosen.pop_back();
    self(self, i + 1, covered);
  };
  rec(rec, 0, SymbolSet{});
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_covering_subfamilies(const std::vector<SymbolSet>& blocks, SymbolSet domain) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (blocks.size() > 120) return kMax;
  // Σ_{T ⊆ D} (-1)^{|D \ T|} 2^{#blocks ⊆ T}
  __int128 total = 0;
  auto term = [&](SymbolSet t) {
    std::size_t inside = 0;
    for (SymbolSet b : blocks) inside += b.subset_of(t) ? 1 : 0;
    const __int128 v = static_cast<__int128>(1) << inside;
    total += ((domain - t).size() % 2 == 0) ? v : -v;
  };
  term(SymbolSet{});
  domain.for_each_subset(term);
  if (total < 0) throw InvariantError("negative cover count");
  if (total > static_cast<__int128>(kMax)) return kMax;
  return static_cast<std::uint64_t>(total);
}

Cover from_sensor_map(const SensorMap& h) {
  for (const auto& [y, readings] : h.image)
    if (readings.empty()) throw InvariantError("observation " + std::to_string(y) + " has an empty sensor image");
  std::vector<SymbolSet> blocks;
  for (const auto& [reading, pre] : h.preimages()) blocks.push_back(pre);
  return Cover(std::move(blocks));
}

SensorMap to_sensor_map(const Cover& cover) {
  SensorMap h;
  for (std::size_t i = 0; i < cover.size(); ++i)
    cover.blocks()[i].for_each([&](SymbolId y) { h.image[y].insert(std::to_string(i + 1)); });
  return h;
}

}  // namespace coversynth
