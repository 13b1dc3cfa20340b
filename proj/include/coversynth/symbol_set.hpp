#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace coversynth {

using SymbolId = std::uint32_t;

/// Hard limit on alphabet sizes; symbol sets are 64-bit masks.
inline constexpr std::size_t kMaxSymbols = 64;

/// Set of interned symbols (actions, observations or readings) stored as a
/// bitmask. Ordering follows the canonical block order: size first, then the
/// lexicographic order of the sorted member lists.
class SymbolSet {
 public:
  constexpr SymbolSet() = default;
  constexpr explicit SymbolSet(std::uint64_t bits) : bits_(bits) {}
  SymbolSet(std::initializer_list<SymbolId> ids) {
    for (SymbolId id : ids) insert(id);
  }

  static constexpr SymbolSet single(SymbolId id) { return SymbolSet(std::uint64_t{1} << id); }
  /// {0, 1, ..., n-1}
  static constexpr SymbolSet first(std::size_t n) {
    return SymbolSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool contains(SymbolId id) const { return id < 64 && ((bits_ >> id) & 1U) != 0; }
  constexpr bool subset_of(SymbolSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(SymbolSet o) const { return (bits_ & o.bits_) != 0; }

  void insert(SymbolId id) { bits_ |= std::uint64_t{1} << id; }
  void erase(SymbolId id) { bits_ &= ~(std::uint64_t{1} << id); }

  /// Smallest member; the set must be non-empty.
  SymbolId front() const { return static_cast<SymbolId>(std::countr_zero(bits_)); }
  /// Upper bound on member ids (largest member + 1, or 0).
  std::size_t extent() const { return 64 - static_cast<std::size_t>(std::countl_zero(bits_)); }

  std::vector<SymbolId> members() const {
    std::vector<SymbolId> out;
    for_each([&](SymbolId id) { out.push_back(id); });
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<SymbolId>(std::countr_zero(b)));
  }

  /// Calls f for every non-empty subset, in decreasing mask order.
  template <class F>
  void for_each_subset(F&& f) const {
    for (std::uint64_t s = bits_; s != 0; s = (s - 1) & bits_) f(SymbolSet(s));
  }

  friend constexpr SymbolSet operator|(SymbolSet a, SymbolSet b) { return SymbolSet(a.bits_ | b.bits_); }
  friend constexpr SymbolSet operator&(SymbolSet a, SymbolSet b) { return SymbolSet(a.bits_ & b.bits_); }
  friend constexpr SymbolSet operator-(SymbolSet a, SymbolSet b) { return SymbolSet(a.bits_ & ~b.bits_); }
  SymbolSet& operator|=(SymbolSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  SymbolSet& operator&=(SymbolSet o) {
    bits_ &= o.bits_;
    return *this;
  }

  friend constexpr bool operator==(SymbolSet a, SymbolSet b) = default;

  /// Canonical block order.
  friend std::strong_ordering operator<=>(SymbolSet a, SymbolSet b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (a.bits_ == b.bits_) return std::strong_ordering::equal;
    // Equal sizes: the set owning the lowest differing member sorts first.
    const std::uint64_t diff = a.bits_ ^ b.bits_;
    const std::uint64_t lowest = diff & (~diff + 1);
    return (a.bits_ & lowest) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Interned names for one namespace of events.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// Adds a name (or returns the existing id).
  SymbolId intern(std::string_view name);
  std::optional<SymbolId> find(std::string_view name) const;
  /// Throws LookupError for unknown names.
  SymbolId at(std::string_view name) const;
  const std::string& name(SymbolId id) const;

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  SymbolSet all() const { return SymbolSet::first(names_.size()); }

  SymbolSet set_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(SymbolSet s) const;
  /// "{a, b}" rendering.
  std::string format(SymbolSet s) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymbolId> index_;
};

}  // namespace coversynth

template <>
struct std::hash<coversynth::SymbolSet> {
  std::size_t operator()(coversynth::SymbolSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
