#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coversynth/pgraph.hpp"

namespace coversynth {

/// Version of the textual formula grammar accepted by parse_stipulation.
inline constexpr int kStipulationGrammar = 1;

/// Boolean predicate over beliefs (sets of world vertices).
///
/// Grammar (version 1):
///   formula := "true" | "false"
///            | "not" "(" formula ")"
///            | ("and" | "or") "(" formula { "," formula } ")"
///            | "contains" "(" state ")"
///            | "subset-of" "(" "{" [ state { "," state } ] "}" ")"
///            | "disjoint-from" "(" "{" [ state { "," state } ] "}" ")"
///            | "size-at-most" "(" integer ")"
class StipulationFormula {
 public:
  enum class Op : std::uint8_t { constant, negation, conjunction, disjunction, contains, subset_of, disjoint_from, size_at_most };

  static StipulationFormula always() { return constant(true); }
  static StipulationFormula constant(bool value);
  static StipulationFormula negation(StipulationFormula f);
  static StipulationFormula conjunction(std::vector<StipulationFormula> fs);
  static StipulationFormula disjunction(std::vector<StipulationFormula> fs);
  static StipulationFormula contains(VertexId state);
  static StipulationFormula subset_of(std::vector<VertexId> states);
  static StipulationFormula disjoint_from(std::vector<VertexId> states);
  static StipulationFormula size_at_most(std::size_t n);

  /// `belief` is sorted.
  bool eval(const std::vector<VertexId>& belief) const;

  /// Canonical text, with state names taken from `world`.
  std::string to_string(const PGraph& world) const;

  Op op() const { return op_; }

 private:
  Op op_ = Op::constant;
  bool value_ = true;
  std::size_t bound_ = 0;
  std::vector<VertexId> states_;  // sorted
  std::vector<StipulationFormula> children_;
};

/// Parses the textual syntax; state names must be vertices of `world`.
/// Throws ValidationError (unknown state, syntax) with the byte offset.
StipulationFormula parse_stipulation(std::string_view text, const PGraph& world);

}  // namespace coversynth
