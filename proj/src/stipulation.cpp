#include "coversynth/stipulation.hpp"

#include <algorithm>
#include <cctype>

#include "coversynth/errors.hpp"

namespace coversynth {

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

StipulationFormula StipulationFormula::constant(bool value) {
  StipulationFormula f;
  f.op_ = Op::constant;
  f.value_ = value;
  return f;
}

StipulationFormula StipulationFormula::negation(StipulationFormula inner) {
  StipulationFormula f;
  f.op_ = Op::negation;
  f.children_.push_back(std::move(inner));
  return f;
}

StipulationFormula StipulationFormula::conjunction(std::vector<StipulationFormula> fs) {
  StipulationFormula f;
  f.op_ = Op::conjunction;
  f.children_ = std::move(fs);
  return f;
}

StipulationFormula StipulationFormula::disjunction(std::vector<StipulationFormula> fs) {
  StipulationFormula f;
  f.op_ = Op::disjunction;
  f.children_ = std::move(fs);
  return f;
}

StipulationFormula StipulationFormula::contains(VertexId state) {
  StipulationFormula f;
  f.op_ = Op::contains;
  f.states_ = {state};
  return f;
}

StipulationFormula StipulationFormula::subset_of(std::vector<VertexId> states) {
  StipulationFormula f;
  f.op_ = Op::subset_of;
  f.states_ = sorted_unique(std::move(states));
  return f;
}

StipulationFormula StipulationFormula::disjoint_from(std::vector<VertexId> states) {
  StipulationFormula f;
  f.op_ = Op::disjoint_from;
  f.states_ = sorted_unique(std::move(states));
  return f;
}

StipulationFormula StipulationFormula::size_at_most(std::size_t n) {
  StipulationFormula f;
  f.op_ = Op::size_at_most;
  f.bound_ = n;
  return f;
}

bool StipulationFormula::eval(const std::vector<VertexId>& belief) const {
  switch (op_) {
    case Op::constant: return value_;
    case Op::negation: return !children_.front().eval(belief);
    case Op::conjunction:
      return std::all_of(children_.begin(), children_.end(), [&](const auto& c) { return c.eval(belief); });
    case Op::disjunction:
      return std::any_of(children_.begin(), children_.end(), [&](const auto& c) { return c.eval(belief); });
    case Op::contains: return std::binary_search(belief.begin(), belief.end(), states_.front());
    case Op::subset_of: return std::includes(states_.begin(), states_.end(), belief.begin(), belief.end());
    case Op::disjoint_from:
      return std::none_of(belief.begin(), belief.end(),
                          [&](VertexId v) { return std::binary_search(states_.begin(), states_.end(), v); });
    case Op::size_at_most: return belief.size() <= bound_;
  }
  return false;
}

std::string StipulationFormula::to_string(const PGraph& world) const {
  auto state_list = [&] {
    std::string s = "{";
    for (std::size_t i = 0; i < states_.size(); ++i) s += (i ? ", " : "") + world.name(states_[i]);
    return s + "}";
  };
  auto joined = [&](const char* head) {
    std::string s = std::string(head) + "(";
    for (std::size_t i = 0; i < children_.size(); ++i) s += (i ? ", " : "") + children_[i].to_string(world);
    return s + ")";
  };
  switch (op_) {
    case Op::constant: return value_ ? "true" : "false";
    case Op::negation: return "not(" + children_.front().to_string(world) + ")";
    case Op::conjunction: return joined("and");
    case Op::disjunction: return joined("or");
    case Op::contains: return "contains(" + world.name(states_.front()) + ")";
    case Op::subset_of: return "subset-of(" + state_list() + ")";
    case Op::disjoint_from: return "disjoint-from(" + state_list() + ")";
    case Op::size_at_most: return "size-at-most(" + std::to_string(bound_) + ")";
  }
  return {};
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const PGraph& world) : text_(text), world_(world) {}

  StipulationFormula parse() {
    auto f = formula();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("stipulation: " + what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.' || c == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  VertexId state() {
    const std::size_t at = pos_;
    const std::string name = word();
    try {
      return world_.vertex(name);
    } catch (const LookupError&) {
      pos_ = at;
      fail("unknown state '" + name + "'");
    }
  }

  std::vector<VertexId> state_set() {
    std::vector<VertexId> out;
    expect('{');
    if (accept('}')) return out;
    do {
      out.push_back(state());
    } while (accept(','));
    expect('}');
    return out;
  }

  StipulationFormula formula() {
    const std::size_t at = pos_;
    const std::string head = word();
    if (head == "true") return StipulationFormula::constant(true);
    if (head == "false") return StipulationFormula::constant(false);
    expect('(');
    StipulationFormula f;
    if (head == "not") {
      f = StipulationFormula::negation(formula());
    } else if (head == "and" || head == "or") {
      std::vector<StipulationFormula> parts;
      do {
        parts.push_back(formula());
      } while (accept(','));
      f = head == "and" ? StipulationFormula::conjunction(std::move(parts))
                        : StipulationFormula::disjunction(std::move(parts));
    } else if (head == "contains") {
      f = StipulationFormula::contains(state());
    } else if (head == "subset-of") {
      f = StipulationFormula::subset_of(state_set());
    } else if (head == "disjoint-from") {
      f = StipulationFormula::disjoint_from(state_set());
    } else if (head == "size-at-most") {
      const std::string n = word();
      if (!std::all_of(n.begin(), n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail("size-at-most expects an integer");
      f = StipulationFormula::size_at_most(std::stoul(n));
    } else {
      pos_ = at;
      fail("unknown operator '" + head + "'");
    }
    expect(')');
    return f;
  }

  std::string_view text_;
  const PGraph& world_;
  std::size_t pos_ = 0;
};

}  // namespace

StipulationFormula parse_stipulation(std::string_view text, const PGraph& world) { return Parser(text, world).parse(); }

}  // namespace coversynth
