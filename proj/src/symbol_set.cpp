#include "coversynth/symbol_set.hpp"

#include "coversynth/errors.hpp"

namespace coversynth {

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) intern(n);
}

SymbolId Alphabet::intern(std::string_view name) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  if (names_.size() >= kMaxSymbols) throw ValidationError("alphabet exceeds " + std::to_string(kMaxSymbols) + " symbols");
  const auto id = static_cast<SymbolId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

SymbolId Alphabet::at(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw LookupError("unknown symbol '" + std::string(name) + "'");
}

const std::string& Alphabet::name(SymbolId id) const {
  if (id >= names_.size()) throw LookupError("symbol id " + std::to_string(id) + " out of range");
  return names_[id];
}

SymbolSet Alphabet::set_of(const std::vector<std::string>& names) const {
  SymbolSet s;
  for (const auto& n : names) s.insert(at(n));
  return s;
}

std::vector<std::string> Alphabet::names_of(SymbolSet s) const {
  std::vector<std::string> out;
  s.for_each([&](SymbolId id) { out.push_back(id < names_.size() ? names_[id] : "#" + std::to_string(id)); });
  return out;
}

std::string Alphabet::format(SymbolSet s) const {
  std::string out = "{";
  bool first = true;
  for (const auto& n : names_of(s)) {
    if (!first) out += ", ";
    out += n;
    first = false;
  }
  return out + "}";
}

}  // namespace coversynth
