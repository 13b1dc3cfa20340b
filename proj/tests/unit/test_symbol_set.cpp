#include "doctest.h"

#include "coversynth/errors.hpp"
#include "coversynth/symbol_set.hpp"

using namespace coversynth;

TEST_CASE("alphabet interning is stable") {
  Alphabet a;
  CHECK(a.intern("f") == 0);
  CHECK(a.intern("b") == 1);
  CHECK(a.intern("f") == 0);
  CHECK(a.size() == 2);
  CHECK(a.find("b") == SymbolId{1});
  CHECK_FALSE(a.find("x").has_value());
  CHECK_THROWS_AS(a.at("x"), LookupError);
  CHECK(a.format(a.set_of({"b", "f"})) == "{f, b}");
  CHECK(a.names_of(a.all()) == std::vector<std::string>{"f", "b"});
}

TEST_CASE("symbol sets order by size then members") {
  const SymbolSet a{0}, b{1}, ab{0, 1}, c{2};
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < ab);
  CHECK(SymbolSet{0, 2} < SymbolSet{1, 2});
  CHECK(ab.size() == 2);
  CHECK(a.subset_of(ab));
  CHECK_FALSE(ab.subset_of(a));
  CHECK((ab & c).empty());
  CHECK(SymbolSet::first(3) == SymbolSet{0, 1, 2});
  CHECK(ab.members() == std::vector<SymbolId>{0, 1});
}
