#include "doctest.h"

#include <fstream>
#include <sstream>

#include "coversynth/errors.hpp"
#include "coversynth/workspace.hpp"

using namespace coversynth;

namespace {

const Diagnostic* find_code(const ProblemError& e, const std::string& code) {
  for (const Diagnostic& d : e.diagnostics())
    if (d.code == code) return &d;
  return nullptr;
}

std::vector<Diagnostic> diagnostics_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ProblemError& e) {
    return e.diagnostics();
  }
  return {};
}

const char* kSmall = R"({
  "schema": "coversynth/problem@1",
  "name": "small",
  "actions": ["go"],
  "observations": ["y"],
  "vertices": [
    {"name": "a", "kind": "action"},
    {"name": "b", "kind": "observation"}
  ],
  "edges": [
    {"from": "a", "to": "b", "labels": ["go"]}
  ],
  "initial": ["a"],
  "goal": ["b"]
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("parse a small problem") {
  const ProblemFile f = parse_problem(kSmall);
  CHECK(f.name == "small");
  CHECK(f.problem.world.vertex_count() == 2);
  CHECK(f.problem.goal == std::vector<VertexId>{1});
  CHECK(f.spec.empty());
  CHECK_FALSE(f.stipulation.has_value());
}

TEST_CASE("track fixture file parses with the expected observations") {
  const ProblemFile f = parse_problem(export_problem(builtin_scenario("track-cyclic")));
  const auto& y = f.problem.world.observations().names();
  CHECK(std::set<std::string>(y.begin(), y.end()) ==
        std::set<std::string>{"o", "o1", "o2", "o3", "o4", "o5", "o6"});
  CHECK(f.spec.contiguous);
  REQUIRE(f.spec.neighbor.has_value());
  CHECK(f.spec.neighbor->pairs().size() == 7);
}

TEST_CASE("diagnostics for bad files") {
  SUBCASE("empty label set") {
    const auto d = diagnostics_of(with(kSmall, R"("labels": ["go"])", R"("labels": [])"));
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == "empty-label-set");
    CHECK(d[0].message.find("empty label set") != std::string::npos);
    CHECK(d[0].field == "/edges/0/labels");
    CHECK(d[0].line == 11);
  }
  SUBCASE("unknown goal state") {
    const auto d = diagnostics_of(with(kSmall, R"("goal": ["b"])", R"("goal": ["nowhere"])"));
    REQUIRE(d.size() == 1);
    CHECK(d[0].code == "unknown-goal-state");
    CHECK(d[0].message.find("unknown goal state") != std::string::npos);
    CHECK(d[0].line == 14);
  }
  SUBCASE("several problems are reported together") {
    std::string text = with(kSmall, R"("kind": "observation")", R"("kind": "action")");
    text = with(text, R"("goal": ["b"])", R"("goal": ["q"])");
    const auto d = diagnostics_of(text);
    std::set<std::string> codes;
    for (const auto& x : d) codes.insert(x.code);
    CHECK(codes.count("not-bipartite") == 1);
    CHECK(codes.count("unknown-goal-state") == 1);
  }
  SUBCASE("syntax and schema") {
    CHECK(diagnostics_of("{ nope").at(0).code == "syntax");
    CHECK(diagnostics_of(with(kSmall, "problem@1", "problem@9")).at(0).code == "schema-version");
    CHECK(diagnostics_of(with(kSmall, R"("name": "small",)", R"("name": "small", "colour": 1,)")).at(0).code ==
          "unknown-field");
    CHECK(diagnostics_of(with(kSmall, R"("initial": ["a"],)", "")).at(0).code == "missing-field");
  }
  SUBCASE("bad constraint and stipulation") {
    const std::string c = with(kSmall, R"("goal": ["b"])", R"("goal": ["b"], "constraints": {"overlapping": 0})");
    CHECK(diagnostics_of(c).at(0).code == "bad-constraint");
    const std::string s = with(kSmall, R"("goal": ["b"])", R"x("goal": ["b"], "stipulation": "contains(q)")x");
    CHECK(diagnostics_of(s).at(0).code == "bad-stipulation");
  }
  SUBCASE("problem errors carry a readable description") {
    try {
      parse_problem(with(kSmall, R"("labels": ["go"])", R"("labels": [])"));
      FAIL("expected a ProblemError");
    } catch (const ProblemError& e) {
      REQUIRE(find_code(e, "empty-label-set") != nullptr);
      CHECK(find_code(e, "empty-label-set")->describe().find("line 11") != std::string::npos);
    }
  }
}

TEST_CASE("stipulation and budgets survive a round trip") {
  const std::string text =
      with(kSmall, R"("goal": ["b"])",
           R"x("goal": ["b"], "stipulation": {"grammar": 1, "formula": "not(contains(a))"}, "budgets": {"max_tree_vertices": 50})x");
  const ProblemFile f = parse_problem(text);
  REQUIRE(f.stipulation.has_value());
  CHECK(f.stipulation->to_string(f.problem.world) == "not(contains(a))");
  CHECK(f.budgets.max_tree_vertices == std::size_t{50});
  const ProblemFile g = parse_problem(export_problem(f));
  CHECK(g.budgets == f.budgets);
  CHECK(g.stipulation->to_string(g.problem.world) == "not(contains(a))");
}

TEST_CASE("parse and export reach a fixed point") {
  for (const std::string& name : scenario_names()) {
    CAPTURE(name);
    const std::string once = export_problem(builtin_scenario(name));
    const ProblemFile parsed = parse_problem(once);
    CHECK(export_problem(parsed) == once);
    CHECK(parsed.problem.world == builtin_scenario(name).problem.world);
    CHECK(parsed.problem.goal == builtin_scenario(name).problem.goal);
  }
  const std::string small = export_problem(parse_problem(kSmall));
  CHECK(export_problem(parse_problem(small)) == small);
}

TEST_CASE("scenario fixtures") {
  const ProblemFile track = builtin_scenario("track-cyclic");
  const PGraph& w = track.problem.world;
  std::size_t segments = 0;
  for (VertexId v = 0; v < w.vertex_count(); ++v) segments += w.kind(v) == VertexKind::observation;
  CHECK(segments == 6);
  CHECK(w.observations().size() == 7);
  CHECK(track.problem.goal == std::vector<VertexId>{w.vertex("s5")});
  CHECK(w.initial() == std::vector<VertexId>{w.vertex("s1"), w.vertex("s3")});

  const ProblemFile grid = builtin_scenario("grid-office");
  CHECK(validate(grid.problem).ok());
  CHECK(grid.problem.world.vertex_count() == 22);
  CHECK(grid.problem.world.observations().size() == 11);

  CHECK(builtin_scenario("corridor").problem.world.initial().size() == 3);
  CHECK_THROWS_AS(builtin_scenario("nowhere"), LookupError);
  CHECK(track_scenario(4).problem.world.vertex_count() == 8);
}

TEST_CASE("plans and covers round trip") {
  const ProblemFile f = builtin_scenario("corridor");
  const SolutionSet s = synthesize(build_tree(f.problem));
  const Alphabet& y = f.problem.world.observations();
  for (const Cover& c : s.root_covers()) {
    const Plan plan = extract_plan(s, c, f.problem.world);
    const std::string text = export_plan(plan);
    const Plan back = parse_plan(text);
    CHECK(export_plan(back) == text);
    CHECK(solves(back, f.problem, c).solves);
    CHECK(parse_cover(export_cover(c, y), y) == c);
    CHECK(parse_cover(c.format(y), y) == c);
  }
  CHECK_THROWS_AS(parse_cover("[{d1, d9}]", y), ValidationError);
}

TEST_CASE("DOT output") {
  PGraph g(Alphabet({"u"}), Alphabet());
  g.add_vertex(VertexKind::action, "only");
  g.set_initial({0});
  const std::string one = plan_to_dot(Plan{g, {0}});
  CHECK(one.find("shape=box") != std::string::npos);
  CHECK(one.find("->") == std::string::npos);

  const ProblemFile f = builtin_scenario("track-cyclic");
  const BeliefTree t = build_tree(f.problem, f.spec);
  const std::string dot = tree_to_dot(t, f.problem.world);
  CHECK(dot.rfind("digraph", 0) == 0);
  std::size_t boxes = 0, circles = 0;
  std::istringstream lines(dot);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("->") != std::string::npos) continue;
    boxes += line.find("shape=box") != std::string::npos;
    circles += line.find("shape=circle") != std::string::npos;
  }
  std::size_t actions = 0, observations = 0;
  for (const BeliefVertex& b : t.vertices()) {
    if (b.dummy) continue;
    (b.kind == VertexKind::action ? actions : observations) += 1;
  }
  CHECK(boxes == actions);
  CHECK(circles == observations);
}

TEST_CASE("exports are byte-identical") {
  const ProblemFile f = builtin_scenario("track-cyclic");
  SolutionExport opt;
  opt.plans = true;
  const std::string a = export_solution(synthesize(build_tree(f.problem, f.spec), f.spec), f.problem.world, opt);
  const std::string b = export_solution(synthesize(build_tree(f.problem, f.spec), f.spec), f.problem.world, opt);
  CHECK(a == b);
  CHECK(a.find(kSolutionSchema) != std::string::npos);
  CHECK(a.find("\"closure\": 28368") != std::string::npos);
}
