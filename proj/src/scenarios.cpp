// Built-in problem fixtures.
//
// track-cyclic
//   Segments s1..s6 of a closed track are observation vertices; segment i
//   emits o_i, and the two segments at the kink (s5, s6) also emit the shared
//   angular range o. After observing, the robot is at the action vertex m_i
//   and moves forward (f) to s_{i+1} or backward (b) to s_{i-1}, cyclically.
//   Initial belief {s1, s3}, goal {s5}. Neighbors follow the angular order
//   o1 o2 o3 o4 o5 o o6 around the beacon.
//
// grid-office
//   Reconstruction of a small office floor; the original layout exists only as
//   a drawing, so the following is assumed:
//   - A corridor of cells 1..6 runs east; the robot faces east in it. Cell 5
//     opens north into cell 7 and then the charging station C; cell 6 is the
//     corner with the stairwell ST to its south.
//   - Poses (observation vertices): 1E..6E, 5N, 7N, C, 6S, ST. Each pose
//     emits its own observation (11 observations). Each pose has one action
//     vertex reached by observing, giving 22 states.
//   - Actions: f1 and f2 move one or two cells forward when no wall is in the
//     way; L turns left at 5E (to 5N); R turns right at the corner 6E (to 6S).
//     Walls make f1/f2 unavailable at 6E and f2 unavailable at 5E and 7N.
//   - The stairwell ST has no actions, so reaching it is fatal.
//   - The robot starts at 1E or 2E; the goal is C.
//
// corridor
//   A hallway of four cells c1..c4 with the charger at c4 and a stairwell at
//   the west end. The robot is in c1, c2 or c3 facing east and may move
//   forward (f) or back (b); f is unavailable at c4 (no bumping) and b at c1
//   leads down the stairs. Each cell shows a distinct view d1..d4.

#include <map>

#include "coversynth/workspace.hpp"

namespace coversynth {

namespace {

struct Builder {
  PGraph g;
  std::map<std::string, VertexId> ids;

  Builder(std::vector<std::string> actions, std::vector<std::string> observations) {
    Alphabet a, y;
    for (auto& n : actions) a.intern(n);
    for (auto& n : observations) y.intern(n);
    g = PGraph(std::move(a), std::move(y));
  }
  VertexId vertex(VertexKind k, const std::string& name) { return ids[name] = g.add_vertex(k, name); }
  void edge(const std::string& from, const std::string& to, const std::vector<std::string>& labels) {
    const VertexId s = ids.at(from);
    const Alphabet& a = g.kind(s) == VertexKind::action ? g.actions() : g.observations();
    g.add_edge(s, ids.at(to), a.set_of(labels));
  }
  std::vector<VertexId> set(const std::vector<std::string>& names) const {
    std::vector<VertexId> out;
    for (auto& n : names) out.push_back(ids.at(n));
    std::sort(out.begin(), out.end());
    return out;
  }
};

ProblemFile track(std::size_t n) {
  if (n < 3) throw ValidationError("a track needs at least 3 segments");
  std::vector<std::string> obs{"o"};
  for (std::size_t i = 1; i <= n; ++i) obs.push_back("o" + std::to_string(i));
  Builder b({"f", "b"}, obs);
  auto s = [](std::size_t i) { return "s" + std::to_string(i); };
  auto m = [](std::size_t i) { return "m" + std::to_string(i); };
  for (std::size_t i = 1; i <= n; ++i) b.vertex(VertexKind::observation, s(i));
  for (std::size_t i = 1; i <= n; ++i) b.vertex(VertexKind::action, m(i));
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::string> seen{"o" + std::to_string(i)};
    if (i + 1 >= n) seen.push_back("o");
    b.edge(s(i), m(i), seen);
    b.edge(m(i), s(i % n + 1), {"f"});
    b.edge(m(i), s((i + n - 2) % n + 1), {"b"});
  }
  b.g.set_initial(b.set({s(1), n >= 5 ? s(3) : s(2)}));

  ProblemFile f;
  f.name = n == 6 ? "track-cyclic" : "track-" + std::to_string(n);
  f.description = "cyclic track with " + std::to_string(n) + " segments; an overlap reading at the kink";
  f.problem = PlanningProblem{b.g, b.set({s(n - 1)})};
  const Alphabet& y = f.problem.world.observations();
  // Angular order: o1 .. o_{n-1}, o, o_n, back to o1.
  std::vector<SymbolId> ring;
  for (std::size_t i = 1; i < n; ++i) ring.push_back(*y.find("o" + std::to_string(i)));
  ring.push_back(*y.find("o"));
  ring.push_back(*y.find("o" + std::to_string(n)));
  std::vector<std::pair<SymbolId, SymbolId>> pairs;
  for (std::size_t i = 0; i < ring.size(); ++i) pairs.emplace_back(ring[i], ring[(i + 1) % ring.size()]);
  f.spec.neighbor = NeighborRelation(y.all(), pairs);
  f.spec.contiguous = true;
  return f;
}

ProblemFile grid_office() {
  const std::vector<std::string> poses{"1E", "2E", "3E", "4E", "5E", "6E", "5N", "7N", "C", "6S", "ST"};
  std::vector<std::string> obs;
  for (auto& p : poses) obs.push_back("at-" + p);
  Builder b({"f1", "f2", "L", "R"}, obs);
  for (auto& p : poses) b.vertex(VertexKind::observation, p);
  for (auto& p : poses) b.vertex(VertexKind::action, p + "'");
  for (auto& p : poses) b.edge(p, p + "'", {"at-" + p});
  for (int i = 1; i <= 6; ++i) {
    const std::string here = std::to_string(i) + "E'";
    if (i + 1 <= 6) b.edge(here, std::to_string(i + 1) + "E", {"f1"});
    if (i + 2 <= 6 && i != 5) b.edge(here, std::to_string(i + 2) + "E", {"f2"});
  }
  b.edge("5E'", "5N", {"L"});
  b.edge("6E'", "6S", {"R"});
  b.edge("5N'", "7N", {"f1"});
  b.edge("5N'", "C", {"f2"});
  b.edge("7N'", "C", {"f1"});
  b.edge("6S'", "ST", {"f1"});
  b.g.set_initial(b.set({"1E", "2E"}));

  ProblemFile f;
  f.name = "grid-office";
  f.description = "office corridor with a charging station and a stairwell (reconstructed layout)";
  f.problem = PlanningProblem{b.g, b.set({"C"})};
  return f;
}

ProblemFile corridor() {
  Builder b({"f", "b"}, {"d1", "d2", "d3", "d4"});
  for (int i = 1; i <= 4; ++i) b.vertex(VertexKind::observation, "c" + std::to_string(i));
  b.vertex(VertexKind::observation, "stairs");
  for (int i = 1; i <= 4; ++i) b.vertex(VertexKind::action, "c" + std::to_string(i) + "'");
  for (int i = 1; i <= 4; ++i) {
    const std::string c = "c" + std::to_string(i);
    b.edge(c, c + "'", {"d" + std::to_string(i)});
    if (i < 4) b.edge(c + "'", "c" + std::to_string(i + 1), {"f"});
    b.edge(c + "'", i > 1 ? "c" + std::to_string(i - 1) : "stairs", {"b"});
  }
  b.g.set_initial(b.set({"c1", "c2", "c3"}));

  ProblemFile f;
  f.name = "corridor";
  f.description = "hallway with a charger at the east end and stairs to the west";
  f.problem = PlanningProblem{b.g, b.set({"c4"})};
  return f;
}

}  // namespace

std::vector<std::string> scenario_names() { return {"track-cyclic", "grid-office", "corridor"}; }

ProblemFile track_scenario(std::size_t segments) { return track(segments); }

ProblemFile builtin_scenario(std::string_view name) {
  if (name == "track-cyclic") return track(6);
  if (name == "grid-office") return grid_office();
  if (name == "corridor") return corridor();
  throw LookupError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace coversynth
