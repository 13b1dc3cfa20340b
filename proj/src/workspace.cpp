#include "coversynth/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "json.hpp"

namespace coversynth {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string Diagnostic::describe() const {
  std::string out = code;
  if (line != 0) out += " (line " + std::to_string(line) + ")";
  if (!field.empty()) out += " at " + field;
  return out + ": " + message;
}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += (out.empty() ? "" : "\n") + d.describe();
  return out;
}

}  // namespace

ProblemError::ProblemError(std::vector<Diagnostic> diagnostics)
    : ValidationError(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

std::size_t line_of(std::string_view text, std::size_t offset) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + std::min(offset, text.size()), '\n'));
}

// JSON pointer of every value in `text` mapped to the line it starts on. The
// text is already known to be valid JSON.
std::map<std::string, std::size_t> value_lines(std::string_view text) {
  struct Frame {
    bool object;
    std::size_t index = 0;
    std::string key;
    bool want_key = true;
  };
  std::map<std::string, std::size_t> out;
  std::vector<Frame> stack;
  std::size_t line = 1;

  auto pointer = [&] {
    std::string p;
    for (const Frame& f : stack) {
      p += '/';
      if (!f.object) {
        p += std::to_string(f.index);
        continue;
      }
      for (char c : f.key) {
        if (c == '~') p += "~0";
        else if (c == '/') p += "~1";
        else p += c;
      }
    }
    return p;
  };
  auto read_string = [&](std::size_t& i) {
    std::string s;
    for (++i; i < text.size() && text[i] != '"'; ++i) {
      if (text[i] == '\\') ++i;
      s += text[i];
    }
    return s;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().object) stack.back().want_key = true;
        else ++stack.back().index;
      }
      continue;
    }
    if (c == ':') {
      stack.back().want_key = false;
      continue;
    }
    if (c == '}' || c == ']') {
      stack.pop_back();
      continue;
    }
    if (c == '"' && !stack.empty() && stack.back().object && stack.back().want_key) {
      stack.back().key = read_string(i);
      continue;
    }
    out.emplace(pointer(), line);
    if (c == '{' || c == '[') {
      stack.push_back(Frame{c == '{', 0, {}, true});
    } else if (c == '"') {
      read_string(i);
    } else {
      while (i + 1 < text.size() && std::string_view(",}] \t\r\n").find(text[i + 1]) == std::string_view::npos) ++i;
    }
  }
  return out;
}

class ProblemReader {
 public:
  explicit ProblemReader(std::string_view text) : text_(text) {}

  ProblemFile read() {
    json doc;
    try {
      doc = json::parse(text_);
    } catch (const json::parse_error& e) {
      fail({"syntax", e.what(), "", line_of(text_, e.byte == 0 ? 0 : e.byte - 1)});
    }
    lines_ = value_lines(text_);
    if (!doc.is_object()) fail({"wrong-type", "problem file must be a JSON object", "", 1});

    ProblemFile f;
    const std::string schema = doc.value("schema", std::string());
    if (schema != kProblemSchema)
      note("schema-version", "expected schema \"" + std::string(kProblemSchema) + "\", found \"" + schema + "\"",
           "/schema");
    f.name = optional_string(doc, "name");
    f.description = optional_string(doc, "description");

    Alphabet actions = read_alphabet(doc, "actions");
    Alphabet observations = read_alphabet(doc, "observations");
    check_disjoint(actions, observations);
    PGraph g(std::move(actions), std::move(observations));
    read_vertices(doc, g);
    read_edges(doc, g);
    g.set_initial(read_vertex_list(doc, "initial", "unknown-vertex", "initial state", true));
    if (!g.initial().empty() && diagnostics_.empty()) {
      const VertexKind k = g.kind(g.initial().front());
      for (VertexId v : g.initial())
        if (g.kind(v) != k) note("heterogeneous-initial", "initial states mix action and observation vertices", "/initial");
    }
    f.problem.goal = read_vertex_list(doc, "goal", "unknown-goal-state", "goal state", true, &g);
    f.problem.world = std::move(g);
    read_constraints(doc, f);
    read_stipulation(doc, f);
    read_budgets(doc, f.budgets);
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (!known_keys().contains(it.key())) note("unknown-field", "unrecognized field \"" + it.key() + "\"", "/" + it.key());
    if (!diagnostics_.empty()) throw ProblemError(std::move(diagnostics_));
    return f;
  }

 private:
  static const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"schema",  "name",      "description", "actions",     "observations",
                                            "vertices", "edges",    "initial",     "goal",        "neighbors",
                                            "constraints", "stipulation", "budgets"};
    return keys;
  }

  [[noreturn]] void fail(Diagnostic d) {
    diagnostics_.push_back(std::move(d));
    throw ProblemError(std::move(diagnostics_));
  }

  void note(std::string code, std::string message, std::string field) {
    std::size_t line = 0;
    for (std::string p = field;; p = p.substr(0, p.rfind('/'))) {
      if (auto it = lines_.find(p); it != lines_.end()) {
        line = it->second;
        break;
      }
      if (p.empty()) break;
    }
    diagnostics_.push_back({std::move(code), std::move(message), std::move(field), line});
  }

  std::string optional_string(const json& doc, const char* key) {
    if (!doc.contains(key)) return {};
    if (!doc[key].is_string()) {
      note("wrong-type", std::string(key) + " must be a string", std::string("/") + key);
      return {};
    }
    return doc[key].get<std::string>();
  }

  const json* required_array(const json& doc, const char* key) {
    if (!doc.contains(key)) {
      note("missing-field", std::string("required field \"") + key + "\" is missing", "");
      return nullptr;
    }
    if (!doc[key].is_array()) {
      note("wrong-type", std::string(key) + " must be an array", std::string("/") + key);
      return nullptr;
    }
    return &doc[key];
  }

  Alphabet read_alphabet(const json& doc, const char* key) {
    Alphabet a;
    const json* arr = required_array(doc, key);
    if (!arr) return a;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string field = std::string("/") + key + "/" + std::to_string(i);
      const json& item = (*arr)[i];
      if (!item.is_string() || item.get<std::string>().empty()) {
        note("wrong-type", "event names must be non-empty strings", field);
        continue;
      }
      const std::string name = item.get<std::string>();
      if (a.find(name)) {
        note("duplicate-name", "event \"" + name + "\" declared twice", field);
        continue;
      }
      if (a.size() == kMaxSymbols) {
        note("too-many-events", "at most " + std::to_string(kMaxSymbols) + " events per alphabet", field);
        break;
      }
      a.intern(name);
    }
    return a;
  }

  void check_disjoint(const Alphabet& actions, const Alphabet& observations) {
    for (const std::string& n : observations.names())
      if (actions.find(n)) note("duplicate-name", "\"" + n + "\" is both an action and an observation", "/observations");
  }

  void read_vertices(const json& doc, PGraph& g) {
    const json* arr = required_array(doc, "vertices");
    if (!arr) return;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string field = "/vertices/" + std::to_string(i);
      const json& v = (*arr)[i];
      if (!v.is_object() || !v.contains("name") || !v["name"].is_string() || !v.contains("kind") ||
          !v["kind"].is_string()) {
        note("wrong-type", "vertex must be an object with string \"name\" and \"kind\"", field);
        continue;
      }
      const std::string name = v["name"].get<std::string>();
      const std::string kind = v["kind"].get<std::string>();
      if (name.empty()) {
        note("wrong-type", "vertex name must be non-empty", field + "/name");
        continue;
      }
      if (vertex_ids_.contains(name)) {
        note("duplicate-name", "vertex \"" + name + "\" declared twice", field + "/name");
        continue;
      }
      VertexKind k;
      if (kind == "action") {
        k = VertexKind::action;
      } else if (kind == "observation") {
        k = VertexKind::observation;
      } else {
        note("bad-kind", "vertex kind must be \"action\" or \"observation\", not \"" + kind + "\"", field + "/kind");
        continue;
      }
      vertex_ids_[name] = g.add_vertex(k, name);
    }
  }

  void read_edges(const json& doc, PGraph& g) {
    const json* arr = required_array(doc, "edges");
    if (!arr) return;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string field = "/edges/" + std::to_string(i);
      const json& e = (*arr)[i];
      if (!e.is_object() || !e.contains("from") || !e["from"].is_string() || !e.contains("to") || !e["to"].is_string() ||
          !e.contains("labels") || !e["labels"].is_array()) {
        note("wrong-type", "edge must be an object with string \"from\", \"to\" and a \"labels\" array", field);
        continue;
      }
      const auto from = lookup_vertex(e["from"].get<std::string>(), field + "/from", "unknown-vertex", "vertex");
      const auto to = lookup_vertex(e["to"].get<std::string>(), field + "/to", "unknown-vertex", "vertex");
      if (e["labels"].empty()) {
        note("empty-label-set", "edge has an empty label set", field + "/labels");
        continue;
      }
      if (!from || !to) continue;
      if (g.kind(*from) == g.kind(*to)) {
        note("not-bipartite", "edge joins two " + std::string(to_string(g.kind(*from))) + " vertices", field);
        continue;
      }
      const Alphabet& alphabet = g.kind(*from) == VertexKind::action ? g.actions() : g.observations();
      SymbolSet labels;
      bool ok = true;
      for (std::size_t j = 0; j < e["labels"].size(); ++j) {
        const json& l = e["labels"][j];
        const std::string lf = field + "/labels/" + std::to_string(j);
        if (!l.is_string()) {
          note("wrong-type", "labels must be strings", lf);
          ok = false;
          continue;
        }
        const auto id = alphabet.find(l.get<std::string>());
        if (!id) {
          const char* which = g.kind(*from) == VertexKind::action ? "action" : "observation";
          note("unknown-event", "\"" + l.get<std::string>() + "\" is not a declared " + which, lf);
          ok = false;
          continue;
        }
        labels.insert(*id);
      }
      if (ok) g.add_edge(*from, *to, labels);
    }
  }

  std::optional<VertexId> lookup_vertex(const std::string& name, const std::string& field, const char* code,
                                        const char* what) {
    const auto it = vertex_ids_.find(name);
    if (it == vertex_ids_.end()) {
      note(code, std::string("unknown ") + what + " \"" + name + "\"", field);
      return std::nullopt;
    }
    return it->second;
  }

  std::vector<VertexId> read_vertex_list(const json& doc, const char* key, const char* code, const char* what,
                                         bool non_empty, const PGraph* = nullptr) {
    std::vector<VertexId> out;
    const json* arr = required_array(doc, key);
    if (!arr) return out;
    if (non_empty && arr->empty()) note(std::string("empty-") + key, std::string(key) + " must not be empty", std::string("/") + key);
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string field = std::string("/") + key + "/" + std::to_string(i);
      if (!(*arr)[i].is_string()) {
        note("wrong-type", "state names must be strings", field);
        continue;
      }
      if (auto v = lookup_vertex((*arr)[i].get<std::string>(), field, code, what)) out.push_back(*v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::optional<std::size_t> read_count(const json& obj, const char* key, const std::string& base) {
    if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
    if (!obj[key].is_number_unsigned()) {
      note("wrong-type", std::string(key) + " must be a non-negative integer", base + "/" + key);
      return std::nullopt;
    }
    return obj[key].get<std::size_t>();
  }

  bool read_flag(const json& obj, const char* key, const std::string& base) {
    if (!obj.contains(key)) return false;
    if (!obj[key].is_boolean()) {
      note("wrong-type", std::string(key) + " must be a boolean", base + "/" + key);
      return false;
    }
    return obj[key].get<bool>();
  }

  void read_constraints(const json& doc, ProblemFile& f) {
    const Alphabet& obs = f.problem.world.observations();
    if (doc.contains("neighbors")) {
      std::vector<std::pair<SymbolId, SymbolId>> pairs;
      const json& arr = doc["neighbors"];
      if (!arr.is_array()) {
        note("wrong-type", "neighbors must be an array of pairs", "/neighbors");
      } else {
        for (std::size_t i = 0; i < arr.size(); ++i) {
          const std::string field = "/neighbors/" + std::to_string(i);
          const json& p = arr[i];
          if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
            note("wrong-type", "a neighbor entry is a pair of observation names", field);
            continue;
          }
          const auto a = obs.find(p[0].get<std::string>());
          const auto b = obs.find(p[1].get<std::string>());
          if (!a || !b) {
            note("unknown-event", "neighbor pair names an undeclared observation", field);
            continue;
          }
          pairs.emplace_back(*a, *b);
        }
        f.spec.neighbor = NeighborRelation(obs.all(), pairs);
      }
    }
    if (!doc.contains("constraints")) return;
    const json& c = doc["constraints"];
    if (!c.is_object()) {
      note("wrong-type", "constraints must be an object", "/constraints");
      return;
    }
    static const std::set<std::string> keys{"partition", "contiguous", "outputting", "overlapping", "wide",
                                            "wide_is_maximum"};
    for (auto it = c.begin(); it != c.end(); ++it)
      if (!keys.contains(it.key()))
        note("unknown-field", "unrecognized constraint \"" + it.key() + "\"", "/constraints/" + it.key());
    f.spec.partition = read_flag(c, "partition", "/constraints");
    f.spec.contiguous = read_flag(c, "contiguous", "/constraints");
    f.spec.wide_is_maximum = read_flag(c, "wide_is_maximum", "/constraints");
    f.spec.outputting = read_count(c, "outputting", "/constraints");
    f.spec.overlapping = read_count(c, "overlapping", "/constraints");
    f.spec.wide = read_count(c, "wide", "/constraints");
    try {
      f.spec.validate();
    } catch (const SpecError& e) {
      note("bad-constraint", e.what(), "/constraints");
    }
  }

  void read_stipulation(const json& doc, ProblemFile& f) {
    if (!doc.contains("stipulation") || doc["stipulation"].is_null()) return;
    const json& s = doc["stipulation"];
    std::string text;
    std::string field = "/stipulation";
    if (s.is_string()) {
      text = s.get<std::string>();
    } else if (s.is_object() && s.contains("formula") && s["formula"].is_string()) {
      if (s.contains("grammar") && s["grammar"] != kStipulationGrammar)
        note("schema-version", "unsupported stipulation grammar version", "/stipulation/grammar");
      text = s["formula"].get<std::string>();
      field += "/formula";
    } else {
      note("wrong-type", "stipulation must be a formula string or {\"grammar\", \"formula\"}", field);
      return;
    }
    if (!diagnostics_.empty()) return;  // state names need a sound world
    try {
      f.stipulation = parse_stipulation(text, f.problem.world);
    } catch (const ValidationError& e) {
      note("bad-stipulation", e.what(), field);
    }
  }

  void read_budgets(const json& doc, Budgets& b) {
    if (!doc.contains("budgets")) return;
    const json& o = doc["budgets"];
    if (!o.is_object()) {
      note("wrong-type", "budgets must be an object", "/budgets");
      return;
    }
    b.max_tree_vertices = read_count(o, "max_tree_vertices", "/budgets");
    b.max_tree_depth = read_count(o, "max_tree_depth", "/budgets");
    b.max_cover_list = read_count(o, "max_cover_list", "/budgets");
    b.max_combinations = read_count(o, "max_combinations", "/budgets");
    b.max_intersect_results = read_count(o, "max_intersect_results", "/budgets");
  }

  std::string_view text_;
  std::map<std::string, std::size_t> lines_;
  std::map<std::string, VertexId> vertex_ids_;
  std::vector<Diagnostic> diagnostics_;
};

ojson names_of(const Alphabet& a, SymbolSet s) {
  ojson arr = ojson::array();
  for (const std::string& n : a.names_of(s)) arr.push_back(n);
  return arr;
}

ojson graph_json(const PGraph& g, const char* schema) {
  ojson out;
  if (schema) out["schema"] = schema;
  out["actions"] = g.actions().names();
  out["observations"] = g.observations().names();
  ojson vs = ojson::array();
  for (VertexId v = 0; v < g.vertex_count(); ++v) vs.push_back({{"name", g.name(v)}, {"kind", to_string(g.kind(v))}});
  out["vertices"] = std::move(vs);
  ojson es = ojson::array();
  for (const Edge& e : g.edges()) {
    const Alphabet& a = e.label_kind == VertexKind::action ? g.actions() : g.observations();
    es.push_back({{"from", g.name(e.source)}, {"to", g.name(e.target)}, {"labels", names_of(a, e.labels)}});
  }
  out["edges"] = std::move(es);
  ojson init = ojson::array();
  for (VertexId v : g.initial()) init.push_back(g.name(v));
  out["initial"] = std::move(init);
  return out;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) { return ProblemReader(text).read(); }

std::string export_problem(const ProblemFile& f) {
  const PGraph& g = f.problem.world;
  ojson out;
  out["schema"] = kProblemSchema;
  if (!f.name.empty()) out["name"] = f.name;
  if (!f.description.empty()) out["description"] = f.description;
  const ojson graph = graph_json(g, nullptr);
  for (auto& [k, v] : graph.items()) out[k] = v;
  ojson goal = ojson::array();
  for (VertexId v : f.problem.goal) goal.push_back(g.name(v));
  out["goal"] = std::move(goal);
  if (f.spec.neighbor) {
    ojson pairs = ojson::array();
    for (auto [a, b] : f.spec.neighbor->pairs())
      pairs.push_back(ojson::array({g.observations().name(a), g.observations().name(b)}));
    out["neighbors"] = std::move(pairs);
  }
  ojson c = ojson::object();
  if (f.spec.partition) c["partition"] = true;
  if (f.spec.contiguous) c["contiguous"] = true;
  if (f.spec.outputting) c["outputting"] = *f.spec.outputting;
  if (f.spec.overlapping) c["overlapping"] = *f.spec.overlapping;
  if (f.spec.wide) c["wide"] = *f.spec.wide;
  if (f.spec.wide_is_maximum) c["wide_is_maximum"] = true;
  if (!c.empty()) out["constraints"] = std::move(c);
  if (f.stipulation)
    out["stipulation"] = {{"grammar", kStipulationGrammar}, {"formula", f.stipulation->to_string(g)}};
  ojson b = ojson::object();
  auto put = [&](const char* k, const std::optional<std::size_t>& v) {
    if (v) b[k] = *v;
  };
  put("max_tree_vertices", f.budgets.max_tree_vertices);
  put("max_tree_depth", f.budgets.max_tree_depth);
  put("max_cover_list", f.budgets.max_cover_list);
  put("max_combinations", f.budgets.max_combinations);
  put("max_intersect_results", f.budgets.max_intersect_results);
  if (!b.empty()) out["budgets"] = std::move(b);
  return out.dump(2) + "\n";
}

std::string export_plan(const Plan& plan) {
  ojson out = graph_json(plan.graph, kPlanSchema);
  ojson term = ojson::array();
  for (VertexId v : plan.termination) term.push_back(plan.graph.name(v));
  out["termination"] = std::move(term);
  return out.dump(2) + "\n";
}

Plan parse_plan(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemError({{"syntax", e.what(), "", line_of(text, e.byte == 0 ? 0 : e.byte - 1)}});
  }
  auto bad = [](const std::string& field, const std::string& msg) {
    return ProblemError({{"wrong-type", msg, field, 0}});
  };
  if (!doc.is_object() || doc.value("schema", std::string()) != kPlanSchema)
    throw ProblemError({{"schema-version", std::string("expected schema \"") + kPlanSchema + "\"", "/schema", 0}});
  Alphabet actions, readings;
  try {
    for (const auto& n : doc.at("actions")) actions.intern(n.get<std::string>());
    for (const auto& n : doc.at("observations")) readings.intern(n.get<std::string>());
    PGraph g(std::move(actions), std::move(readings));
    std::map<std::string, VertexId> ids;
    for (const auto& v : doc.at("vertices")) {
      const std::string kind = v.at("kind").get<std::string>();
      if (kind != "action" && kind != "observation") throw bad("/vertices", "unknown vertex kind \"" + kind + "\"");
      const std::string name = v.at("name").get<std::string>();
      if (ids.contains(name)) throw ProblemError({{"duplicate-name", "vertex \"" + name + "\" declared twice", "/vertices", 0}});
      ids[name] = g.add_vertex(kind == "action" ? VertexKind::action : VertexKind::observation, name);
    }
    auto id = [&](const json& n, const char* field) {
      const auto it = ids.find(n.get<std::string>());
      if (it == ids.end())
        throw ProblemError({{"unknown-vertex", "unknown vertex \"" + n.get<std::string>() + "\"", field, 0}});
      return it->second;
    };
    for (const auto& e : doc.at("edges")) {
      const VertexId from = id(e.at("from"), "/edges");
      const VertexId to = id(e.at("to"), "/edges");
      const Alphabet& a = g.kind(from) == VertexKind::action ? g.actions() : g.observations();
      SymbolSet labels;
      for (const auto& l : e.at("labels")) {
        const auto s = a.find(l.get<std::string>());
        if (!s) throw ProblemError({{"unknown-event", "unknown label \"" + l.get<std::string>() + "\"", "/edges", 0}});
        labels.insert(*s);
      }
      g.add_edge(from, to, labels);
    }
    std::vector<VertexId> init, term;
    for (const auto& n : doc.at("initial")) init.push_back(id(n, "/initial"));
    for (const auto& n : doc.at("termination")) term.push_back(id(n, "/termination"));
    g.set_initial(std::move(init));
    std::sort(term.begin(), term.end());
    term.erase(std::unique(term.begin(), term.end()), term.end());
    return Plan{std::move(g), std::move(term)};
  } catch (const json::exception& e) {
    throw bad("", e.what());
  }
}

std::string export_cover(const Cover& cover, const Alphabet& observations) {
  ojson out = ojson::array();
  for (SymbolSet b : cover.blocks()) out.push_back(names_of(observations, b));
  return out.dump();
}

Cover parse_cover(std::string_view text, const Alphabet& observations) {
  std::string s(text);
  // Display form: braces become brackets, bare names become strings.
  if (s.find('{') != std::string::npos || s.find('"') == std::string::npos) {
    std::string j;
    for (std::size_t i = 0; i < s.size();) {
      const char c = s[i];
      if (c == '{') {
        j += '[';
        ++i;
      } else if (c == '}') {
        j += ']';
        ++i;
      } else if (c == '[' || c == ']' || c == ',' || std::isspace(static_cast<unsigned char>(c))) {
        j += c;
        ++i;
      } else {
        std::size_t k = i;
        while (k < s.size() && std::string_view("{}[], \t\r\n").find(s[k]) == std::string_view::npos) ++k;
        const std::string name = s.substr(i, k - i);
        if (name != "ε") j += '"' + name + '"';
        i = k;
      }
    }
    s = j;
  }
  json doc;
  try {
    doc = json::parse(s);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("cover: ") + e.what());
  }
  if (!doc.is_array()) throw ValidationError("cover must be a list of blocks");
  std::vector<SymbolSet> blocks;
  for (const auto& b : doc) {
    if (!b.is_array()) throw ValidationError("cover block must be a list of observations");
    if (b.empty()) continue;  // "[ε]" in display form
    SymbolSet set;
    for (const auto& n : b) {
      if (!n.is_string()) throw ValidationError("observation names must be strings");
      const auto id = observations.find(n.get<std::string>());
      if (!id) throw ValidationError("cover names unknown observation \"" + n.get<std::string>() + "\"");
      set.insert(*id);
    }
    blocks.push_back(set);
  }
  return Cover(std::move(blocks));
}

}  // namespace coversynth
