#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "coversynth/workspace.hpp"

namespace py = pybind11;
using namespace coversynth;

namespace {

using PyCover = std::vector<std::vector<std::string>>;

PyCover to_py(const Cover& c, const Alphabet& a) {
  PyCover out;
  for (SymbolSet b : c.blocks()) out.push_back(a.names_of(b));
  return out;
}

Cover from_py(const PyCover& blocks, const Alphabet& a) {
  std::vector<SymbolSet> sets;
  for (const auto& b : blocks) {
    SymbolSet s;
    for (const auto& n : b) {
      const auto id = a.find(n);
      if (!id) throw ValidationError("unknown observation '" + n + "'");
      s.insert(*id);
    }
    sets.push_back(s);
  }
  return Cover(std::move(sets));
}

// Sorted alphabet over every name used by the given covers.
Alphabet alphabet_of(std::initializer_list<const PyCover*> covers, const std::vector<std::string>& extra = {}) {
  std::set<std::string> names(extra.begin(), extra.end());
  for (const PyCover* c : covers)
    for (const auto& b : *c) names.insert(b.begin(), b.end());
  Alphabet a;
  for (const auto& n : names) a.intern(n);
  return a;
}

struct Solution {
  std::shared_ptr<const ProblemFile> problem;
  std::shared_ptr<const SolutionSet> solution;

  const Alphabet& obs() const { return problem->problem.world.observations(); }
};

}  // namespace

PYBIND11_MODULE(_coversynth, m) {
  m.doc() = "Joint plan and sensor design over p-graph worlds";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ResourceError>(m, "ResourceError", m.attr("Error").ptr());
  py::register_exception<ValidationError>(m, "ValidationError", m.attr("Error").ptr());
  py::register_exception<NotASolutionError>(m, "NotASolutionError", m.attr("Error").ptr());

  py::class_<ProblemFile, std::shared_ptr<ProblemFile>>(m, "Problem")
      .def_static("from_json", [](const std::string& text) { return std::make_shared<ProblemFile>(parse_problem(text)); })
      .def_static("scenario", [](const std::string& name) { return std::make_shared<ProblemFile>(builtin_scenario(name)); })
      .def("to_json", [](const ProblemFile& f) { return export_problem(f); })
      .def_property_readonly("name", [](const ProblemFile& f) { return f.name; })
      .def_property_readonly("actions", [](const ProblemFile& f) { return f.problem.world.actions().names(); })
      .def_property_readonly("observations", [](const ProblemFile& f) { return f.problem.world.observations().names(); })
      .def_property_readonly("vertex_count", [](const ProblemFile& f) { return f.problem.world.vertex_count(); })
      .def_property_readonly("initial", [](const ProblemFile& f) {
        std::vector<std::string> out;
        for (VertexId v : f.problem.world.initial()) out.push_back(f.problem.world.name(v));
        return out;
      })
      .def_property_readonly("goal", [](const ProblemFile& f) {
        std::vector<std::string> out;
        for (VertexId v : f.problem.goal) out.push_back(f.problem.world.name(v));
        return out;
      })
      .def("tree_dot", [](const ProblemFile& f) {
        const StipulationFormula* stip = f.stipulation ? &*f.stipulation : nullptr;
        return tree_to_dot(build_tree(f.problem, f.spec, stip), f.problem.world);
      });

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("upper_covers",
                             [](const Solution& s) {
                               std::vector<PyCover> out;
                               for (const Cover& c : s.solution->root_covers()) out.push_back(to_py(c, s.obs()));
                               return out;
                             })
      .def_property_readonly("tree_size", [](const Solution& s) { return s.solution->tree().size(); })
      .def_property_readonly("sensorless", [](const Solution& s) { return s.solution->sensorless(); })
      .def_property_readonly("solvable", [](const Solution& s) { return s.solution->solvable(); })
      .def("closure_count", [](const Solution& s) { return s.solution->closure_count(); })
      .def(
          "constrained_closure",
          [](const Solution& s, std::size_t budget) {
            std::vector<PyCover> out;
            for (const Cover& c : s.solution->constrained_closure(budget)) out.push_back(to_py(c, s.obs()));
            return out;
          },
          py::arg("budget") = 0)
      .def("admits", [](const Solution& s, const PyCover& c) { return s.solution->admits(from_py(c, s.obs())); })
      .def("plan",
           [](const Solution& s, const PyCover& c) {
             return export_plan(extract_plan(*s.solution, from_py(c, s.obs()), s.problem->problem.world));
           })
      .def("to_json", [](const Solution& s, bool plans) {
        SolutionExport opt;
        opt.plans = plans;
        return export_solution(*s.solution, s.problem->problem.world, opt);
      }, py::arg("plans") = false);

  m.def(
      "synthesize",
      [](std::shared_ptr<ProblemFile> f, unsigned jobs, bool compact) {
        SynthConfig sc;
        sc.workers = jobs;
        sc.compact = compact;
        const StipulationFormula* stip = f->stipulation ? &*f->stipulation : nullptr;
        auto solution = std::make_shared<SolutionSet>(synthesize(build_tree(f->problem, f->spec, stip), f->spec, sc));
        return Solution{std::move(f), std::move(solution)};
      },
      py::arg("problem"), py::arg("jobs") = 1, py::arg("compact") = true, py::call_guard<py::gil_scoped_release>());

  m.def(
      "verify",
      [](const ProblemFile& f, const std::string& plan_json, const PyCover& cover) {
        const Plan plan = parse_plan(plan_json);
        const VerifyReport r = solves(plan, f.problem, from_py(cover, f.problem.world.observations()));
        py::dict out;
        out["solves"] = r.solves;
        out["violation"] = r.solves ? py::object(py::none()) : py::object(py::str(to_string(r.violation)));
        out["detail"] = r.detail;
        out["events"] = r.events;
        out["bound"] = r.bound;
        return out;
      },
      py::arg("problem"), py::arg("plan"), py::arg("cover"));

  m.def("oracle", [](const ProblemFile& f) {
    OracleBounds ob;
    if (f.spec.has_block_constraints()) ob.block_filter = &f.spec;
    std::vector<PyCover> out;
    for (const Cover& c : oracle(f.problem, ob)) out.push_back(to_py(c, f.problem.world.observations()));
    return out;
  });

  m.def("project", [](const PyCover& c, const std::vector<std::string>& domain) {
    const Alphabet a = alphabet_of({&c}, domain);
    return to_py(project(from_py(c, a), a.set_of(domain)), a);
  });
  m.def("intersect", [](const PyCover& c1, const PyCover& c2) {
    const Alphabet a = alphabet_of({&c1, &c2});
    std::vector<PyCover> out;
    for (const Cover& c : intersect(from_py(c1, a), from_py(c2, a))) out.push_back(to_py(c, a));
    return out;
  });
  m.def("upper_covers", [](const std::vector<PyCover>& covers) {
    std::set<std::string> names;
    for (const auto& c : covers)
      for (const auto& b : c) names.insert(b.begin(), b.end());
    Alphabet a;
    for (const auto& n : names) a.intern(n);
    CoverList list;
    for (const auto& c : covers) list.insert(from_py(c, a));
    std::vector<PyCover> out;
    for (const Cover& c : upper_covers(list)) out.push_back(to_py(c, a));
    return out;
  });
  m.def("scenario_names", &scenario_names);
}
