// Python module `lwheel`: generators, audits, detectors and width
// certificates over layered wheels.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lwheel/audit.hpp"
#include "lwheel/detectors.hpp"
#include "lwheel/errors.hpp"
#include "lwheel/generate.hpp"
#include "lwheel/io.hpp"
#include "lwheel/width.hpp"

namespace py = pybind11;
using namespace lwheel;

namespace {

LengthPolicy make_policy(const std::string& policy, std::optional<std::size_t> m) {
  if (policy == "uniform") {
    if (!m) throw InputError("policy 'uniform' needs m");
    return LengthPolicy::uniform(*m);
  }
  if (m) throw InputError("m is only meaningful with policy 'uniform'");
  if (policy == "minimal") return LengthPolicy::minimal();
  if (policy == "special") return LengthPolicy::special();
  throw InputError("unknown policy '" + policy + "'");
}

py::dict violation_dict(const Violation& v) {
  py::dict d;
  d["code"] = v.code;
  d["message"] = v.message;
  d["vertices"] = v.vertices;
  if (v.span)
    d["span"] = py::make_tuple(v.span->layer, v.span->lo, v.span->hi);
  else
    d["span"] = py::none();
  return d;
}

py::list report_list(const AuditReport& r) {
  py::list out;
  for (const auto& v : r.violations) out.append(violation_dict(v));
  return out;
}

py::object witness_obj(const std::optional<Witness>& w) {
  if (!w) return py::none();
  py::dict d;
  d["kind"] = to_string(w->kind);
  d["vertices"] = w->vertices;
  d["roles"] = w->roles;
  return d;
}

Budget make_budget(std::optional<std::size_t> max_nodes, std::optional<long> deadline_ms) {
  Budget b;
  if (max_nodes) b.max_nodes_expanded = *max_nodes;
  if (deadline_ms) b.deadline = std::chrono::milliseconds(*deadline_ms);
  return b;
}

py::dict pattern_dict(const PatternReport& r) {
  py::dict d;
  d["present"] = to_string(r.present());
  d["complete"] = r.complete;
  d["nodes_expanded"] = r.nodes_expanded;
  d["witness"] = witness_obj(r.witness);
  return d;
}

Graph graph_from(const std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); }

}  // namespace

PYBIND11_MODULE(lwheel, m) {
  m.doc() = "Layered wheels: construction, audits, pattern detection and width certificates";

  py::register_exception<IntegrityError>(m, "IntegrityError");
  py::register_exception<UnsupportedPolicyError>(m, "UnsupportedPolicyError");
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  // The module attribute keeps the type alive; a borrowed handle suffices.
  static py::handle feasibility = py::exception<FeasibilityError>(m, "FeasibilityError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const FeasibilityError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(feasibility)(e.what());
      exc.attr("minimal_m") = e.minimal_m();
      PyErr_SetObject(feasibility.ptr(), exc.ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from), py::arg("n"), py::arg("edges"))
      .def_property_readonly("order", &Graph::order)
      .def_property_readonly("size", &Graph::size)
      .def("edges", &Graph::edges)
      .def("adjacent", &Graph::adjacent)
      .def("neighbors", [](const Graph& g, Vertex v) {
        auto s = g.neighbors(v);
        return std::vector<Vertex>(s.begin(), s.end());
      })
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

  py::class_<LayeredWheel>(m, "Wheel")
      .def_property_readonly("flavor", [](const LayeredWheel& w) { return to_string(w.flavor()); })
      .def_property_readonly("l", &LayeredWheel::l)
      .def_property_readonly("k", &LayeredWheel::k)
      .def_property_readonly("policy", [](const LayeredWheel& w) { return to_string(w.policy().mode); })
      .def_property_readonly("m", [](const LayeredWheel& w) -> std::optional<std::size_t> {
        if (w.policy().mode != LengthPolicy::Mode::uniform) return std::nullopt;
        return w.policy().m;
      })
      .def_property_readonly("graph", &LayeredWheel::graph)
      .def_property_readonly("layers", &LayeredWheel::layers)
      .def("vertex_type", [](const LayeredWheel& w, Vertex v) { return w.info(v).vtype; })
      .def("ancestors", [](const LayeredWheel& w, Vertex v) { return w.info(v).ancestors; })
      .def("to_json", &wheel_to_json)
      .def("to_dot", &wheel_to_dot);

  m.def(
      "generate_ttf",
      [](std::size_t l, std::size_t k, const std::string& policy, std::optional<std::size_t> mm) {
        return generate_ttf(l, k, make_policy(policy, mm));
      },
      py::arg("l"), py::arg("k"), py::arg("policy") = "minimal", py::arg("m") = py::none());
  m.def(
      "generate_ehf",
      [](std::size_t l, std::size_t k, const std::string& policy, std::optional<std::size_t> mm,
         const std::string& variant) {
        if (variant != "standard" && variant != "pyramid") throw InputError("unknown variant '" + variant + "'");
        return generate_ehf(l, k, make_policy(policy, mm),
                            variant == "pyramid" ? EhfVariant::pyramid : EhfVariant::standard);
      },
      py::arg("l"), py::arg("k"), py::arg("policy") = "minimal", py::arg("m") = py::none(),
      py::arg("variant") = "standard");
  m.def(
      "minimal_uniform_m",
      [](const std::string& flavor, std::size_t l, std::size_t k) {
        return minimal_uniform_m(flavor_from_string(flavor), l, k);
      },
      py::arg("flavor"), py::arg("l"), py::arg("k"));
  m.def("wheel_from_json", &wheel_from_json, py::arg("text"));

  m.def("validate_axioms", [](const LayeredWheel& w) { return report_list(validate_axioms(w)); });
  m.def("parity_audit", [](const LayeredWheel& w) { return report_list(parity_audit(w)); });
  m.def("uniformity_audit", [](const LayeredWheel& w) {
    const auto r = uniformity_audit(w);
    py::dict d;
    d["special"] = r.special;
    d["uniform_m"] = r.uniform_m;
    d["neighbor_growth_ok"] = r.neighbor_growth_ok;
    return d;
  });

  m.def(
      "enumerate_holes",
      [](const Graph& g, std::optional<std::size_t> max_len, std::size_t keep, bool stop_at_even,
         std::optional<std::size_t> max_nodes, std::optional<long> deadline_ms) {
        HoleQuery q;
        q.max_len = max_len;
        q.keep = keep;
        q.stop_at_even = stop_at_even;
        const auto r = enumerate_holes(g, q, make_budget(max_nodes, deadline_ms));
        py::dict d;
        py::list holes;
        for (const auto& w : r.holes) holes.append(w.roles.at("cycle"));
        d["holes"] = holes;
        d["holes_found"] = r.holes_found;
        d["min_hole_len"] = r.min_hole_len;
        d["has_even_hole"] = to_string(r.has_even_hole);
        d["complete"] = r.complete;
        d["nodes_expanded"] = r.nodes_expanded;
        return d;
      },
      py::arg("graph"), py::arg("max_len") = py::none(), py::arg("keep") = 16, py::arg("stop_at_even") = false,
      py::arg("max_nodes") = py::none(), py::arg("deadline_ms") = py::none());
  for (const auto& [name, fn] : {std::pair{"find_theta", &find_theta}, std::pair{"find_pyramid", &find_pyramid},
                                 std::pair{"find_prism", &find_prism}})
    m.def(
        name,
        [fn = fn](const Graph& g, std::optional<std::size_t> max_nodes, std::optional<long> deadline_ms) {
          return pattern_dict(fn(g, make_budget(max_nodes, deadline_ms)));
        },
        py::arg("graph"), py::arg("max_nodes") = py::none(), py::arg("deadline_ms") = py::none());
  m.def("pyramid_witness_in_variant",
        [](const LayeredWheel& w) { return witness_obj(pyramid_witness_in_variant(w)); });

  m.def("minor_branch_sets", [](const LayeredWheel& w) { return minor_certificate(w).branch_sets; });
  m.def("path_decomposition", [](const LayeredWheel& w) {
    const auto r = path_decomposition(w);
    py::dict d;
    d["bags"] = r.pd.bags;
    d["width"] = r.width;
    d["max_coverage"] = r.max_coverage;
    return d;
  });
  m.def("cutrank", [](const Graph& g, const std::vector<Vertex>& x) { return cutrank(g, x); });
  m.def("girth", &girth);

  m.def(
      "export_graph",
      [](const Graph& g, const std::string& format) { return export_graph(g, graph_format_from_string(format)); },
      py::arg("graph"), py::arg("format"));
  m.def(
      "import_graph",
      [](const std::string& text, const std::string& format) {
        return import_graph(text, graph_format_from_string(format));
      },
      py::arg("text"), py::arg("format"));
}
