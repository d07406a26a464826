#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ncx/engine.hpp"
#include "ncx/error.hpp"
#include "ncx/extremals.hpp"
#include "ncx/numtheory.hpp"

namespace py = pybind11;
using namespace ncx;

namespace {

SymbolLibrary library(const std::string& flag, unsigned m) {
  const auto id = library_from_flag(flag);
  if (!id) throw Error(ErrorCode::InvalidArgument, "unknown library '" + flag + "'");
  return SymbolLibrary(*id, m);
}

CostMetric metric(const std::string& flag) {
  const auto m = metric_from_flag(flag);
  if (!m) throw Error(ErrorCode::InvalidArgument, "unknown metric '" + flag + "'");
  return *m;
}

void require_index(const ComplexityTable& t, std::uint64_t n) {
  if (n < 1 || n > t.n_max()) {
    throw Error(ErrorCode::OutOfRange, std::to_string(n) + " outside 1.." + std::to_string(t.n_max()));
  }
}

py::dict record(const extremal::ExtremalRecord& r) {
  py::dict d;
  d["k"] = r.k;
  d["u_k"] = r.u_k;
  d["u_complete"] = r.u_complete;
  d["M_k"] = r.m_k;
  d["M_complete"] = r.m_complete;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Integer complexity tables and optimal presentations.";

  static py::exception<Error> error(m, "NcxError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<ComplexityTable>(m, "Table")
      .def_property_readonly("library", [](const ComplexityTable& t) { return std::string(t.library().flag()); })
      .def_property_readonly("m", [](const ComplexityTable& t) { return t.library().m_param(); })
      .def_property_readonly("metric", [](const ComplexityTable& t) { return std::string(to_string(t.metric())); })
      .def_property_readonly("n_max", &ComplexityTable::n_max)
      .def_property_readonly("max_cost", &ComplexityTable::max_cost)
      .def("__len__", &ComplexityTable::n_max)
      .def("__getitem__", [](const ComplexityTable& t, std::uint64_t n) { return complexity(t, n); })
      .def("costs", [](const ComplexityTable& t) {
        return std::vector<cost_t>(t.costs().begin() + 1, t.costs().end());
      }, "Costs of 1..n_max.")
      .def("presentation", [](const ComplexityTable& t, std::uint64_t n) {
        require_index(t, n);
        return render(reconstruct_one(t, n));
      })
      .def("provenance", [](const ComplexityTable& t, std::uint64_t n) {
        require_index(t, n);
        static const char* names[] = {"atom", "succ", "plus", "times"};
        const Provenance p = t.provenance(n);
        return py::make_tuple(names[static_cast<int>(p.tag)], p.operand);
      })
      .def("to_bytes", [](const ComplexityTable& t) {
        const auto bytes = encode_table(t);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      })
      .def_static("from_bytes", [](py::bytes data) {
        const std::string_view view = data;
        return decode_table({reinterpret_cast<const std::uint8_t*>(view.data()), view.size()});
      })
      .def("save", [](const ComplexityTable& t, const std::filesystem::path& path) { save_table(t, path); })
      .def_static("load", &load_table)
      .def("__eq__", [](const ComplexityTable& a, const ComplexityTable& b) { return a == b; });

  m.def("build", [](const std::string& lib, const std::string& met, std::uint64_t n_max, unsigned m_param,
                    bool exact) {
    const SymbolLibrary l = library(lib, m_param);
    const CostMetric c = metric(met);
    py::gil_scoped_release release;
    return build_table(l, c, n_max, exact ? BuildMode::Exact : BuildMode::Pruned);
  }, py::arg("library"), py::arg("metric"), py::arg("n_max"), py::arg("m") = 0, py::arg("exact") = false);

  m.def("evaluate", [](const std::string& term, const std::string& lib, unsigned m_param) {
    return evaluate(parse(term, library(lib, m_param)));
  }, py::arg("term"), py::arg("library") = "1s+*", py::arg("m") = 0);

  m.def("term_cost", [](const std::string& term, const std::string& lib, const std::string& met, unsigned m_param) {
    const SymbolLibrary l = library(lib, m_param);
    return cost(parse(term, l), l, metric(met));
  }, py::arg("term"), py::arg("library") = "1s+*", py::arg("metric") = "symbols", py::arg("m") = 0);

  m.def("optimal_presentations", [](std::uint64_t n, const std::string& lib, const std::string& met,
                                    unsigned m_param, std::size_t cap) {
    const auto e = enumerate_optimal(library(lib, m_param), metric(met), n, cap);
    std::vector<std::string> out;
    for (const auto& t : e.terms) out.push_back(render(t));
    return out;
  }, py::arg("n"), py::arg("library") = "1s+*", py::arg("metric") = "symbols", py::arg("m") = 0,
        py::arg("cap") = 1000);

  m.def("oracle_costs", [](const std::string& lib, const std::string& met, std::uint64_t n_max, unsigned m_param) {
    auto v = oracle_costs(library(lib, m_param), metric(met), n_max);
    return std::vector<std::uint32_t>(v.begin() + 1, v.end());
  }, py::arg("library"), py::arg("metric"), py::arg("n_max"), py::arg("m") = 0);

  m.def("minimal_elements", [](const ComplexityTable& t) {
    py::list out;
    for (const auto& r : extremal::minimal_elements(t)) out.append(record(r));
    return out;
  });
  m.def("maximal_elements", [](const ComplexityTable& t, std::uint64_t k_max) {
    py::list out;
    for (const auto& r : extremal::maximal_elements(t, k_max)) out.append(record(r));
    return out;
  });
  m.def("defect", [](const ComplexityTable& t, std::uint64_t n) { return extremal::defect(t, n).defect; });
  m.def("structure_ok", [](const ComplexityTable& t) { return extremal::check_structure(t).pass(); });

  m.def("is_prime", &nt::is_prime);
  m.def("big_omega", [](std::uint64_t n) { return nt::big_omega(n); });
  m.def("longest_bad_run", [](std::uint64_t n, std::uint64_t k) {
    const auto r = nt::longest_bad_run(n, k);
    return py::make_tuple(r.start, r.length);
  }, py::arg("N"), py::arg("k") = 2);
}
