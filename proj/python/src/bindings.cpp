#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "level_spectra/bounds.hpp"
#include "level_spectra/error.hpp"
#include "level_spectra/report.hpp"
#include "level_spectra/tree.hpp"
#include "level_spectra/verify.hpp"

namespace py = pybind11;
namespace ls = level_spectra;

namespace {

py::object to_py(const ls::BigInt& x) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(x.str().c_str(), nullptr, 10));
}

py::dict to_py(const ls::BoundReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["lower"] = r.lower ? py::cast(*r.lower) : py::none();
  d["relation"] = std::string(ls::to_string(r.relation));
  d["slack"] = r.slack;
  d["satisfied"] = r.satisfied;
  d["equality_expected"] = r.equality_expected ? py::cast(*r.equality_expected) : py::none();
  d["index"] = r.index ? py::cast(*r.index) : py::none();
  return d;
}

py::dict to_py(const ls::Spectrum& s) {
  py::list clusters;
  for (const auto& c : s.clusters) clusters.append(py::make_tuple(c.value, c.multiplicity));
  py::dict d;
  d["values"] = s.values;
  d["clusters"] = clusters;
  d["rho"] = s.rho;
  d["energy"] = s.energy;
  d["perron"] = s.perron;
  return d;
}

ls::RootedTree tree_from(const std::vector<std::int64_t>& parents) {
  return ls::RootedTree::from_parent_list(parents, true);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Level matrices of rooted trees";

  static py::exception<ls::Error> error(m, "LevelSpectraError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ls::Error& e) {
      py::object err = error;
      PyErr_SetObject(err.ptr(), py::make_tuple(std::string(ls::to_string(e.code())), e.what()).ptr());
    }
  });

  py::class_<ls::RootedTree>(m, "RootedTree")
      .def(py::init(&tree_from), py::arg("parents"),
           "Build from a 1-based parent list with 0 marking the root.")
      .def_static("from_level_sequence",
                  [](const std::vector<int>& seq) { return ls::RootedTree::from_level_sequence(seq); })
      .def_static("path", &ls::rooted_path, py::arg("n"))
      .def_static("star", &ls::rooted_star, py::arg("n"))
      .def_static("leafstar", &ls::star_rooted_at_leaf, py::arg("n"))
      .def_static("dary", &ls::complete_dary, py::arg("arity"), py::arg("height"))
      .def("__len__", &ls::RootedTree::size)
      .def_property_readonly("parents", &ls::RootedTree::one_based_parents)
      .def_property_readonly("levels", [](const ls::RootedTree& t) { return ls::levels(t); })
      .def("canonical", [](const ls::RootedTree& t) { return ls::canonical_sequence(t); })
      .def("delete_leaf", &ls::delete_leaf, py::arg("v"))
      .def("leaves", &ls::RootedTree::leaves)
      .def("to_dot",
           [](const ls::RootedTree& t) {
             std::ostringstream os;
             ls::write_dot(os, t);
             return os.str();
           })
      .def("__eq__", [](const ls::RootedTree& a, const ls::RootedTree& b) { return a == b; })
      .def("__repr__", [](const ls::RootedTree& t) { return "RootedTree[" + ls::canonical_encoding(t) + "]"; });

  m.def("read_tree", [](const std::string& text) {
    std::istringstream in(text);
    return ls::read_tree_file(in);
  });

  m.def("level_matrix", [](const ls::RootedTree& t) {
    const ls::LevelMatrix lm(t);
    std::vector<std::vector<std::int64_t>> rows(lm.size());
    for (std::size_t i = 0; i < lm.size(); ++i) rows[i].assign(lm.entries().row(i).begin(), lm.entries().row(i).end());
    return rows;
  });

  m.def(
      "spectrum",
      [](const ls::RootedTree& t, double tol) { return to_py(ls::compute_spectrum(ls::LevelMatrix(t), {tol})); },
      py::arg("tree"), py::arg("tol") = ls::kDefaultClusterTol);

  m.def("characteristic_polynomial", [](const ls::RootedTree& t) {
    py::list out;
    for (const auto& c : ls::characteristic_polynomial(ls::LevelMatrix(t))) out.append(to_py(c));
    return out;
  });

  m.def(
      "analyze",
      [](const ls::RootedTree& t, bool charpoly, std::vector<std::string> bounds) {
        ls::AnalysisOptions options;
        options.charpoly = charpoly;
        options.bounds = std::move(bounds);
        std::optional<ls::AnalysisReport> holder;
        {
          py::gil_scoped_release release;
          holder.emplace(ls::analyze(t, options));
        }
        const auto& report = *holder;
        const auto& mat = report.analysis.matrix;
        py::dict d;
        d["n"] = report.analysis.n();
        d["levels"] = mat.levels();
        d["l_max"] = mat.max_level();
        d["LI"] = mat.level_index();
        d["H"] = mat.h_value();
        d["row_sums"] = mat.row_sums();
        d["spectrum"] = to_py(report.analysis.spectrum);
        d["rho"] = report.analysis.spectrum.rho;
        d["energy"] = report.analysis.spectrum.energy;
        d["mul_zero_exact"] = report.mul_zero_exact;
        if (report.charpoly) {
          py::list c;
          for (const auto& x : *report.charpoly) c.append(to_py(x));
          d["charpoly"] = c;
        }
        py::list b;
        for (const auto& r : report.bounds.reports) b.append(to_py(r));
        d["bounds"] = b;
        return d;
      },
      py::arg("tree"), py::arg("charpoly") = false, py::arg("bounds") = std::vector<std::string>{});

  m.def(
      "verify",
      [](std::size_t order, std::vector<std::string> only, std::size_t jobs) {
        ls::VerifyOptions options;
        options.selection = std::move(only);
        options.jobs = jobs;
        options.cap = ls::enumeration_cap_from_env();
        ls::VerificationLedger ledger;
        {
          py::gil_scoped_release release;
          ledger = ls::verify_order(order, options);
        }
        py::dict checks;
        for (const auto& c : ledger.checks) {
          checks[py::str(c.name)] = py::dict(py::arg("trees_checked") = c.trees_checked,
                                             py::arg("evaluations") = c.evaluations,
                                             py::arg("violations") = c.violations,
                                             py::arg("worst_slack") = c.worst_slack);
        }
        py::list violations;
        for (const auto& v : ledger.violations) violations.append(py::make_tuple(v.check, v.tree, v.detail));
        py::dict d;
        d["order"] = ledger.order;
        d["tree_count"] = ledger.tree_count;
        d["expected_count"] = ledger.expected_count;
        d["checks"] = checks;
        d["violations"] = violations;
        d["ok"] = ledger.ok();
        return d;
      },
      py::arg("order"), py::arg("only") = std::vector<std::string>{}, py::arg("jobs") = 0);

  m.def(
      "enumerate_trees",
      [](std::size_t n, std::size_t cap) {
        std::vector<ls::LevelSequence> out;
        ls::RootedTreeEnumerator e(n, cap);
        while (auto s = e.next_sequence()) out.push_back(std::move(*s));
        return out;
      },
      py::arg("n"), py::arg("cap") = ls::kDefaultEnumerationCap);

  m.def("rooted_tree_count", &ls::rooted_tree_count, py::arg("n"));
  m.def("path_rho_closed_form", &ls::path_rho_closed_form, py::arg("n"));
  m.def("leafstar_cubic_roots", &ls::leafstar_cubic_roots, py::arg("n"));
  m.def("check_names", &ls::all_check_names);
}
