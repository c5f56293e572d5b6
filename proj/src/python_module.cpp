#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bmu/bundle.hpp"
#include "bmu/cli.hpp"
#include "bmu/examples.hpp"
#include "bmu/legdsl.hpp"
#include "bmu/semidirect.hpp"
#include "bmu/solver.hpp"
#include "bmu/yd.hpp"

namespace py = pybind11;
using namespace bmu;

namespace {

Braiding braiding_from(const std::string& kind, int modulus) {
  if (kind == "flip") return make_flip();
  if (kind == "phase") return make_phase(modulus);
  if (kind == "super") return make_phase(2);
  throw py::value_error("braiding must be 'flip', 'phase' or 'super'");
}

py::dict regularity_dict(const RegularityReport& r) {
  py::dict d;
  d["rank_C"] = r.rank_C;
  d["rank_D"] = r.rank_D;
  d["full"] = r.full;
  d["goodness_dim"] = r.goodness_dim;
  d["good"] = r.good;
  d["semi_regular"] = r.semi_regular;
  d["regular"] = r.regular;
  d["bi_regular"] = r.bi_regular;
  d["dual_consistent"] = r.dual_consistent;
  return d;
}

}  // namespace

PYBIND11_MODULE(_bmu, m) {
  m.doc() = "Finite-dimensional braided multiplicative unitaries";
  m.attr("__version__") = kToolVersion;

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

  py::class_<Space>(m, "Space")
      .def(py::init<std::string, int, std::optional<std::vector<int>>>(), py::arg("id"),
           py::arg("dim"), py::arg("grading") = std::nullopt)
      .def_readonly("id", &Space::id)
      .def_readonly("dim", &Space::dim)
      .def_readonly("grading", &Space::grading)
      .def("__repr__", [](const Space& s) { return "Space(" + s.id + ", " + std::to_string(s.dim) + ")"; });

  py::class_<BraidingProvider, std::shared_ptr<BraidingProvider>>(m, "Braiding")
      .def_property_readonly("kind", &BraidingProvider::kind)
      .def_property_readonly("modulus", &BraidingProvider::grading_modulus)
      .def("matrix", [](const BraidingProvider& b, const Space& h, const Space& k) {
        return b.braid(h, k).matrix();
      });
  m.def("braiding", [](const std::string& kind, int modulus) {
    return std::const_pointer_cast<BraidingProvider>(braiding_from(kind, modulus));
  }, py::arg("kind"), py::arg("modulus") = 2);

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def(py::init<std::vector<std::vector<int>>, int>(), py::arg("table"), py::arg("identity") = 0)
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("table", &FiniteGroup::table)
      .def("mul", &FiniteGroup::mul);
  m.def("cyclic_group", &cyclic_group);
  m.def("symmetric_group", &symmetric_group);

  py::class_<MultUnitary>(m, "MultUnitary")
      .def(py::init([](const Space& l, const Matrix& f, const std::string& kind, int modulus) {
             return MultUnitary(l, LegOperator({l, l}, {l, l}, f), braiding_from(kind, modulus));
           }),
           py::arg("space"), py::arg("matrix"), py::arg("braiding") = "flip", py::arg("modulus") = 2)
      .def_property_readonly("space", &MultUnitary::space)
      .def_property_readonly("matrix", [](const MultUnitary& x) { return x.op().matrix(); })
      .def_property_readonly("braiding_kind", [](const MultUnitary& x) { return x.braiding()->kind(); });

  m.def("kac_takesaki", [](const FiniteGroup& g) { return kac_takesaki(g); });
  m.def("pentagon_residual", &pentagon_residual);
  m.def("goodness", &goodness);
  m.def("span_ranks", [](const MultUnitary& x) {
    py::dict d;
    d["hatA"] = hatA(x).rank();
    d["A"] = A_span(x).rank();
    d["C"] = C_span(x).rank();
    d["D"] = D_span(x).rank();
    return d;
  });
  m.def("regularity", [](const MultUnitary& x) { return regularity_dict(regularity_classify(x)); });
  m.def("dual", &dual);
  m.def("_certificate_json", [](const MultUnitary& x, double tol) {
    return certificate_to_json(full_certificate(x, tol), false).dump();
  }, py::arg("unitary"), py::arg("tol") = kDefaultTol);

  m.def("sign_module_braiding", []() {
    auto w = kac_takesaki(cyclic_group(2));
    auto s = z2_sign_module(w);
    return yd_braiding(s, s, w, 1e-10).matrix();
  });
  m.def("semidirect_z2", []() {
    auto w = kac_takesaki(cyclic_group(2), "K");
    auto f = kac_takesaki(cyclic_group(2), "Lb");
    return semidirect_product(w, trivial_yd_module(w, f.space()), f);
  });

  m.def("statement_residual",
        [](const std::string& statement, const std::vector<Space>& context,
           const std::map<std::string, MultUnitary>& unitaries, const std::string& kind, int modulus) {
          dsl::Bindings b;
          for (const auto& [name, u] : unitaries) b[name] = u.op();
          return dsl::statement_residual(dsl::parse_statement(statement), b, context,
                                         *braiding_from(kind, modulus));
        },
        py::arg("statement"), py::arg("context"), py::arg("unitaries"),
        py::arg("braiding") = "flip", py::arg("modulus") = 2);
  m.def("canonical_statement",
        [](const std::string& s) { return dsl::print(dsl::parse_statement(s)); });

  m.def("_search_json",
        [](const Space& l, const std::string& kind, int modulus, int degree_modulus,
           std::uint64_t seed, int restarts, int max_iter, double target) {
          SearchProblem p{l, braiding_from(kind, modulus)};
          p.degree_modulus = degree_modulus;
          p.seed = seed;
          p.restarts = restarts;
          p.max_iter = max_iter;
          p.target_residual = target;
          py::gil_scoped_release release;
          auto out = search(p);
          return canonical_json(search_to_json(p, out));
        },
        py::arg("space"), py::arg("braiding"), py::arg("modulus"), py::arg("degree_modulus"),
        py::arg("seed"), py::arg("restarts"), py::arg("max_iter"), py::arg("target_residual"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
