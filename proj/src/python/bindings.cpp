#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mapvir/cli.hpp"
#include "mapvir/errors.hpp"
#include "mapvir/io.hpp"
#include "mapvir/parse.hpp"
#include "mapvir/selftest.hpp"

namespace py = pybind11;
using namespace mapvir;

namespace {

AlgebraPtr algebra_arg(const std::string& spec) {
  return spec.empty() ? Algebra::rationals() : algebra_from_json(Json::parse(spec));
}

FunctionalPtr phi_arg(const std::string& spec, const AlgebraPtr& a) { return functional_from_json(Json::parse(spec), a); }

std::optional<Window> window_arg(const std::optional<std::pair<long, long>>& w) {
  if (!w) return std::nullopt;
  return Window{w->first, w->second};
}

}  // namespace

PYBIND11_MODULE(_mapvir, m) {
  m.doc() = "Exact computations in map Virasoro algebras; JSON-string level API.";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_ArithmeticError);

  m.def("run", [](std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });

  m.def("bracket", [](const std::string& x, const std::string& y, const std::string& algebra) {
    AlgebraPtr a = algebra_arg(algebra);
    return bracket(parse_lie(x, a), parse_lie(y, a)).to_string();
  }, py::arg("x"), py::arg("y"), py::arg("algebra") = "");

  m.def("straighten", [](const std::string& word, const std::string& algebra) {
    AlgebraPtr a = algebra_arg(algebra);
    return straighten(parse_word(word, a)).to_string();
  }, py::arg("word"), py::arg("algebra") = "");

  m.def("pbw_basis", [](long n, const std::string& algebra, std::optional<std::pair<long, long>> colors) {
    AlgebraPtr a = algebra_arg(algebra);
    std::vector<std::string> out;
    for (const auto& mono : pbw_basis(n, *a, window_arg(colors))) out.push_back(mono.to_string(*a));
    return out;
  }, py::arg("n"), py::arg("algebra") = "", py::arg("colors") = py::none());

  m.def("verma_dims", [](long n, const std::string& algebra, std::optional<std::pair<long, long>> colors) {
    return verma_dims(*algebra_arg(algebra), n, window_arg(colors));
  }, py::arg("n"), py::arg("algebra") = "", py::arg("colors") = py::none());

  m.def("quotient_dims", [](const std::string& phi, long n, const std::string& algebra,
                            std::optional<std::pair<long, long>> colors) {
    AlgebraPtr a = algebra_arg(algebra);
    return quotient_dims(phi_arg(phi, a), n, window_arg(colors));
  }, py::arg("phi"), py::arg("n"), py::arg("algebra") = "", py::arg("colors") = py::none());

  m.def("singular_vectors", [](const std::string& phi, long depth, const std::string& algebra) {
    AlgebraPtr a = algebra_arg(algebra);
    std::vector<std::string> out;
    for (const auto& v : singular_vectors(phi_arg(phi, a), depth)) out.push_back(v.to_string());
    return out;
  }, py::arg("phi"), py::arg("depth"), py::arg("algebra") = "");

  m.def("int_series_act", [](const std::string& a, const std::string& b, long lo, long hi, long mode, long k) {
    auto r = int_series_act(IntSeriesSpec{parse_scalar(a), parse_scalar(b), {lo, hi}}, mode, k);
    return py::make_tuple(to_string(r.coefficient), r.target);
  });

  m.def("weight_multiplicities", [](const std::string& spec, long lo, long hi, const std::string& algebra) {
    AlgebraPtr a = algebra_arg(algebra);
    return weight_table_to_json(weight_multiplicities(*module_from_json(Json::parse(spec), a), {lo, hi})).dump();
  }, py::arg("spec"), py::arg("lo"), py::arg("hi"), py::arg("algebra") = "");

  m.def("annihilator_support", [](const std::string& spec, const std::string& algebra) {
    AlgebraPtr a = algebra_arg(algebra);
    return annihilator_to_json(annihilator_support(*module_from_json(Json::parse(spec), a))).dump();
  }, py::arg("spec"), py::arg("algebra") = "");

  m.def("selftest", [](std::uint64_t seed) {
    std::vector<py::tuple> out;
    for (const auto& r : run_selftest(seed)) out.push_back(py::make_tuple(r.name, r.cases, r.failures));
    return out;
  }, py::arg("seed") = 1);
}
