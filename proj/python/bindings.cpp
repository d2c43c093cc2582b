#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framemult/catalogue.hpp"
#include "framemult/convergence.hpp"
#include "framemult/inversion.hpp"
#include "framemult/io.hpp"

namespace py = pybind11;
using namespace framemult;

namespace {

using Params = std::map<std::string, double>;

MultiplierSpec load(const std::string& doc, std::optional<Index> dim) {
  return spec_from_json(parse_json_text(doc), dim);
}

InvertOptions options(double tol_inv, bool oracle) {
  InvertOptions o;
  o.tol.tol_inv = tol_inv;
  o.oracle = oracle;
  return o;
}

std::string certify_json(const std::string& doc, const std::string& order, double tol_inv,
                         bool oracle) {
  const InvertCertificate c = certify(load(doc, std::nullopt), parse_order(order),
                                      options(tol_inv, oracle));
  return to_json(c).dump();
}

std::optional<Matrix> inverse_matrix(const std::string& doc, const std::string& order,
                                     double tol_inv) {
  const InvertOptions o = options(tol_inv, true);
  const InvertCertificate c = certify(load(doc, std::nullopt), parse_order(order), o);
  if (!c.inverse) return std::nullopt;
  return dense_of(*c.inverse, o.tol);
}

std::string bounds_json(const std::string& doc) {
  const MultiplierSpec s = load(doc, std::nullopt);
  Json j;
  j["phi"] = to_json(frame_bounds(s.phi));
  j["psi"] = to_json(frame_bounds(s.psi));
  j["norm_bound"] = real_to_json(norm_bound(s));
  return j.dump();
}

std::string diagnose_json(const std::string& doc, const std::vector<Index>& dims) {
  const Json j = parse_json_text(doc);
  SpecFactory factory;
  std::vector<Index> sweep = dims;
  if (j.contains("fixture")) {
    factory = [j](Index d) { return spec_from_json(j, d); };
  } else {
    const MultiplierSpec s = spec_from_json(j);
    factory = [s](Index) { return s; };
    sweep = {s.dim()};
  }
  Json out = to_json(unconditional_necessary(factory, sweep));
  out["swap_equivalence"] = swap_equivalence_check(factory, sweep);
  return out.dump();
}

std::string fixtures_json() {
  Json a = Json::array();
  for (const FixtureInfo& f : list_fixtures()) a.push_back(to_json(f));
  return a.dump();
}

std::string emit_json(const std::string& id, const Params& params, Index dim) {
  Json j = to_json(instantiate(id, params, dim));
  Json facts = Json::array();
  for (const ExpectedFact& f : expected_facts(id, params)) facts.push_back(to_json(f));
  j["expected"] = facts;
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_framemult, m) {
  m.doc() = "Frame multiplier bounds, inversion certificates and diagnostics";

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SchemaError& e) {
      py::object exc = error;
      py::object inst = exc(std::string(to_string(e.code())), e.what(), e.pointer());
      PyErr_SetObject(error.ptr(), inst.ptr());
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(std::string(to_string(e.code())), e.what(), py::none());
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  m.def("certify", &certify_json, py::arg("doc"), py::arg("order"), py::arg("tol_inv"),
        py::arg("oracle"));
  m.def("inverse", &inverse_matrix, py::arg("doc"), py::arg("order"), py::arg("tol_inv"));
  m.def("bounds", &bounds_json, py::arg("doc"));
  m.def("diagnose", &diagnose_json, py::arg("doc"), py::arg("dims"));
  m.def(
      "dense", [](const std::string& doc, std::optional<Index> dim) { return dense(load(doc, dim)); },
      py::arg("doc"), py::arg("dim") = py::none());
  m.def(
      "apply",
      [](const std::string& doc, const Vector& x) { return build(load(doc, std::nullopt)).apply(x); },
      py::arg("doc"), py::arg("x"));
  m.def("fixtures", &fixtures_json);
  m.def("emit", &emit_json, py::arg("id"), py::arg("params"), py::arg("dim"));
  m.def("default_order", [] {
    std::string s;
    for (Rule r : default_order()) s += (s.empty() ? "" : ",") + std::string(to_string(r));
    return s;
  });
}
