#include "qcc/circulant.hpp"
#include "qcc/involution.hpp"
#include "qcc/qc_system.hpp"
#include "qcc/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qcc;

namespace {

py::object big(const Integer& v) { return py::module_::import("builtins").attr("int")(to_string(v)); }

py::object from_json(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

RunConfig make_config(const std::string& command, const std::string& target, int n_first, int n_last,
                      std::uint64_t seed, unsigned jobs, int samples) {
  RunConfig c;
  c.command = command;
  c.target = target;
  c.n_first = n_first;
  c.n_last = n_last < 0 ? n_first : n_last;
  c.seed = seed;
  c.jobs = jobs;
  c.samples = samples;
  if (c.n_first < 1 || c.n_last < c.n_first) throw std::invalid_argument("n must satisfy 1 <= n_first <= n_last");
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Cartan involution checks for quaternionic contact structures";
  m.attr("__version__") = kToolVersion;

  m.def("closed_form_counts", [](int n) {
    const ClosedForms c = closed_form_counts(n);
    py::dict d;
    d["n"] = c.n;
    d["d1"] = c.d1;
    d["d2"] = c.d2;
    d["D"] = c.D;
    d["D_binomial"] = c.D_binomial;
    d["dim_F_n"] = c.dim_F_n;
    d["v"] = c.v;
    return d;
  }, py::arg("n"));

  m.def("characters", [](int n, bool nullity, unsigned jobs) {
    CharacterOptions opt;
    opt.compute_nullity = nullity;
    opt.jobs = jobs;
    CharacterReport r;
    {
      py::gil_scoped_release release;
      r = characters(QcSystem::build(n), opt);
    }
    py::dict d;
    d["n"] = r.n;
    d["d1"] = r.d1;
    d["d2"] = r.d2;
    d["filtration"] = r.filtration;
    d["v"] = r.v;
    d["dim_F_n"] = r.dim_F_n;
    d["D_closed"] = r.D_closed;
    d["D_nullity"] = r.D_nullity < 0 ? py::object(py::none()) : py::object(py::int_(r.D_nullity));
    d["cartan_sum"] = r.cartan_sum;
    d["involutive"] = r.involutive;
    return d;
  }, py::arg("n"), py::arg("nullity") = true, py::arg("jobs") = 1);

  m.def("analyze", [](int n_first, int n_last, std::uint64_t seed, unsigned jobs) {
    const RunConfig c = make_config("analyze", "", n_first, n_last, seed, jobs, 5);
    Json j;
    {
      py::gil_scoped_release release;
      j = run(c).to_json();
    }
    return from_json(j);
  }, py::arg("n"), py::arg("n_last") = -1, py::arg("seed") = 0, py::arg("jobs") = 1);

  m.def("verify", [](const std::string& target, int n_first, int n_last, std::uint64_t seed, unsigned jobs, int samples) {
    const RunConfig c = make_config("verify", target, n_first, n_last, seed, jobs, samples);
    Json j;
    {
      py::gil_scoped_release release;
      j = run(c).to_json();
    }
    return from_json(j);
  }, py::arg("target"), py::arg("n"), py::arg("n_last") = -1, py::arg("seed") = 0, py::arg("jobs") = 1,
     py::arg("samples") = 5);

  m.def("recurrence", [](int k) { return big(recurrence(k)); }, py::arg("k"));

  m.def("nondegeneracy", [](int n) {
    const Nondegeneracy r = nondegeneracy(n);
    py::dict d;
    d["n"] = r.n;
    d["rank"] = r.rank;
    d["full_rank"] = r.full_rank;
    d["gcd_degree"] = r.gcd_degree;
    d["resultant"] = big(r.resultant);
    d["det_product"] = big(r.det_product);
    d["root_product"] = big(r.root_product);
    d["passed"] = r.passed();
    return d;
  }, py::arg("n"));

  m.def("det3", [](int n) {
    const Det3Result r = det3_check(n);
    py::dict d;
    d["n"] = r.n;
    d["derived_det"] = big(r.derived_det);
    d["printed_det"] = big(r.printed_det);
    d["printed_expansion"] = big(r.printed_expansion);
    d["root_product"] = big(r.root_product);
    d["derived_is_minus_product"] = r.derived_is_minus_product;
    d["expansion_is_derived_det"] = r.expansion_is_derived_det;
    d["literal_equal"] = r.literal_equal;
    return d;
  }, py::arg("n"));

  m.def("telescoping", [](int n, int m_) {
    const TelescopingResult r = telescoping_check(n, m_);
    py::dict d;
    d["passed"] = r.passed();
    d["collapsed"] = r.collapsed;
    return d;
  }, py::arg("n"), py::arg("m"));

  py::class_<QcSystem>(m, "System")
      .def(py::init([](int n) { return QcSystem::build(n); }), py::arg("n"))
      .def_property_readonly("n", &QcSystem::n)
      .def_property_readonly("d1", &QcSystem::coframe_size)
      .def_property_readonly("d2", [](const QcSystem& s) { return RealCoordinates(s).size(); })
      .def("bianchi_names", [](const QcSystem& s) {
        std::vector<std::string> out;
        for (const auto& f : s.bianchi_forms().forms) out.push_back(f.name);
        return out;
      })
      .def("d_squared_residuals", [](const QcSystem& s) {
        std::map<std::string, std::size_t> out;
        for (const auto& r : s.verify_d_squared().residuals) out[r.tag] = r.terms;
        return out;
      })
      .def("dump", &QcSystem::dump);
}
