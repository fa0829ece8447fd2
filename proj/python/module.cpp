#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "halfline/asym.hpp"
#include "halfline/error.hpp"
#include "halfline/inverse.hpp"
#include "halfline/shoot.hpp"

namespace py = pybind11;
using namespace halfline;

namespace {

PotentialSpec make_potential(int m, std::vector<cplx> a) {
  if (a.empty()) return PotentialSpec::zero(m);
  return {m, std::move(a)};
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Eigenvalue asymptotics for -u'' + (x^m + P(x)) u = E u on the half-line";

  static py::object error_type = py::reinterpret_steal<py::object>(
      PyErr_NewException("halfline._core.HalflineError", PyExc_RuntimeError, nullptr));
  mod.attr("HalflineError") = error_type;
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error_type(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  mod.def("lngamma", &lngamma, py::arg("x"));
  mod.def("beta", &beta, py::arg("x"), py::arg("y"));
  mod.def("gen_binomial", &gen_binomial, py::arg("s"), py::arg("k"));
  mod.def("cpow", &cpow, py::arg("z"), py::arg("s"));

  py::class_<PotentialSpec>(mod, "PotentialSpec")
      .def(py::init(&make_potential), py::arg("m"), py::arg("a") = std::vector<cplx>{})
      .def_property_readonly("m", &PotentialSpec::m)
      .def_property_readonly("a", [](const PotentialSpec& p) {
        return std::vector<cplx>(p.coeffs().begin(), p.coeffs().end());
      })
      .def("__repr__", [](const PotentialSpec& p) {
        return "PotentialSpec(m=" + std::to_string(p.m()) + ")";
      });

  py::class_<BoundaryCondition>(mod, "BoundaryCondition")
      .def(py::init<cplx, cplx>(), py::arg("alpha") = cplx(1.0), py::arg("beta") = cplx(0.0))
      .def_property_readonly("alpha", &BoundaryCondition::alpha)
      .def_property_readonly("beta", &BoundaryCondition::beta)
      .def_property_readonly("offset", &BoundaryCondition::offset);

  mod.def("K_closed", &K_closed, py::arg("m"), py::arg("j"), py::arg("k"));
  mod.def("K_quad", &K_quad, py::arg("m"), py::arg("j"), py::arg("k"));
  mod.def("b_j", &b_j, py::arg("p"), py::arg("j"));
  mod.def("nu", &nu, py::arg("p"));
  mod.def("En0", &En0, py::arg("n"), py::arg("m"), py::arg("bc"));
  mod.def("build_e", &build_e, py::arg("p"), py::arg("depth"));
  mod.def("L_series", &L_series, py::arg("p"), py::arg("lam"), py::arg("with_log") = true);
  mod.def("L_quad", &L_quad, py::arg("p"), py::arg("lam"));
  mod.def("titchmarsh_count", &titchmarsh_count, py::arg("p"), py::arg("t"));

  py::class_<AsymptoticModel>(mod, "AsymptoticModel")
      .def(py::init<PotentialSpec, BoundaryCondition>(), py::arg("p"),
           py::arg("bc") = BoundaryCondition::dirichlet())
      .def_property_readonly("K", &AsymptoticModel::K)
      .def_property_readonly("d", &AsymptoticModel::d)
      .def_property_readonly("e", &AsymptoticModel::e)
      .def_property_readonly("nu", &AsymptoticModel::nu)
      .def_property_readonly("offset", &AsymptoticModel::offset)
      .def("truncated", &AsymptoticModel::truncated, py::arg("depth"))
      .def("eigenvalue", [](const AsymptoticModel& m, int n) { return eval_asym_E(m, n); }, py::arg("n"))
      .def("counting_residual",
           [](const AsymptoticModel& m, cplx E) { return counting_residual(m, E); }, py::arg("E"))
      .def("N_asym", [](const AsymptoticModel& m, double t) { return N_asym(m, t); }, py::arg("t"));

  py::class_<ShootingConfig>(mod, "ShootingConfig")
      .def(py::init<>())
      .def_readwrite("radius", &ShootingConfig::radius)
      .def_readwrite("radius_factor", &ShootingConfig::radius_factor)
      .def_readwrite("decay_margin", &ShootingConfig::decay_margin)
      .def_readwrite("ode_rel_tol", &ShootingConfig::ode_rel_tol)
      .def_readwrite("ode_abs_tol", &ShootingConfig::ode_abs_tol)
      .def_readwrite("newton_tol", &ShootingConfig::newton_tol)
      .def_readwrite("max_newton_iter", &ShootingConfig::max_newton_iter)
      .def_readwrite("threads", &ShootingConfig::threads);

  py::class_<EigenvalueRecord>(mod, "EigenvalueRecord")
      .def_readonly("n", &EigenvalueRecord::n)
      .def_readonly("E", &EigenvalueRecord::E)
      .def_readonly("residual", &EigenvalueRecord::residual)
      .def_readonly("counting_value", &EigenvalueRecord::counting_value)
      .def_readonly("iterations", &EigenvalueRecord::iterations)
      .def("__repr__", [](const EigenvalueRecord& r) {
        return "EigenvalueRecord(n=" + std::to_string(r.n) + ", E=" + std::to_string(r.E.real()) +
               (r.E.imag() < 0 ? "" : "+") + std::to_string(r.E.imag()) + "j)";
      });

  mod.def(
      "scan",
      [](const AsymptoticModel& model, int n_lo, int n_hi, const ShootingConfig& cfg) {
        py::gil_scoped_release release;
        return scan({model.potential(), model.boundary()}, model, n_lo, n_hi, cfg);
      },
      py::arg("model"), py::arg("n_lo"), py::arg("n_hi"), py::arg("config") = ShootingConfig{});
  mod.def(
      "N_numeric",
      [](const std::vector<EigenvalueRecord>& recs, double t) {
        const NumericCount c = N_numeric(recs, t);
        return py::make_tuple(c.count, c.beyond_coverage);
      },
      py::arg("records"), py::arg("t"));

  py::class_<FitResult>(mod, "FitResult")
      .def_readonly("e_hat", &FitResult::e_hat)
      .def_readonly("coefficients", &FitResult::coefficients)
      .def_readonly("std_error", &FitResult::std_error)
      .def_readonly("condition", &FitResult::condition)
      .def_readonly("rms_residual", &FitResult::rms_residual);

  mod.def(
      "fit_e",
      [](int m, const BoundaryCondition& bc, const std::vector<std::pair<int, cplx>>& eigs, int J,
         int fit_terms, bool weighted) {
        InverseProblem ip;
        ip.m = m;
        ip.bc = bc;
        ip.J = J;
        ip.fit_terms = fit_terms;
        ip.weighted = weighted;
        for (const auto& [n, E] : eigs) ip.eigs.push_back({n, E});
        return fit_e(ip);
      },
      py::arg("m"), py::arg("bc"), py::arg("eigs"), py::arg("J"), py::arg("fit_terms") = 0,
      py::arg("weighted") = false);
  mod.def(
      "recover_a",
      [](int m, const BoundaryCondition& bc, const std::vector<cplx>& e_hat) {
        return recover_a(m, bc, e_hat);
      },
      py::arg("m"), py::arg("bc"), py::arg("e_hat"));
}
