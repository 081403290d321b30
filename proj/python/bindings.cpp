#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mhdchar/boundary.hpp"
#include "mhdchar/charstruct.hpp"
#include "mhdchar/errors.hpp"
#include "mhdchar/io.hpp"
#include "mhdchar/scan.hpp"
#include "mhdchar/shock.hpp"
#include "mhdchar/symbol.hpp"
#include "mhdchar/thermo.hpp"

namespace py = pybind11;
using namespace mhdchar;

namespace {

ThermoState make_state(double rho, const Vec3& u, double theta, const Vec3& B) {
  ThermoState s{rho, u, theta, B};
  s.validate();
  return s;
}

BoundaryFrequency make_zeta(double tau, double gamma_L, const Eigen::Vector2d& eta) {
  return BoundaryFrequency{tau, gamma_L, eta}.normalized();
}

HemisphereSampling make_sampling(std::size_t interior, int equator_factor) {
  HemisphereSampling s;
  s.interior = interior;
  s.equator_factor = equator_factor;
  return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Characteristic structure and Lopatinski determinant for full ideal MHD";

  static py::exception<Error> base(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<ThermoState>(m, "ThermoState")
      .def(py::init(&make_state), py::arg("rho"), py::arg("u"), py::arg("theta"), py::arg("B"))
      .def_readwrite("rho", &ThermoState::rho)
      .def_readwrite("u", &ThermoState::u)
      .def_readwrite("theta", &ThermoState::theta)
      .def_readwrite("B", &ThermoState::B);

  py::class_<EquationOfState, std::shared_ptr<EquationOfState>>(m, "EquationOfState")
      .def_property_readonly("kind", &EquationOfState::kind)
      .def("evaluate", [](const EquationOfState& e, double rho, double theta) {
        const EosEval ev = eval_eos(e, rho, theta);
        return py::dict(py::arg("P") = ev.P, py::arg("P_rho") = ev.P_rho,
                        py::arg("P_theta") = ev.P_theta, py::arg("e") = ev.e,
                        py::arg("e_theta") = ev.e_theta);
      });
  py::class_<IdealGas, EquationOfState, std::shared_ptr<IdealGas>>(m, "IdealGas")
      .def(py::init<double, double>(), py::arg("R"), py::arg("c_v"))
      .def_property_readonly("adiabatic_index", &IdealGas::adiabatic_index);

  py::class_<WaveSpeeds>(m, "WaveSpeeds")
      .def_readonly("a", &WaveSpeeds::a)
      .def_readonly("b", &WaveSpeeds::b)
      .def_readonly("h", &WaveSpeeds::h)
      .def_readonly("c0", &WaveSpeeds::c0)
      .def_readonly("c_s", &WaveSpeeds::c_s)
      .def_readonly("c_f", &WaveSpeeds::c_f);

  m.def("wave_speeds", [](const ThermoState& s, const EquationOfState& e, const Vec3& xi) {
    return wave_speeds(s, e, xi);
  });
  m.def("eigenvalues", [](const ThermoState& s, const EquationOfState& e, const Vec3& xi) {
    const auto a = eigenvalues_unmerged(s, e, xi);
    return std::vector<double>(a.begin(), a.end());
  });
  m.def("numeric_spectrum", [](const ThermoState& s, const EquationOfState& e, const Vec3& xi) {
    return VecX(numeric_spectrum(s, e, xi));
  });
  m.def("tilde_symbol", [](const ThermoState& s, const EquationOfState& e, const Vec3& xi) {
    return MatX(assemble_tilde_symbol(s, e, xi));
  });
  m.def("full_symbol", [](const ThermoState& s, const EquationOfState& e, const Vec3& xi) {
    return MatX(assemble_full_symbol(s, e, xi));
  });
  m.def("symmetrizer", [](const ThermoState& s, const EquationOfState& e) {
    return MatX(symmetrizer(s, e).matrix());
  });
  m.def(
      "classify_json",
      [](const ThermoState& s, const EquationOfState& e, const Vec3& xi, std::optional<int> axis,
         double sigma) {
        std::optional<BoundaryFrame> frame;
        if (axis) frame = BoundaryFrame{*axis, sigma};
        ClassifyOptions opts;
        opts.glancing_verdict = false;
        return classification_record(xi, classify(s, e, xi, frame, opts)).dump();
      },
      py::arg("state"), py::arg("eos"), py::arg("xi"), py::arg("axis") = py::none(),
      py::arg("sigma") = 0.0);
  m.def(
      "assemble_G",
      [](const ThermoState& s, const EquationOfState& e, int d, double tau, double gamma_L,
         const Eigen::Vector2d& eta) {
        return assemble_G(s, e, d, BoundaryFrequency{tau, gamma_L, eta});
      },
      py::arg("state"), py::arg("eos"), py::arg("d"), py::arg("tau"), py::arg("gamma_L"),
      py::arg("eta"));
  m.def(
      "stable_subspace",
      [](const CMatX& G, double gamma_L) { return stable_subspace(G, gamma_L).basis; },
      py::arg("G"), py::arg("gamma_L"));
  m.def(
      "lopatinski_det",
      [](const CMatX& E, const CMatX& K) {
        const LopatinskiResult r = lopatinski_det(E, K);
        return py::make_tuple(r.D, r.abs_D, r.abs_D_proj);
      },
      py::arg("E_minus"), py::arg("kernel"));
  m.def(
      "rankine_hugoniot_json",
      [](const std::shared_ptr<EquationOfState>& e, const ThermoState& up, double mach, int d,
         const Vec3& B, const std::string& family) {
        return shock_to_json(
                   rankine_hugoniot(e, up, shock_family_from_string(family), mach, d, B))
            .dump();
      },
      py::arg("eos"), py::arg("upstream"), py::arg("mach"), py::arg("d"), py::arg("B"),
      py::arg("family") = "fast+");
  m.def(
      "shock_lopatinski",
      [](const std::string& shock_json, double tau, double gamma_L, const Eigen::Vector2d& eta) {
        const PlanarShock sh = shock_from_json(json::parse(shock_json));
        const LopatinskiResult r = evaluate_lopatinski(
            shock_problem(sh), shock_boundary_operator(sh), make_zeta(tau, gamma_L, eta));
        return py::make_tuple(r.abs_D, r.k);
      },
      py::arg("shock"), py::arg("tau"), py::arg("gamma_L"), py::arg("eta"));
  m.def(
      "scan_shock_json",
      [](const std::string& shock_json, std::size_t interior, int equator_factor) {
        const PlanarShock sh = shock_from_json(json::parse(shock_json));
        py::gil_scoped_release release;
        const ScanResult r = uniform_scan(shock_problem(sh), shock_boundary_operator(sh),
                                          make_sampling(interior, equator_factor));
        return scan_summary(r).dump();
      },
      py::arg("shock"), py::arg("interior") = 2000, py::arg("equator_factor") = 4);
  m.def(
      "b_to_zero_study_json",
      [](const std::shared_ptr<EquationOfState>& e, const ThermoState& up, double mach, int d,
         const Vec3& direction, const std::vector<double>& mags, std::size_t interior, int refine) {
        GasShockSpec spec{up, mach, ShockFamily::FastPlus, d, direction};
        py::gil_scoped_release release;
        return study_to_json(
                   b_to_zero_study(e, spec, mags, make_sampling(interior, 4), refine))
            .dump();
      },
      py::arg("eos"), py::arg("upstream"), py::arg("mach"), py::arg("d"), py::arg("direction"),
      py::arg("magnitudes"), py::arg("interior") = 2000, py::arg("refine") = 1);
}
