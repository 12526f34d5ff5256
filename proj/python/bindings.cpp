#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ecsim/catfidelity.hpp"
#include "ecsim/errors.hpp"
#include "ecsim/fockspace.hpp"
#include "ecsim/phasespace.hpp"
#include "ecsim/subspace.hpp"

namespace py = pybind11;
using namespace ecsim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Truncated Fock-space states, energy-conserving subspace "
            "projection, Wigner functions, and cat-state fidelities.";

  py::register_exception<DegenerateCatError>(m, "DegenerateCatError",
                                             PyExc_ValueError);
  py::register_exception<ZeroSupportError>(m, "ZeroSupportError",
                                           PyExc_RuntimeError);
  py::register_exception<UndefinedMixtureError>(m, "UndefinedMixtureError",
                                                PyExc_RuntimeError);
  py::register_exception<OptimizationError>(m, "OptimizationError",
                                            PyExc_RuntimeError);

  py::class_<ModeLadder>(m, "ModeLadder")
      .def(py::init<std::vector<int>>(), py::arg("energies"))
      .def_property_readonly("energies", &ModeLadder::energies)
      .def("modes", &ModeLadder::modes)
      .def("tuple_energy", &ModeLadder::tuple_energy, py::arg("occupation"));

  py::class_<FockVector>(m, "FockVector")
      .def(py::init([](std::vector<cplx> amplitudes) {
             FockVector v;
             v.amplitudes = std::move(amplitudes);
             return v;
           }),
           py::arg("amplitudes"))
      .def_readwrite("amplitudes", &FockVector::amplitudes)
      .def("n_max", &FockVector::n_max)
      .def("squared_norm", &FockVector::squared_norm)
      .def("is_zero", &FockVector::is_zero)
      .def("is_normalized", &FockVector::is_normalized, py::arg("eps") = 1e-9)
      .def("normalized", &FockVector::normalized);

  py::class_<MultiModeState>(m, "MultiModeState")
      .def_property_readonly("ladder", &MultiModeState::ladder)
      .def("modes", &MultiModeState::modes)
      .def("squared_norm", &MultiModeState::squared_norm)
      .def("amplitude", &MultiModeState::amplitude, py::arg("occupation"))
      .def("terms", [](const MultiModeState& s) {
        std::vector<std::pair<Occupation, cplx>> out(s.terms().begin(),
                                                     s.terms().end());
        return out;
      });

  py::class_<SubspaceBasis>(m, "SubspaceBasis")
      .def_readonly("total_energy", &SubspaceBasis::total_energy)
      .def_readonly("tuples", &SubspaceBasis::tuples)
      .def_readonly("ladder", &SubspaceBasis::ladder);

  py::class_<DiagonalMixture>(m, "DiagonalMixture")
      .def_readonly("probabilities", &DiagonalMixture::probabilities)
      .def_readonly("norm_probability", &DiagonalMixture::norm_probability);

  py::class_<WignerGrid>(m, "WignerGrid")
      .def_readonly("re_axis", &WignerGrid::re_axis)
      .def_readonly("im_axis", &WignerGrid::im_axis)
      .def_readonly("values", &WignerGrid::values)
      .def("at", py::overload_cast<int, int>(&WignerGrid::at, py::const_),
           py::arg("i_im"), py::arg("j_re"))
      .def("quadrature", &WignerGrid::quadrature)
      .def("min_value", &WignerGrid::min_value);

  py::class_<CatParams>(m, "CatParams")
      .def_static("make", &CatParams::make, py::arg("beta"), py::arg("delta_beta"))
      .def_readonly("beta", &CatParams::beta)
      .def_readonly("delta_beta", &CatParams::delta_beta)
      .def_readonly("xi", &CatParams::xi);

  py::class_<FidelityReport>(m, "FidelityReport")
      .def_readonly("fidelity", &FidelityReport::fidelity)
      .def_readonly("delta_p", &FidelityReport::delta_p)
      .def_readonly("lower_bound", &FidelityReport::lower_bound)
      .def_readonly("upper_bound", &FidelityReport::upper_bound)
      .def_readonly("window_probability", &FidelityReport::window_probability)
      .def_readonly("xi", &FidelityReport::xi);

  py::class_<CatSearchOptions>(m, "CatSearchOptions")
      .def(py::init<>())
      .def_readwrite("beta_min", &CatSearchOptions::beta_min)
      .def_readwrite("beta_max", &CatSearchOptions::beta_max)
      .def_readwrite("delta_beta_min", &CatSearchOptions::delta_beta_min)
      .def_readwrite("delta_beta_max", &CatSearchOptions::delta_beta_max)
      .def_readwrite("restarts_per_axis", &CatSearchOptions::restarts_per_axis)
      .def_readwrite("complex_amplitudes", &CatSearchOptions::complex_amplitudes)
      .def_readwrite("f_tol", &CatSearchOptions::f_tol)
      .def_readwrite("x_tol", &CatSearchOptions::x_tol)
      .def_readwrite("max_iterations", &CatSearchOptions::max_iterations);

  py::class_<CatOptimum>(m, "CatOptimum")
      .def_readonly("beta", &CatOptimum::beta)
      .def_readonly("delta_beta", &CatOptimum::delta_beta)
      .def_readonly("fidelity", &CatOptimum::fidelity)
      .def_readonly("restarts", &CatOptimum::restarts)
      .def_readonly("total_iterations", &CatOptimum::total_iterations)
      .def_readonly("all_converged", &CatOptimum::all_converged);

  m.def("default_coherent_cutoff",
        py::overload_cast<cplx>(&default_coherent_cutoff), py::arg("alpha"));
  m.def("coherent_amplitudes", &coherent_amplitudes, py::arg("alpha"),
        py::arg("n_max"));
  m.def("fock_basis_vector", &fock_basis_vector, py::arg("n"), py::arg("n_max"));
  m.def("inner_product", &inner_product, py::arg("a"), py::arg("b"));
  m.def("coherent_overlap", &coherent_overlap, py::arg("alpha"), py::arg("gamma"));
  m.def("product_coherent_state", &product_coherent_state, py::arg("amplitudes"),
        py::arg("ladder"), py::arg("truncations"));

  m.def("enumerate_energy_basis", &enumerate_energy_basis, py::arg("total_energy"),
        py::arg("ladder"), py::arg("truncations"));
  m.def("subspace_energy", &subspace_energy, py::arg("basis"));
  m.def("project", &project, py::arg("state"), py::arg("basis"));
  m.def("windowed_project", &windowed_project, py::arg("state"),
        py::arg("center_energy"), py::arg("half_width"));
  m.def("condition_on_harmonic", &condition_on_harmonic, py::arg("state"),
        py::arg("mode_index"), py::arg("n_q"));
  m.def("reduce_ir_diagonal", &reduce_ir_diagonal, py::arg("state"),
        py::arg("basis"));
  m.def("photon_loss", &photon_loss, py::arg("mixture"), py::arg("total_energy"),
        py::arg("harmonic_order"));
  m.def("mean_photon_number", &mean_photon_number, py::arg("mixture"));

  m.def("linspace", &linspace, py::arg("lo"), py::arg("hi"), py::arg("points"));
  m.def("laguerre", &laguerre, py::arg("n"), py::arg("x"));
  m.def("generalized_laguerre", &generalized_laguerre, py::arg("n"), py::arg("k"),
        py::arg("x"));
  m.def("wigner_fock_diag", &wigner_fock_diag, py::arg("n"), py::arg("beta"));
  m.def("wigner_fock_offdiag", &wigner_fock_offdiag, py::arg("n"), py::arg("m"),
        py::arg("beta"));
  m.def("wigner_of_fock_vector", &wigner_of_fock_vector, py::arg("v"),
        py::arg("re_axis"), py::arg("im_axis"));
  m.def("wigner_of_diagonal_mixture", &wigner_of_diagonal_mixture,
        py::arg("mixture"), py::arg("re_axis"), py::arg("im_axis"));
  m.def("wigner_oracle", &wigner_oracle, py::arg("rho"), py::arg("beta"));

  m.def("cat_state_vector", &cat_state_vector, py::arg("beta"),
        py::arg("delta_beta"), py::arg("n_max"));
  m.def("delta_p", &delta_p, py::arg("alpha"), py::arg("delta_alpha"),
        py::arg("window"), py::arg("q"), py::arg("n_q"));
  m.def("fidelity_analytic", &fidelity_analytic, py::arg("alpha"),
        py::arg("delta_alpha"), py::arg("window"), py::arg("q"), py::arg("n_q"));
  m.def("fidelity_bruteforce", &fidelity_bruteforce, py::arg("cat"), py::arg("phi"));
  m.def("optimize_cat", &optimize_cat, py::arg("phi"),
        py::arg("options") = CatSearchOptions{});
}
