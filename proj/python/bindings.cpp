// bindings.cpp - pybind11 module exposing the core simulator operations
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dickesim/observables.hpp"
#include "dickesim/propagators.hpp"
#include "dickesim/runner.hpp"
#include "dickesim/version.hpp"

namespace py = pybind11;
using namespace dicke;

namespace {

std::vector<double> column(const Trajectory& t, double SampleRecord::*field) {
    std::vector<double> out;
    out.reserve(t.records.size());
    for (const auto& r : t.records) out.push_back(r.*field);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quench dynamics of the Dicke model, its quadratic reductions and the "
              "open-system variant, with closed-form oracles.";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DimensionError>(m, "DimensionError");
    py::register_exception<TruncationError>(m, "TruncationError");
    py::register_exception<SubcriticalError>(m, "SubcriticalError");
    py::register_exception<RegimeError>(m, "RegimeError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<FockSpace>(m, "FockSpace")
        .def(py::init<int>(), py::arg("cutoff"))
        .def_readonly("cutoff", &FockSpace::cutoff)
        .def_property_readonly("dim", &FockSpace::dim);

    py::class_<SpinSpace>(m, "SpinSpace")
        .def(py::init<int>(), py::arg("n_spins"))
        .def_readonly("n_spins", &SpinSpace::n_spins)
        .def_property_readonly("dim", &SpinSpace::dim);

    py::class_<SpaceTag>(m, "SpaceTag")
        .def_readonly("fock_dim", &SpaceTag::fock_dim)
        .def_readonly("spin_dim", &SpaceTag::spin_dim)
        .def_property_readonly("dim", &SpaceTag::dim)
        .def("__repr__", [](const SpaceTag& t) { return "<SpaceTag " + t.str() + ">"; });

    py::class_<Operator>(m, "Operator")
        .def_property_readonly("space", &Operator::space)
        .def_property_readonly("dim", &Operator::dim)
        .def("matrix", &Operator::dense, "Dense complex matrix")
        .def("adjoint", &Operator::adjoint)
        .def("is_hermitian", &Operator::is_hermitian, py::arg("tol") = 1e-12)
        .def("__add__", &Operator::operator+)
        .def("__sub__", &Operator::operator-)
        .def("__matmul__", &Operator::operator*)
        .def("scaled", &Operator::scaled);

    py::class_<StateVector>(m, "StateVector")
        .def_property_readonly("space", &StateVector::space)
        .def("amplitudes", &StateVector::amplitudes);

    py::class_<DensityOperator>(m, "DensityOperator")
        .def_static("pure", &DensityOperator::pure)
        .def_property_readonly("space", &DensityOperator::space)
        .def("matrix", [](const DensityOperator& r) { return r.matrix(); })
        .def("min_eigenvalue", &DensityOperator::min_eigenvalue);

    m.def("destroy", &destroy);
    m.def("create", &create);
    m.def("number_operator", &number_operator);
    m.def("position_quadrature", &position_quadrature);
    m.def("momentum_quadrature", &momentum_quadrature);
    m.def("identity_operator", &identity_operator);
    m.def("tensor", &tensor, py::arg("field_op"), py::arg("spin_op"));
    m.def("embed_field", &embed_field);
    m.def("embed_spin", &embed_spin);

    py::class_<SpinOperators>(m, "SpinOperators")
        .def_readonly("sx", &SpinOperators::sx)
        .def_readonly("sy", &SpinOperators::sy)
        .def_readonly("sz", &SpinOperators::sz)
        .def_readonly("s_minus", &SpinOperators::s_minus);
    m.def("spin_operators", &spin_operators);

    m.def("vacuum_spin_down", &vacuum_spin_down);
    m.def("fock_state", &fock_state);
    m.def("coherent_state", &coherent_state, py::arg("alpha"), py::arg("space"));

    m.def("expectation",
          static_cast<Complex (*)(const Operator&, const StateVector&)>(&expectation));
    m.def("expectation",
          static_cast<Complex (*)(const Operator&, const DensityOperator&)>(&expectation));

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double omega, double Omega, int n_spins, double g, double kappa,
                         double gamma, int cutoff) {
                 ModelParams p{omega, Omega, n_spins, g, kappa, gamma, cutoff};
                 p.validate();
                 return p;
             }),
             py::arg("omega") = 1.0, py::arg("Omega") = 1.0, py::arg("n_spins") = 1,
             py::arg("g") = 0.0, py::arg("kappa") = 0.0, py::arg("gamma") = 0.0,
             py::arg("cutoff") = 1)
        .def_readwrite("omega", &ModelParams::omega)
        .def_readwrite("Omega", &ModelParams::Omega)
        .def_readwrite("n_spins", &ModelParams::n_spins)
        .def_readwrite("g", &ModelParams::g)
        .def_readwrite("kappa", &ModelParams::kappa)
        .def_readwrite("gamma", &ModelParams::gamma)
        .def_readwrite("cutoff", &ModelParams::cutoff)
        .def_property_readonly("g_c", &ModelParams::g_c)
        .def_property_readonly("thermodynamic_parameter", &ModelParams::thermodynamic_parameter);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("FullDicke", ModelKind::FullDicke)
        .value("EffectiveSpinField", ModelKind::EffectiveSpinField)
        .value("FieldOnly", ModelKind::FieldOnly)
        .value("QuadratureOscillator", ModelKind::QuadratureOscillator);

    m.def("build_hamiltonian", &build_hamiltonian);
    m.def("critical_coupling", &critical_coupling);
    m.def("effective_frequency", &effective_frequency);
    m.def("polaron_transform", &polaron_transform);
    m.def("double_well_potential", &double_well_potential, py::arg("x"), py::arg("params"));
    m.def("well_minima", &well_minima);
    m.def("critical_photon_number", &critical_photon_number, py::arg("params"),
          py::arg("fraction") = 0.25);
    m.def("critical_time", &critical_time, py::arg("params"), py::arg("fraction") = 0.25);
    m.def("critical_time_exact", &critical_time_exact, py::arg("params"),
          py::arg("fraction") = 0.25);
    m.def("parity_operator", &parity_operator);

    py::class_<TimeGrid>(m, "TimeGrid")
        .def_static("uniform", &TimeGrid::uniform, py::arg("t_end"), py::arg("n_samples"),
                    py::arg("t_start") = 0.0)
        .def_static("from_samples", &TimeGrid::from_samples)
        .def_readonly("samples", &TimeGrid::samples);

    py::class_<PropagatorOptions>(m, "PropagatorOptions")
        .def(py::init<>())
        .def_readwrite("tail_threshold", &PropagatorOptions::tail_threshold)
        .def_readwrite("tail_fraction", &PropagatorOptions::tail_fraction)
        .def_readwrite("retain_states", &PropagatorOptions::retain_states)
        .def_readwrite("retain_times", &PropagatorOptions::retain_times)
        .def_readwrite("max_step", &PropagatorOptions::max_step)
        .def_readwrite("threads", &PropagatorOptions::threads);

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times",
                               [](const Trajectory& t) { return column(t, &SampleRecord::t); })
        .def_property_readonly(
            "photon_numbers", [](const Trajectory& t) { return column(t, &SampleRecord::photon); })
        .def_property_readonly("sx", [](const Trajectory& t) { return column(t, &SampleRecord::sx); })
        .def_property_readonly("sy", [](const Trajectory& t) { return column(t, &SampleRecord::sy); })
        .def_property_readonly("sz", [](const Trajectory& t) { return column(t, &SampleRecord::sz); })
        .def_property_readonly("mean_x",
                               [](const Trajectory& t) { return column(t, &SampleRecord::mean_x); })
        .def_property_readonly("mean_p",
                               [](const Trajectory& t) { return column(t, &SampleRecord::mean_p); })
        .def_property_readonly("var_x",
                               [](const Trajectory& t) { return column(t, &SampleRecord::var_x); })
        .def_property_readonly("var_p",
                               [](const Trajectory& t) { return column(t, &SampleRecord::var_p); })
        .def_property_readonly("norm_or_trace",
                               [](const Trajectory& t) {
                                   return column(t, &SampleRecord::norm_or_trace);
                               })
        .def_property_readonly("tail",
                               [](const Trajectory& t) { return column(t, &SampleRecord::tail); })
        .def_readonly("breached", &Trajectory::breached)
        .def_readonly("breach_time", &Trajectory::breach_time)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("density_states", &Trajectory::density_states)
        .def_readonly("state_times", &Trajectory::state_times)
        .def_readonly("positivity_warning", &Trajectory::positivity_warning);

    m.def("evolve_unitary", &evolve_unitary, py::arg("hamiltonian"), py::arg("psi0"),
          py::arg("grid"), py::arg("options") = PropagatorOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("evolve_lindblad", &evolve_lindblad, py::arg("hamiltonian"), py::arg("params"),
          py::arg("rho0"), py::arg("grid"), py::arg("options") = PropagatorOptions{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<CovarianceState>(m, "CovarianceState")
        .def_readonly("mean_x", &CovarianceState::mean_x)
        .def_readonly("mean_p", &CovarianceState::mean_p)
        .def_readonly("var_x", &CovarianceState::var_x)
        .def_readonly("var_p", &CovarianceState::var_p)
        .def_readonly("cov_xp", &CovarianceState::cov_xp)
        .def_property_readonly("photon_number", &CovarianceState::photon_number)
        .def("sigma", &CovarianceState::sigma);
    m.def("gaussian_oracle", &gaussian_oracle);

    py::class_<EchoResult>(m, "EchoResult")
        .def_readonly("times", &EchoResult::times)
        .def_readonly("overlaps", &EchoResult::overlaps)
        .def_readonly("breached", &EchoResult::breached)
        .def_readonly("breach_time", &EchoResult::breach_time);
    m.def("echo_overlap", &echo_overlap, py::arg("h_a"), py::arg("h_b"), py::arg("psi0"),
          py::arg("grid"), py::arg("options") = PropagatorOptions{},
          py::call_guard<py::gil_scoped_release>());

    m.def("photon_number", static_cast<double (*)(const StateVector&)>(&photon_number));
    m.def("photon_number", static_cast<double (*)(const DensityOperator&)>(&photon_number));
    m.def("reduce_field", &reduce_field);

    py::class_<Variances>(m, "Variances")
        .def_readonly("var_x", &Variances::var_x)
        .def_readonly("var_p", &Variances::var_p)
        .def_readonly("cov_xp", &Variances::cov_xp);
    m.def("quadrature_variances",
          static_cast<Variances (*)(const StateVector&)>(&quadrature_variances));
    m.def("quadrature_variances",
          static_cast<Variances (*)(const DensityOperator&)>(&quadrature_variances));

    py::class_<SpinExpectations>(m, "SpinExpectations")
        .def_readonly("sx", &SpinExpectations::sx)
        .def_readonly("sy", &SpinExpectations::sy)
        .def_readonly("sz", &SpinExpectations::sz);
    m.def("spin_expectations",
          static_cast<SpinExpectations (*)(const StateVector&)>(&spin_expectations));
    m.def("spin_expectations",
          static_cast<SpinExpectations (*)(const DensityOperator&)>(&spin_expectations));

    py::class_<HusimiGridSpec>(m, "HusimiGridSpec")
        .def(py::init<>())
        .def_static("auto_extent", &HusimiGridSpec::auto_extent, py::arg("marker_re_alpha"),
                    py::arg("points") = 201)
        .def_readwrite("n_re", &HusimiGridSpec::n_re)
        .def_readwrite("n_im", &HusimiGridSpec::n_im)
        .def_readwrite("re_max", &HusimiGridSpec::re_max)
        .def_readwrite("im_max", &HusimiGridSpec::im_max);

    py::class_<HusimiFrame>(m, "HusimiFrame")
        .def_readonly("re_alpha", &HusimiFrame::re_alpha)
        .def_readonly("im_alpha", &HusimiFrame::im_alpha)
        .def_readonly("values", &HusimiFrame::values)
        .def_readonly("alpha_convention", &HusimiFrame::alpha_convention)
        .def_property_readonly("flagged_count", &HusimiFrame::flagged_count)
        .def("normalization", &HusimiFrame::normalization);
    m.def("husimi_q", &husimi_q, py::arg("rho_field"), py::arg("spec"), py::arg("threads") = 0,
          py::call_guard<py::gil_scoped_release>());

    py::class_<InvarianceOverlap>(m, "InvarianceOverlap")
        .def_readonly("overlap", &InvarianceOverlap::overlap)
        .def_readonly("overlap_squared", &InvarianceOverlap::overlap_squared)
        .def_readonly("leading_order", &InvarianceOverlap::leading_order)
        .def_readonly("condition_value", &InvarianceOverlap::condition_value);
    m.def("invariance_overlap", &invariance_overlap);
}
