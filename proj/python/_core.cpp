#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fhardy/convex.hpp"
#include "fhardy/errors.hpp"
#include "fhardy/forms.hpp"
#include "fhardy/laplacian.hpp"
#include "fhardy/sharpness.hpp"
#include "fhardy/specfun.hpp"

namespace py = pybind11;
using namespace fhardy;
using namespace py::literals;

namespace {

QuadConfig make_quad(double rel_tol, double abs_tol, int max_subdivisions) {
    QuadConfig q;
    q.rel_tol = rel_tol;
    q.abs_tol = abs_tol;
    q.max_subdivisions = max_subdivisions;
    q.validate();
    return q;
}

py::dict pv(const PVResult& r) { return py::dict("value"_a = r.value, "error_estimate"_a = r.error_estimate); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Regional fractional Laplacian and fractional Hardy inequalities";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", PyExc_RuntimeError);

    m.def("kappa", [](int n, double alpha) { return kappa(n, Alpha(alpha)); }, "n"_a, "alpha"_a);
    m.def("killed_constant", [](double alpha) { return killed_constant(Alpha(alpha)); }, "alpha"_a);
    m.def("phi", [](double x, double alpha) { return phi(x, Alpha(alpha)); }, "x"_a, "alpha"_a);
    m.def("beta", &beta, "a"_a, "b"_a);
    m.def(
        "constants",
        [](int n, double alpha) {
            const auto c = constants(n, Alpha(alpha));
            return py::dict("n"_a = c.n, "kappa"_a = c.kappa_n_alpha, "beta_term"_a = c.beta_term,
                            "remainder_coeff"_a = c.remainder_coeff);
        },
        "n"_a, "alpha"_a);
    m.def("ground_state_potential", [](double x, double alpha) { return ground_state_potential(x, Alpha(alpha)); },
          "x"_a, "alpha"_a);

    py::class_<TestFunction>(m, "TestFunction")
        .def_static("zero", &TestFunction::zero)
        .def_static("bump", &TestFunction::smooth_bump, "center"_a, "width"_a, "order"_a = 1.0)
        .def_static("poly_cutoff", &TestFunction::poly_cutoff, "coefficients"_a, "lo"_a, "hi"_a)
        .def_static("hat", &TestFunction::hat, "nodes"_a)
        .def_static("truncated_ground_state", &TestFunction::truncated_ground_state, "n"_a, "alpha"_a)
        .def("__call__", &TestFunction::value, "x"_a)
        .def("support", [](const TestFunction& u) { return py::make_tuple(u.support().lo, u.support().hi); })
        .def("__repr__", &TestFunction::describe);

    m.def(
        "laplacian_power",
        [](double p, double x, double alpha, const std::string& method, double rel_tol, double abs_tol,
           int max_subdivisions) {
            const auto q = make_quad(rel_tol, abs_tol, max_subdivisions);
            if (method == "pv") return pv(regional_laplacian_pv(PowerFunction(p), x, Alpha(alpha), q));
            if (method == "closed") return pv(laplacian_power_closed_with_error(p, x, Alpha(alpha), q));
            throw DomainError("method must be pv or closed");
        },
        "p"_a, "x"_a, "alpha"_a, "method"_a = "pv", "rel_tol"_a = 1e-9, "abs_tol"_a = 1e-11,
        "max_subdivisions"_a = 2000);
    m.def(
        "regional_laplacian",
        [](const TestFunction& u, double x, double alpha) { return pv(regional_laplacian_pv(u, x, Alpha(alpha))); },
        "u"_a, "x"_a, "alpha"_a);

    m.def(
        "verify_identity",
        [](const TestFunction& u, double alpha) {
            const auto b = verify_gsr_identity(u, Alpha(alpha));
            return py::dict("energy"_a = b.energy, "gs_term"_a = b.gs_term, "kappa_term"_a = b.kappa_term,
                            "phi_term"_a = b.phi_term, "residual"_a = b.residual,
                            "error_estimate"_a = b.error_estimate);
        },
        "u"_a, "alpha"_a);
    m.def(
        "hardy_check",
        [](const TestFunction& u, double a, double b, double alpha) {
            const auto h = hardy_check_1d(u, {a, b}, Alpha(alpha));
            return py::dict("lhs"_a = h.lhs, "rhs_main"_a = h.rhs_main, "rhs_remainder"_a = h.rhs_remainder,
                            "slack"_a = h.slack, "error_budget"_a = h.error_budget, "pass"_a = h.holds());
        },
        "u"_a, "a"_a, "b"_a, "alpha"_a);
    m.def(
        "killed_check",
        [](const TestFunction& u, double alpha) {
            const auto k = killed_check(u, Alpha(alpha));
            return py::dict("full_energy"_a = k.full_energy, "regional_energy"_a = k.regional_energy,
                            "killing_term"_a = k.killing_term, "gs_term"_a = k.gs_term,
                            "const_term"_a = k.const_term, "identity_residual"_a = k.identity_residual,
                            "split_residual"_a = k.split_residual, "ineq_slack"_a = k.ineq_slack,
                            "error_budget"_a = k.error_budget);
        },
        "u"_a, "alpha"_a);

    m.def(
        "sharpness_sweep",
        [](const std::string& form, double alpha, const std::vector<int>& n_list) {
            py::list out;
            for (const auto& p : sharpness_sweep(form_kind_from_string(form), Alpha(alpha), n_list))
                out.append(py::dict("n"_a = p.n, "quotient"_a = p.quotient, "limit_constant"_a = p.limit_constant,
                                    "gap"_a = p.gap, "error_estimate"_a = p.error_estimate));
            return out;
        },
        "form"_a, "alpha"_a, "n_list"_a);
    m.def(
        "min_rayleigh",
        [](const std::string& form, double alpha, int n, double tol) {
            const FormKind kind = form_kind_from_string(form);
            DiscreteForm df;
            {
                py::gil_scoped_release release;
                df = assemble(kind, Alpha(alpha), n);
            }
            const auto r = min_rayleigh(df, tol);
            return py::dict("min_quotient"_a = r.min_quotient, "limit_constant"_a = limit_constant(kind, Alpha(alpha)),
                            "iterations"_a = r.iterations, "residual_norm"_a = r.residual_norm,
                            "grid"_a = df.grid());
        },
        "form"_a, "alpha"_a, "n"_a, "tol"_a = 1e-10);

    m.def(
        "convex_check",
        [](const std::string& shape, std::array<double, 2> center, double radius, double alpha,
           std::int64_t samples, std::uint64_t seed, const std::string& stratification) {
            ConvexDomain2D dom = ConvexDomain2D::disk({0.0, 0.0}, 1.0);
            if (shape == "square") dom = ConvexDomain2D::rectangle({-0.5, -0.5}, {0.5, 0.5});
            else if (shape != "disk") throw DomainError("shape must be disk or square");
            MCConfig mc;
            mc.sample_count = samples;
            mc.rng_seed = seed;
            mc.stratification = stratification_from_string(stratification);
            ConvexCheck r;
            {
                py::gil_scoped_release release;
                r = hardy_check_convex(dom, TestFunction2D::radial_bump(center, radius), Alpha(alpha), mc);
            }
            return py::dict("lhs"_a = r.lhs, "lhs_stderr"_a = r.lhs_stderr, "rhs_main"_a = r.rhs_main,
                            "rhs_remainder"_a = r.rhs_remainder, "rhs_stderr"_a = r.rhs_stderr,
                            "slack"_a = r.slack, "slack_stderr"_a = r.slack_stderr, "samples"_a = r.samples,
                            "seed"_a = r.seed, "pass"_a = r.holds());
        },
        "shape"_a, "center"_a, "radius"_a, "alpha"_a, "samples"_a = 1'000'000, "seed"_a = 0x5eed2024ULL,
        "stratification"_a = "radial");
}
