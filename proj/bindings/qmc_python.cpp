// Python bindings for the core operations: tuples, the convolution family,
// q-series, solution transforms, catalogued constructions, spectral types.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmc/catalog.hpp"
#include "qmc/composition.hpp"
#include "qmc/io.hpp"
#include "qmc/spectral.hpp"

namespace py = pybind11;
using namespace qmc;

namespace {

SystemTuple make_tuple(Complex q, const std::vector<Complex>& poles,
                       const std::vector<CMatrix>& matrices) {
    return SystemTuple(QBase(q), poles, matrices);
}

py::dict mc_result_dict(const MCResult& mc) {
    py::dict d;
    d["reduced"] = mc.reduced;
    d["dim_K"] = static_cast<int>(mc.k_space.dim());
    d["dim_L"] = static_cast<int>(mc.l_space.dim());
    d["proj"] = mc.proj;
    d["lift"] = mc.lift;
    return d;
}

catalog::Params params_from_dict(const py::dict& kw) {
    catalog::Params p;
    for (auto item : kw) {
        const std::string key = py::cast<std::string>(item.first);
        if (key == "n") {
            p.jp_n = py::cast<int>(item.second);
            continue;
        }
        const Complex z = py::cast<Complex>(item.second);
        if (key == "q") p.q = z;
        else if (key == "mu") p.mu = z;
        else if (key == "lambda" || key == "lam") p.lambda = z;
        else if (key == "mu2") p.mu2 = z;
        else if (key == "lambda2" || key == "lam2") p.lambda2 = z;
        else if (key == "alpha" || key == "alpha1") p.alphas[0] = z;
        else if (key == "alpha2") p.alphas[1] = z;
        else if (key == "alpha3") p.alphas[2] = z;
        else if (key == "beta" || key == "beta1") p.betas[0] = z;
        else if (key == "beta2") p.betas[1] = z;
        else if (key == "beta3") p.betas[2] = z;
        else if (key == "gamma" || key == "gamma1") p.gammas[0] = z;
        else if (key == "gamma2") p.gammas[1] = z;
        else throw ArgumentError("unknown parameter '" + key + "'");
    }
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "operators and verifications for first-order q-difference systems";

    py::register_exception<Error>(m, "QmcError");

    py::class_<SystemTuple>(m, "SystemTuple")
        .def(py::init(&make_tuple), py::arg("q"), py::arg("poles"), py::arg("matrices"))
        .def_readonly("q", &SystemTuple::q)
        .def_readonly("poles", &SystemTuple::poles)
        .def_readonly("matrices", &SystemTuple::matrices)
        .def_property_readonly("m", &SystemTuple::m)
        .def("b_infinity", &SystemTuple::b_infinity)
        .def("to_json", [](const SystemTuple& t) { return io::tuple_to_json(t); })
        .def("__repr__", [](const SystemTuple& t) {
            return "<SystemTuple m=" + std::to_string(t.m()) +
                   " poles=" + std::to_string(t.num_poles()) + ">";
        });
    m.def("tuple_from_json", &io::tuple_from_json);

    m.def("eval_B", &eval_B);
    m.def("eval_rhs", &eval_rhs);
    m.def("add_mu", &add_mu);
    m.def("pole_move", &pole_move);
    m.def("q_convolution", &q_convolution);
    m.def("dr_convolution", &dr_convolution);
    m.def("sy_convolution", &sy_convolution);
    m.def(
        "middle_convolution",
        [](const SystemTuple& t, Complex lambda) {
            return mc_result_dict(middle_convolution(t, lambda));
        },
        py::arg("t"), py::arg("lambda"));
    m.def(
        "propagate",
        [](const SystemTuple& t, Complex x0, const CVector& y0, int steps, int direction) {
            GridFunction g = propagate(t, x0, y0, steps, direction);
            py::dict d;
            for (const auto& [n, v] : g.values) d[py::int_(n)] = v;
            return d;
        },
        py::arg("t"), py::arg("x0"), py::arg("y0"), py::arg("steps"),
        py::arg("direction") = 1);

    m.def(
        "qpoch_inf", [](Complex a, Complex q) { return qpoch_inf(a, QBase(q)); },
        py::arg("a"), py::arg("q"));
    m.def(
        "qpoch_fin", [](Complex a, Complex q, int n) { return qpoch_fin(a, QBase(q), n); },
        py::arg("a"), py::arg("q"), py::arg("n"));
    m.def(
        "phi21",
        [](Complex a, Complex b, Complex c, Complex q, Complex z) {
            return phi21(a, b, c, QBase(q), z).value;
        },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("q"), py::arg("z"));
    m.def(
        "phi32",
        [](Complex a1, Complex a2, Complex a3, Complex b1, Complex b2, Complex q, Complex z) {
            return phi32(a1, a2, a3, b1, b2, QBase(q), z).value;
        },
        py::arg("a1"), py::arg("a2"), py::arg("a3"), py::arg("b1"), py::arg("b2"),
        py::arg("q"), py::arg("z"));
    m.def(
        "kernel_eval",
        [](int variant, Complex lambda, Complex q, Complex x, Complex s) {
            const KernelSpec spec{variant == 2 ? KernelSpec::Variant::K2
                                               : KernelSpec::Variant::K1,
                                  lambda};
            return kernel_eval(spec, QBase(q), x, s);
        },
        py::arg("variant"), py::arg("lambda"), py::arg("q"), py::arg("x"), py::arg("s"));
    m.def(
        "jackson_integral",
        [](const std::function<Complex(Complex)>& f, Complex xi, Complex q, double tol) {
            JacksonOptions opt;
            opt.tol = tol;
            return jackson_integral_scalar(f, xi, QBase(q), opt).value;
        },
        py::arg("f"), py::arg("xi"), py::arg("q"), py::arg("tol") = 1e-12);

    m.def(
        "seed_tuple",
        [](Complex mu, const std::vector<Complex>& alphas, const std::vector<Complex>& betas,
           Complex q) { return seed_tuple(SeedSolution(mu, alphas, betas), QBase(q)); },
        py::arg("mu"), py::arg("alphas"), py::arg("betas"), py::arg("q"));
    m.def(
        "convergence_certificate",
        [](const SystemTuple& t, Complex lambda) {
            auto c = convergence_certificate(t, lambda);
            py::dict d;
            d["eig_I_minus_B0"] = c.eig_i_minus_b0;
            d["eig_I_minus_sum"] = c.eig_i_minus_sum;
            d["passes"] = c.passes;
            return d;
        },
        py::arg("t"), py::arg("lambda"));

    m.def("check_star", [](const SystemTuple& t) { return check_star(t); });
    m.def("check_doublestar", [](const SystemTuple& t) { return check_doublestar(t); });
    m.def(
        "additivity_check",
        [](const SystemTuple& t, Complex l1, Complex l2, double tol) {
            auto r = additivity_check(t, l1, l2, tol);
            py::dict d;
            d["dims_match"] = r.dims_match;
            d["intertwine_residual"] = r.intertwine_residual;
            d["passes"] = r.passes;
            return d;
        },
        py::arg("t"), py::arg("l1"), py::arg("l2"), py::arg("tol") = 1e-8);

    m.def("spectral_type", [](const SystemTuple& t) {
        SpectralType st = spectral_type(t);
        py::dict d;
        d["rendered"] = st.rendered();
        d["s0"] = st.s0;
        d["s_inf"] = st.s_inf;
        d["s_div"] = st.s_div;
        d["non_generic"] = st.non_generic;
        return d;
    });

    m.def("catalog_names", [] { return catalog::names(); });
    m.def(
        "catalog_build",
        [](const std::string& name, const py::dict& kw) {
            auto res = catalog::build(name, params_from_dict(kw));
            py::dict d;
            d["name"] = res.name;
            d["chain"] = res.chain;
            py::list steps;
            for (const auto& mc : res.mc_steps) steps.append(mc_result_dict(mc));
            d["mc_steps"] = steps;
            return d;
        },
        py::arg("name"), py::arg("params") = py::dict());
    m.def(
        "catalog_tuple",
        [](const std::string& name, const py::dict& kw) {
            return catalog::printed_tuple(name, params_from_dict(kw));
        },
        py::arg("name"), py::arg("params") = py::dict());
}
