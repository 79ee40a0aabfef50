#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coulombgap/asymptotics.hpp"
#include "coulombgap/droplet.hpp"
#include "coulombgap/kernel.hpp"
#include "coulombgap/potential.hpp"
#include "coulombgap/specfun.hpp"
#include "coulombgap/statistics.hpp"

namespace py = pybind11;
using namespace coulombgap;

PYBIND11_MODULE(_coulombgap, m) {
    m.doc() = "Exact and asymptotic statistics of the 2D Coulomb gas with an "
              "annular spectral gap";

    py::class_<RadialPotential>(m, "RadialPotential")
        .def(py::init<std::vector<double>>(), py::arg("coeffs"))
        .def("q", &RadialPotential::q)
        .def("dq", &RadialPotential::dq)
        .def("laplacian", &RadialPotential::laplacian)
        .def("cumulative_mass_function",
             &RadialPotential::cumulative_mass_function)
        .def_property_readonly("coefficients",
                               &RadialPotential::coefficients);

    py::class_<RadialTestFunction>(m, "RadialTestFunction")
        .def_static("bump", &RadialTestFunction::bump, py::arg("r_lo"),
                    py::arg("r_hi"), py::arg("amplitude") = 1.0)
        .def_static("plateau", &RadialTestFunction::plateau, py::arg("r_lo"),
                    py::arg("p_lo"), py::arg("p_hi"), py::arg("r_hi"),
                    py::arg("amplitude") = 1.0)
        .def_static("zero", &RadialTestFunction::zero)
        .def("value", &RadialTestFunction::value)
        .def("deriv", &RadialTestFunction::deriv);

    py::class_<GapParams>(m, "GapParams")
        .def_readonly("r1", &GapParams::r1)
        .def_readonly("r2", &GapParams::r2)
        .def_readonly("B", &GapParams::B)
        .def_readonly("A", &GapParams::A)
        .def_readonly("rho", &GapParams::rho)
        .def_readonly("u", &GapParams::u)
        .def_readonly("C_lemma", &GapParams::C_lemma)
        .def_readonly("dq1", &GapParams::dq1)
        .def_readonly("dq2", &GapParams::dq2)
        .def_readonly("a0", &GapParams::a0);

    py::class_<NDependentGapState>(m, "NDependentGapState")
        .def_readonly("n", &NDependentGapState::n)
        .def_readonly("m", &NDependentGapState::m)
        .def_readonly("x", &NDependentGapState::x)
        .def_readonly("alpha", &NDependentGapState::alpha);

    py::class_<DropletGeometry>(m, "DropletGeometry")
        .def_readonly("annuli", &DropletGeometry::annuli)
        .def_readonly("outer_radius", &DropletGeometry::outer_radius)
        .def_readonly("gaps", &DropletGeometry::gaps)
        .def_readonly("robin_gamma", &DropletGeometry::robin_gamma);

    m.def("solve_droplet", &solve_droplet, py::arg("potential"));
    m.def("gap_state", &gap_state, py::arg("gap"), py::arg("n"));
    m.def("equilibrium_mass", &equilibrium_mass, py::arg("geometry"),
          py::arg("potential"), py::arg("r"));

    m.def(
        "one_point_density",
        [](const RadialPotential& p, int n, double r,
           const RadialTestFunction& lam, double s) {
            const PerturbedPotential pp(p, lam, s, n);
            const WeightTable table = WeightTable::build(pp);
            return one_point(pp, table, Complex(r, 0.0));
        },
        py::arg("potential"), py::arg("n"), py::arg("r"),
        py::arg("test_function") = RadialTestFunction::zero(),
        py::arg("s") = 0.0,
        "Exact 1-point function at radius r (builds the norm table).");

    m.def(
        "predict_density_gap_inner",
        [](const RadialPotential& p, const GapParams& gp, int n, double t,
           double s, const RadialTestFunction& lam) {
            return predict_density_gap_inner(p, gp, gap_state(gp, n), t, s,
                                             lam)
                .total;
        },
        py::arg("potential"), py::arg("gap"), py::arg("n"), py::arg("t"),
        py::arg("s") = 0.0,
        py::arg("test_function") = RadialTestFunction::zero());

    m.def("exact_cgf_product", &exact_cgf_product, py::arg("test_function"),
          py::arg("potential"), py::arg("geometry"), py::arg("n"),
          py::arg("t"));
    m.def(
        "cgf_predict_radial",
        [](const RadialTestFunction& lam, const DropletGeometry& g,
           const RadialPotential& p, int n, double t) {
            if (g.gaps.empty())
                throw std::invalid_argument("geometry has no gap");
            const GapParams& gp = g.gaps.front();
            return cgf_predict_radial(lam, g, p, gp, gap_state(gp, n), t);
        },
        py::arg("test_function"), py::arg("geometry"), py::arg("potential"),
        py::arg("n"), py::arg("t"));

    m.def(
        "sample_fluctuations",
        [](const RadialPotential& p, const DropletGeometry& g,
           const RadialTestFunction& lam, int n, int count,
           std::uint64_t seed) {
            const SampleBatch b = sample(p, g, n, count, seed);
            return empirical_fluct(b, lam, p, g);
        },
        py::arg("potential"), py::arg("geometry"), py::arg("test_function"),
        py::arg("n"), py::arg("count"), py::arg("seed"));

    m.def(
        "jacobi_theta",
        [](std::complex<double> z, double im_tau) {
            return jacobi_theta(z, im_tau);
        },
        py::arg("z"), py::arg("im_tau"));
    m.def("erfc", [](double t) { return coulombgap::erfc(t); });
}
