#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>

#include "ptentropy/cli.hpp"
#include "ptentropy/coherent.hpp"
#include "ptentropy/eigenstates.hpp"
#include "ptentropy/entropy.hpp"
#include "ptentropy/errors.hpp"
#include "ptentropy/state_entropy.hpp"

namespace py = pybind11;
using namespace pt;

namespace {

py::dict state_dict(const entropy::StateEntropies& s) {
    py::dict d;
    d["n"] = s.n;
    d["state"] = entropy::to_string(s.state);
    d["s_pos"] = s.s_pos.value;
    d["s_pos_error"] = s.s_pos.error;
    d["s_mom"] = s.s_mom.value;
    d["s_mom_error"] = s.s_mom.error;
    d["sum"] = s.report.sum;
    d["margin"] = s.report.margin;
    d["bbm"] = entropy::to_string(s.report.status);
    d["position_norm"] = s.position_norm;
    d["momentum_norm"] = s.momentum_norm;
    if (!std::isnan(s.s_pos_analytic)) d["s_pos_analytic"] = s.s_pos_analytic;
    return d;
}

entropy::Tolerances tolerances(std::optional<double> tol) {
    auto t = entropy::Tolerances::from_environment();
    if (tol) t.norm = t.entropy = *tol;
    return t;
}

template <typename T>
py::array_t<T> to_array(const T* data, std::size_t count) {
    py::array_t<T> out(static_cast<py::ssize_t>(count));
    std::copy(data, data + count, out.mutable_data());
    return out;
}

coherent::CoherentStateSpec coherent_spec(double rho, double alpha, std::complex<double> gamma, int n_states) {
    return {eigenstates::TrigPTSpec(rho, alpha), gamma, n_states};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shannon entropies of Pöschl-Teller bound states and coherent-state entropy carpets";
    m.attr("__version__") = PTENTROPY_VERSION;
    m.attr("BBM_BOUND") = entropy::kBbmBound;

    auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<UsageError>(m, "UsageError", domain.ptr());

    m.def("analytic_ground_entropy",
          [](int n) { return eigenstates::hpt_analytic_ground_entropy(eigenstates::HyperbolicPTSpec(n)); },
          py::arg("n"), "Closed-form position entropy of the hyperbolic ground state.");

    m.def(
        "ground_entropies",
        [](int n, std::optional<double> tol) {
            py::gil_scoped_release release;
            const auto s = entropy::hpt_state_entropies(eigenstates::HyperbolicPTSpec(n), entropy::HptState::Ground,
                                                        tolerances(tol));
            py::gil_scoped_acquire acquire;
            return state_dict(s);
        },
        py::arg("n"), py::arg("tol") = py::none(), "Position and momentum entropies of the ground state.");

    m.def(
        "excited_entropies",
        [](int n, std::optional<double> tol) {
            py::gil_scoped_release release;
            const auto s = entropy::hpt_state_entropies(eigenstates::HyperbolicPTSpec(n), entropy::HptState::Excited,
                                                        tolerances(tol));
            py::gil_scoped_acquire acquire;
            return state_dict(s);
        },
        py::arg("n"), py::arg("tol") = py::none(), "Entropies of the first excited state (n >= 2).");

    m.def(
        "table1",
        [](int n_lo, int n_hi) {
            cli::RunConfig c;
            c.subcommand = cli::Subcommand::Table1;
            c.n_lo = n_lo;
            c.n_hi = n_hi;
            c.tol = entropy::Tolerances::from_environment();
            cli::TableRun run;
            {
                py::gil_scoped_release release;
                run = cli::run_table1(c);
            }
            py::list rows;
            for (const auto& r : run.table.rows) {
                py::dict d;
                for (std::size_t i = 0; i < r.size(); ++i) d[py::str(run.table.columns[i])] = r[i];
                rows.append(d);
            }
            return rows;
        },
        py::arg("n_lo") = 2, py::arg("n_hi") = 13, "BBM table for the first excited state.");

    m.def(
        "bbm_check",
        [](double s_pos, double s_mom, double err) {
            const auto r = entropy::bbm_check(s_pos, s_mom, err);
            py::dict d;
            d["sum"] = r.sum;
            d["bound"] = r.bbm_bound;
            d["margin"] = r.margin;
            d["status"] = entropy::to_string(r.status);
            return d;
        },
        py::arg("s_pos"), py::arg("s_mom"), py::arg("err") = 0.0);

    m.def(
        "coherent_coefficients",
        [](double rho, double alpha, std::complex<double> gamma, int n_states) {
            const auto c = coherent::coherent_coefficients(coherent_spec(rho, alpha, gamma, n_states));
            return py::make_tuple(to_array(c.coeffs.data(), c.coeffs.size()), c.tail_mass,
                                  c.truncation_warning);
        },
        py::arg("rho"), py::arg("alpha"), py::arg("gamma"), py::arg("n_states"),
        "Returns (coefficients, tail_mass, truncation_warning).");

    m.def(
        "entropy_carpet",
        [](double rho, double alpha, std::complex<double> gamma, int n_states, std::size_t x_points,
           std::size_t t_points, std::optional<double> t_max, unsigned threads) {
            const auto spec = coherent_spec(rho, alpha, gamma, n_states);
            const auto xg = coherent::default_x_grid(spec.well, x_points);
            const auto tg = coherent::default_t_grid(spec.well, t_points, t_max);
            std::optional<coherent::CarpetField> field;
            {
                py::gil_scoped_release release;
                field.emplace(coherent::entropy_carpet(spec, xg, tg, threads));
            }
            py::array_t<double> values({static_cast<py::ssize_t>(field->rows()), static_cast<py::ssize_t>(field->cols())});
            std::copy(field->values.begin(), field->values.end(), values.mutable_data());
            auto as_array = [](const numerics::Grid1D& g) { return to_array(g.points().data(), g.size()); };
            return py::make_tuple(as_array(field->x_grid), as_array(field->t_grid), values);
        },
        py::arg("rho"), py::arg("alpha"), py::arg("gamma"), py::arg("n_states"), py::arg("x_points") = 400,
        py::arg("t_points") = 400, py::arg("t_max") = py::none(), py::arg("threads") = 0,
        "Returns (x, t, values) with values[i, j] = -ρ ln ρ at (t_i, x_j).");

    m.def(
        "revival_period",
        [](double rho, double alpha, std::complex<double> gamma, int n_states) {
            const auto r = coherent::revival_report(coherent_spec(rho, alpha, gamma, n_states));
            return py::make_tuple(r.period ? py::cast(*r.period) : py::none(), r.max_density_deviation);
        },
        py::arg("rho"), py::arg("alpha"), py::arg("gamma"), py::arg("n_states"),
        "Returns (period or None, max density deviation).");

    m.def("_selftest_json", [](const std::string& fault) {
        cli::RunConfig c;
        c.subcommand = cli::Subcommand::Selftest;
        c.inject_fault = fault;
        c.tol = entropy::Tolerances::from_environment();
        cli::SelftestRun run;
        {
            py::gil_scoped_release release;
            run = cli::run_selftest(c);
        }
        return run.summary.dump();
    });
}
