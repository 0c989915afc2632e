#include "jettower/estimates.hpp"
#include "jettower/jets.hpp"
#include "jettower/morse.hpp"
#include "jettower/schur_euler.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace jt;

namespace {

py::object to_py(const Int& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }

py::object to_py(const Rat& x) {
    return py::module_::import("fractions").attr("Fraction")(to_py(Int(x.get_num())), to_py(Int(x.get_den())));
}

// Coefficient lists are indexed by the power of d.
template <class P>
py::list coeffs(const P& p) {
    py::list out;
    for (const auto& c : p.coeffs()) out.append(to_py(c));
    return out;
}

Weight weight_or_default(int n, const std::optional<std::vector<long>>& w) {
    if (!w) return canonical_weight(n);
    Weight a;
    for (long x : *w) a.push_back(Int(x));
    return a;
}

}  // namespace

PYBIND11_MODULE(_jettower, m) {
    m.doc() = "Exact intersection numbers on Demailly jet towers";

    m.def(
        "reduce",
        [](int n, const std::string& monomial) {
            TowerContext ctx(n);
            return coeffs(ctx.evaluate_top(Poly::term(parse_monomial(monomial), Int(1))));
        },
        py::arg("n"), py::arg("monomial"), "Reduce a top-degree tower monomial to its coefficients in d.");

    m.def(
        "canonical_weight",
        [](int n) {
            py::list out;
            for (const auto& x : canonical_weight(n)) out.append(to_py(x));
            return out;
        },
        py::arg("n"));

    m.def(
        "morse_polynomials",
        [](int n, std::optional<std::vector<long>> weight, int workers) {
            MorseResult r = morse_polynomials(n, weight_or_default(n, weight), workers);
            return py::make_tuple(coeffs(r.P), coeffs(r.Pprime));
        },
        py::arg("n"), py::arg("weight") = py::none(), py::arg("workers") = 1, "Return (P, P') as coefficient lists.");

    m.def(
        "degree_threshold",
        [](int n, std::optional<std::vector<long>> weight, int workers) {
            return to_py(degree_threshold(n, weight_or_default(n, weight), workers));
        },
        py::arg("n"), py::arg("weight") = py::none(), py::arg("workers") = 1);

    m.def(
        "bound_ledger",
        [](int n) {
            py::dict out;
            for (const auto& [k, v] : bound_ledger(n).fields()) out[py::str(k)] = to_py(Int(v));
            return out;
        },
        py::arg("n"));

    m.def("check_2n5", &check_2n5, py::arg("n"));

    m.def(
        "chi_exact", [](int n, const std::vector<long>& lambda) { return coeffs(chi_exact(n, lambda)); }, py::arg("n"),
        py::arg("lambda_"));

    m.def("chi_e_leading", [](int n) { return coeffs(chi_E_leading(n)); }, py::arg("n"));

    m.def("h0_threshold", [](int n) { return to_py(h0_threshold(n)); }, py::arg("n"));

    m.def(
        "verify_jets",
        [](int n) {
            py::list out;
            for (const auto& c : verify_jets(n)) out.append(py::make_tuple(c.subject, c.check, c.passed));
            return out;
        },
        py::arg("n"));

    py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);
}
