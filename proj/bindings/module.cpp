// Python bindings for the main operations: gradings, the parametrized
// families, the engine, duality/exactness checkers, and JSON round trips.
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mackeycoh/cohomology.hpp"
#include "mackeycoh/cone.hpp"
#include "mackeycoh/error.hpp"
#include "mackeycoh/render.hpp"
#include "mackeycoh/serialize.hpp"

namespace py = pybind11;
using namespace mackeycoh;

namespace {

// Route integers through the decimal string so values beyond 64 bits
// survive the crossing.
py::object int_to_py(const Int& v) {
    return py::module_::import("builtins").attr("int")(v.str());
}

py::tuple level_to_py(const FgAbGroup& g) {
    py::list tor;
    for (const Int& d : g.torsion()) tor.append(int_to_py(d));
    return py::make_tuple(g.rank(), std::move(tor));
}

py::list mat_to_py(const Mat& m) {
    py::list rows;
    for (int i = 0; i < m.rows(); ++i) {
        py::list row;
        for (int j = 0; j < m.cols(); ++j) row.append(int_to_py(m(i, j)));
        rows.append(std::move(row));
    }
    return rows;
}

Subset to_subset(const std::vector<int>& v) { return Subset(v.begin(), v.end()); }

Grading as_grading(const py::object& obj, long long p, int n) {
    if (py::isinstance<Grading>(obj)) return obj.cast<Grading>();
    return parse_grading(obj.cast<std::string>(), p, n).grading;
}

py::list lines_to_py(const CheckReport& rep) {
    py::list out;
    for (const std::string& line : rep.lines) out.append(line);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() =
        "Exact RO(G)-graded Bredon cohomology of S^0 for cyclic p-groups";

    // Base first: translators run newest-first, so the derived kinds
    // registered below win over the blanket Error.
    const auto base = py::register_exception<Error>(mod, "MackeyError");
    py::register_exception<ParseError>(mod, "GradingParseError", PyExc_ValueError);
    py::register_exception<mackeycoh::IndexError>(mod, "DomainError",
                                                  PyExc_ValueError);
    py::register_exception<InvalidDiagram>(mod, "InvalidDiagram", base.ptr());
    py::register_exception<OrderTooLarge>(mod, "OrderTooLarge", base.ptr());
    py::register_exception<UnknownDependencyError>(mod, "UnknownDependencyError",
                                                   base.ptr());
    py::register_exception<StoreConflict>(mod, "StoreConflict", base.ptr());
    py::register_exception<DualityViolation>(mod, "DualityViolation", base.ptr());
    py::register_exception<ExactnessViolation>(mod, "ExactnessViolation",
                                               base.ptr());

    py::class_<Grading>(mod, "Grading")
        .def(py::init<int, long long, std::vector<long long>>(), py::arg("n"),
             py::arg("c"), py::arg("a"))
        .def_readonly("n", &Grading::n)
        .def_readonly("c", &Grading::c)
        .def_readonly("a", &Grading::a)
        .def("fixed_dim", &Grading::fixed_dim, py::arg("m"))
        .def("total_dim", &Grading::total_dim)
        .def("anderson_dual", &Grading::anderson_dual)
        .def("quotient", &Grading::quotient)
        .def("restricted", &Grading::restricted, py::arg("m"))
        .def("plus_c", &Grading::plus_c, py::arg("k"))
        .def("plus_lambda", &Grading::plus_lambda, py::arg("i"),
             py::arg("k") = 1)
        .def("render", &Grading::render)
        .def("__str__", &Grading::render)
        .def("__repr__",
             [](const Grading& g) { return "Grading(" + g.render() + ")"; })
        .def(py::self == py::self);

    mod.def(
        "parse_grading",
        [](const std::string& text, long long p, int n) {
            return parse_grading(text, p, n).grading;
        },
        py::arg("text"), py::arg("p"), py::arg("n"),
        "Parse a grading expression such as '2*L1 - 2*L0' or 'L(3) + 1'");

    py::class_<MackeyFunctor>(mod, "MackeyFunctor")
        .def_property_readonly("p", &MackeyFunctor::p)
        .def_property_readonly("n", &MackeyFunctor::n)
        .def("level", [](const MackeyFunctor& m, int k) {
            return level_to_py(m.level(k));
        }, py::arg("k"), "(rank, [invariant factors]) of level k")
        .def("levels", [](const MackeyFunctor& m) {
            py::list out;
            for (int k = 0; k <= m.n(); ++k) out.append(level_to_py(m.level(k)));
            return out;
        })
        .def("res", [](const MackeyFunctor& m, int k) {
            return mat_to_py(m.res(k).mat());
        }, py::arg("k"))
        .def("tr", [](const MackeyFunctor& m, int k) {
            return mat_to_py(m.tr(k).mat());
        }, py::arg("k"))
        .def("is_zero", &MackeyFunctor::is_zero)
        .def("ascii", [](const MackeyFunctor& m) { return render_ascii(m); })
        .def("latex", [](const MackeyFunctor& m) { return render_latex(m); })
        .def("to_json",
             [](const MackeyFunctor& m) { return functor_to_json(m).dump(); })
        .def("__repr__", &MackeyFunctor::to_string)
        .def(py::self == py::self);

    mod.def("from_json", [](const std::string& text) {
        return functor_from_json(Json::parse(text, nullptr, true));
    }, py::arg("text"), "Inverse of MackeyFunctor.to_json");

    mod.def("z_s", [](long long p, int n, const std::vector<int>& s) {
        return z_s(p, n, to_subset(s));
    }, py::arg("p"), py::arg("n"), py::arg("s"));
    mod.def("b_ts", [](long long p, int n, const std::vector<int>& t,
                       const std::vector<int>& s) {
        return b_ts(p, n, to_subset(t), to_subset(s));
    }, py::arg("p"), py::arg("n"), py::arg("t"), py::arg("s"));
    mod.def("t_n", &t_n, py::arg("p"), py::arg("n"));

    mod.def("direct_sum",
            py::overload_cast<const MackeyFunctor&, const MackeyFunctor&>(
                &direct_sum),
            py::arg("a"), py::arg("b"));
    mod.def("ext_l", &ext_l, py::arg("m"));
    mod.def("hom_l", &hom_l, py::arg("m"));
    mod.def("inflate", &inflate, py::arg("m"), py::arg("shift"));
    mod.def("extend_const", &extend_const, py::arg("m"), py::arg("n"));
    mod.def("extend_dual", &extend_dual, py::arg("m"), py::arg("n"));
    mod.def("restrict_to", &restrict_to, py::arg("m"), py::arg("new_n"));

    mod.def("iso_test", [](const MackeyFunctor& a, const MackeyFunctor& b) {
        const IsoResult r = iso_test(a, b);
        const char* verdict = r.verdict == IsoVerdict::Iso ? "iso"
                              : r.verdict == IsoVerdict::NotIso ? "not-iso"
                                                                : "unknown";
        return py::make_tuple(verdict, r.reason);
    }, py::arg("a"), py::arg("b"), "(verdict, reason); exact up to the cap");

    mod.def("recognize", [](const MackeyFunctor& m) -> py::object {
        const Recognition r = recognize(m);
        if (!r.expr) return py::none();
        return py::cast(render_expr(*r.expr, m.n()));
    }, py::arg("m"), "Catalog name, or None for a genuinely new diagram");

    py::class_<CohomResult>(mod, "CohomResult")
        .def_property_readonly("known", &CohomResult::known)
        .def_property_readonly("functor",
                               [](const CohomResult& r) -> py::object {
                                   if (!r.functor) return py::none();
                                   return py::cast(*r.functor);
                               })
        .def_readonly("reason", &CohomResult::reason)
        .def_property_readonly("trace", [](const CohomResult& r) {
            py::list out;
            for (const TraceEntry& t : r.trace)
                out.append(py::make_tuple(t.rule, t.paper_ref, t.subquery));
            return out;
        })
        .def("__repr__", [](const CohomResult& r) {
            return r.known() ? "CohomResult(" + r.functor->to_string() + ")"
                             : "CohomResult(unknown: " + r.reason + ")";
        });

    mod.def("compute", [](long long p, int n, const py::object& grading,
                          bool allow_flip) {
        return compute_cohomology(p, n, as_grading(grading, p, n), allow_flip);
    }, py::arg("p"), py::arg("n"), py::arg("grading"),
       py::arg("allow_flip") = true,
       "H^grading over C_{p^n}; grading may be a Grading or expression text");

    mod.def("cone_group", [](long long p, const py::object& grading, int n) {
        return level_to_py(cone_group(p, as_grading(grading, p, n)).group);
    }, py::arg("p"), py::arg("grading"), py::arg("n"),
       "Positive-cone presentation of the top level, as (rank, torsion)");

    mod.def("check_anderson", [](long long p, int n, const py::object& g) {
        return lines_to_py(check_anderson(p, n, as_grading(g, p, n)));
    }, py::arg("p"), py::arg("n"), py::arg("grading"));
    mod.def("check_les_orders", [](long long p, int n, int m,
                                   const py::object& g, int window) {
        return lines_to_py(check_les_orders(p, n, m, as_grading(g, p, n),
                                            window));
    }, py::arg("p"), py::arg("n"), py::arg("m"), py::arg("grading"),
       py::arg("window") = 4);

    mod.def("engine_version", &engine_version);
    mod.attr("__version__") = "0.1.0";
}
