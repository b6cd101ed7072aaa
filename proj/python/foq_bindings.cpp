#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "foq/algebra.hpp"
#include "foq/analysis.hpp"
#include "foq/compiler.hpp"
#include "foq/examples.hpp"
#include "foq/interpreter.hpp"
#include "foq/parser.hpp"
#include "foq/transform.hpp"

namespace py = pybind11;
using namespace foq;

namespace {

QuantumState state_of(const py::object& s) {
    if (py::isinstance<py::str>(s)) return QuantumState::basis(s.cast<std::string>());
    const auto amps = s.cast<std::vector<Complex>>();
    int n = 0;
    while ((std::size_t{1} << n) < amps.size()) ++n;
    if ((std::size_t{1} << n) != amps.size()) throw py::value_error("amplitude count is not a power of two");
    return QuantumState(n, amps);
}

// Holders must be mutable shared_ptrs, so terms travel in a small wrapper.
struct PyTerm {
    TermPtr term;
};

}  // namespace

PYBIND11_MODULE(_foq, m) {
    m.doc() = "FOQ quantum programs: checking, evaluation, compilation and the function algebra";

    py::register_exception<ParseException>(m, "ParseError", PyExc_ValueError);
    py::register_exception<CompileError>(m, "CompileError", PyExc_RuntimeError);
    py::register_exception<AlgebraError>(m, "AlgebraError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<Program>(m, "Program")
        .def("__str__", [](const Program& p) { return pretty_print(p); })
        .def_property_readonly("procedures", [](const Program& p) {
            std::vector<std::string> names;
            for (const auto& d : p.decls) names.push_back(d.name);
            return names;
        });

    m.def("parse", [](const std::string& text) { return parse_program_or_throw(text); }, py::arg("text"));
    m.def("check_pfoq", [](const Program& p) { return check_pfoq(p).to_json(); },
          "PFOQ verdict as a JSON string", py::arg("program"));
    m.def(
        "run",
        [](const Program& p, const py::object& state, std::uint64_t budget) {
            EvalOptions opts;
            opts.budget = budget;
            const EvalOutcome out = run(p, state_of(state), opts);
            py::dict d;
            d["ok"] = out.ok();
            d["level"] = out.level;
            d["amplitudes"] = out.state.amplitudes();
            if (!out.ok()) d["error"] = out.error;
            return d;
        },
        "Evaluates on a bit string or a list of amplitudes", py::arg("program"), py::arg("state"),
        py::arg("budget") = kDefaultBudget);
    m.def("level", [](const Program& p, int n) { return level_of(p, n); }, py::arg("program"), py::arg("n"));
    m.def("invert", [](const Program& p) { return invert(p); }, py::arg("program"));
    m.def(
        "compile",
        [](const Program& p, int n, bool merge) {
            CompileOptions opts;
            opts.merge = merge;
            const CompileResult r = compile(p, n, opts);
            return py::make_tuple(r.circuit.to_json(), r.stats.to_json());
        },
        "Returns (circuit JSON, stats JSON)", py::arg("program"), py::arg("n"), py::arg("merge") = true);
    m.def(
        "diff_check",
        [](const Program& p, int n, std::uint64_t seed, std::size_t samples) {
            return diff_check(p, n, seed, samples).to_json();
        },
        py::arg("program"), py::arg("n"), py::arg("seed") = 0, py::arg("samples") = 16);

    py::class_<PyTerm>(m, "Term")
        .def("__str__", [](const PyTerm& t) { return t.term->to_string(); })
        .def_property_readonly("size", [](const PyTerm& t) { return t.term->size(); });
    m.def("parse_term", [](const std::string& text) { return PyTerm{parse_term(text)}; }, py::arg("text"));
    m.def(
        "eval_algebra",
        [](const PyTerm& t, const py::object& state) { return eval_algebra(t.term, state_of(state)).amplitudes(); },
        py::arg("term"), py::arg("state"));
    m.def("to_pfoq", [](const PyTerm& t) { return to_pfoq(t.term); }, py::arg("term"));
    m.def("phi_encode_bits", &phi_encode_bits, py::arg("x"), py::arg("poly"));
    m.def("examples", [] {
        py::dict d;
        for (const auto& [name, src] : example_sources()) d[py::str(name)] = src;
        return d;
    });
}
