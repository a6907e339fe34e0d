// Python surface: circuits cross the boundary as canonical JSON text,
// reports as plain dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dqc/compile.hpp"
#include "dqc/expand.hpp"
#include "dqc/json_io.hpp"
#include "dqc/resources.hpp"
#include "dqc/verify.hpp"

namespace py = pybind11;
using namespace dqc;

namespace {

Strategy strategy_from(const std::string& s) {
    if (s == "bell_only") return Strategy::BellOnly;
    if (s == "fanout") return Strategy::FanOut;
    throw DqcError("strategy must be 'bell_only' or 'fanout', got '" + s + "'");
}

GhzMode mode_from(const std::string& s) {
    if (s == "one_shot") return GhzMode::OneShot;
    if (s == "tree") return GhzMode::Tree;
    throw DqcError("ghz_mode must be 'one_shot' or 'tree', got '" + s + "'");
}

CostModel cost_from(const py::dict& overrides) {
    CostModel m;
    for (const auto& item : overrides)
        m.set(item.first.cast<std::string>(), item.second.cast<double>());
    return m;
}

py::dict report_to_dict(const ResourceReport& r) {
    py::dict d;
    d["bell_pairs"] = r.bell_pairs;
    py::dict sizes;
    for (const auto& [k, cnt] : r.ghz_sizes) sizes[py::int_(k)] = cnt;
    d["ghz_sizes"] = sizes;
    d["bell_pairs_equiv"] = r.bell_pairs_equiv;
    d["measurements"] = r.measurements;
    d["corrections"] = r.conditioned_ops;
    d["expanded"] = r.expanded;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "distributed quantum circuit toolkit (C++ core)";

    py::register_exception<DqcError>(m, "DqcError");

    m.def(
        "build_qft", [](int n) { return serialize(build_qft_cp(n)); }, py::arg("n"),
        "Controlled-phase QFT over n qubits, one node per qubit, as circuit JSON.");

    m.def(
        "build_qaoa",
        [](const std::vector<std::tuple<int, int, double>>& edges) {
            std::vector<WeightedEdge> es;
            int n = 0;
            for (const auto& [p, q, theta] : edges) {
                es.push_back({p, q, theta});
                n = std::max({n, p + 1, q + 1});
            }
            return serialize(compile_qaoa_cost(es, n));
        },
        py::arg("edges"),
        "Cost layer for weighted edges [(p, q, theta), ...] as circuit JSON.");

    m.def(
        "build_pauli_exp",
        [](const std::string& pauli, double theta, int ancilla_node) {
            return serialize(compile_pauli_exp({pauli, theta}, nullptr, ancilla_node));
        },
        py::arg("pauli"), py::arg("theta"), py::arg("ancilla_node") = -1,
        "Ancilla-based exponential of a Pauli string as circuit JSON.");

    m.def(
        "build_parity",
        [](int n, const std::string& form) {
            const ParityForm f = form == "chain"     ? ParityForm::CnotChain
                                 : form == "fanout" ? ParityForm::FanOutForm
                                                    : throw DqcError("form must be 'chain' or 'fanout'");
            return serialize(build_parity_gate_simple(n, f));
        },
        py::arg("n"), py::arg("form") = "chain",
        "Parity-into-ancilla gate over n qubits as circuit JSON.");

    m.def(
        "group_fanouts",
        [](const std::string& circuit_json) {
            return serialize(group_fanouts(deserialize(circuit_json)));
        },
        py::arg("circuit_json"),
        "Merge controlled gates sharing a control into fan-out gates.");

    m.def(
        "expand",
        [](const std::string& circuit_json, const std::string& strategy,
           const std::string& ghz_mode) {
            const ExpansionResult ex = expand_all(deserialize(circuit_json),
                                                  strategy_from(strategy), mode_from(ghz_mode));
            return serialize(ex.circuit);
        },
        py::arg("circuit_json"), py::arg("strategy") = "fanout",
        py::arg("ghz_mode") = "one_shot",
        "Rewrite every remote gate into its entanglement protocol.");

    m.def(
        "count",
        [](const std::string& circuit_json) {
            return report_to_dict(count_resources(deserialize(circuit_json)));
        },
        py::arg("circuit_json"), "Entanglement, measurement and correction tallies.");

    m.def(
        "depth",
        [](const std::string& circuit_json, const py::dict& cost) {
            return depth(deserialize(circuit_json), cost_from(cost));
        },
        py::arg("circuit_json"), py::arg("cost") = py::dict(),
        "Weighted circuit depth under optional cost overrides.");

    m.def(
        "verify",
        [](const std::string& original_json, const std::string& expanded_json, double tol,
           uint64_t seed, int num_states) {
            VerifyOptions opt;
            opt.tol = tol;
            opt.seed = seed;
            opt.num_states = num_states;
            const VerifyResult r =
                verify_equivalence(deserialize(original_json), deserialize(expanded_json), opt);
            py::dict d;
            d["ok"] = r.pass;
            d["worst_infidelity"] = r.worst_infidelity;
            d["report"] = r.report;
            return d;
        },
        py::arg("original_json"), py::arg("expanded_json"), py::arg("tol") = 1e-9,
        py::arg("seed") = 1, py::arg("num_states") = 10,
        "Branch-by-branch equivalence check against the measurement-free original.");

    m.def(
        "compare_qft",
        [](const std::vector<int>& sizes, const py::dict& cost, const std::string& format) {
            const auto rows = compare_strategies(
                "qft", [](int n) { return build_qft_cp(n); }, sizes, cost_from(cost));
            if (format == "csv") return rows_to_csv(rows);
            if (format == "table") return rows_to_table(rows);
            throw DqcError("format must be 'csv' or 'table'");
        },
        py::arg("sizes"), py::arg("cost") = py::dict(), py::arg("format") = "csv",
        "Strategy comparison for the QFT family over the given sizes.");
}
