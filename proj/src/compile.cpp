#include "dqc/compile.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <set>

namespace dqc {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Qubit> line_qubits(int n, const std::vector<int>* nodes,
                               const std::string& prefix = "q_") {
    if (nodes && static_cast<int>(nodes->size()) != n)
        throw DqcError("partition size does not match qubit count");
    std::vector<Qubit> qs;
    for (int i = 0; i < n; ++i)
        qs.push_back({i, prefix + std::to_string(i), nodes ? (*nodes)[static_cast<size_t>(i)] : i,
                      QubitRole::Computation});
    return qs;
}

}  // namespace

Circuit build_qft_cp(int n, const std::vector<int>* nodes) {
    if (n < 1) throw DqcError("build_qft_cp: n must be >= 1");
    Circuit c;
    c.name = "qft" + std::to_string(n);
    c.qubits = line_qubits(n, nodes);
    for (int j = 0; j < n; ++j) {
        c.gates.push_back(Local1Q{U1q::h(), j});
        const int width = n - 1 - j;
        if (width == 0) continue;
        if (width == 1) {
            c.gates.push_back(Controlled{U1q::p(kPi / 2.0), j, j + 1});
        } else {
            FanOut fo;
            fo.control = j;
            for (int t = j + 1; t < n; ++t)
                fo.targets.push_back({t, U1q::p(kPi / std::pow(2.0, t - j))});
            c.gates.push_back(std::move(fo));
        }
    }
    return c;
}

Circuit build_qft_cr(int n) {
    if (n < 1) throw DqcError("build_qft_cr: n must be >= 1");
    Circuit c;
    c.name = "qft_cr" + std::to_string(n);
    c.qubits = line_qubits(n, nullptr);
    for (int j = 0; j < n; ++j) {
        c.gates.push_back(Local1Q{U1q::h(), j});
        for (int k = 2; k <= n - j; ++k) {
            // R_k = P(2 pi / 2^k), controlled by the later qubit
            c.gates.push_back(Controlled{U1q::p(2.0 * kPi / std::pow(2.0, k)), j + k - 1, j});
        }
    }
    return c;
}

std::pair<Circuit, ResourceReport> compile_dqft(int n, Strategy strategy, GhzMode ghz_mode,
                                                const std::vector<int>* nodes) {
    const Circuit qft = build_qft_cp(n, nodes);
    ExpansionResult ex = expand_all(qft, strategy, ghz_mode);
    ResourceReport rep = count_resources(ex.circuit);
    rep.strategy = strategy_name(strategy);
    rep.ghz_mode = strategy == Strategy::BellOnly ? "-" : ghz_mode_name(ghz_mode);
    return {std::move(ex.circuit), std::move(rep)};
}

Circuit build_zz_term(const WeightedEdge& e) {
    if (e.p == e.q) throw DqcError("build_zz_term: self-loop edge");
    Circuit c;
    c.name = "zz_term";
    const int n = std::max(e.p, e.q) + 1;
    c.qubits = line_qubits(n, nullptr);
    c.gates.push_back(Controlled{U1q::p(-4.0 * e.theta), e.p, e.q});
    c.gates.push_back(Local1Q{U1q::rz(2.0 * e.theta), e.p});
    c.gates.push_back(Local1Q{U1q::rz(2.0 * e.theta), e.q});
    return c;
}

Circuit compile_qaoa_cost(const std::vector<WeightedEdge>& edges, int n,
                          const std::vector<int>* nodes) {
    Circuit c;
    c.name = "qaoa_cost";
    c.qubits = line_qubits(n, nodes);
    std::map<int, double> rz_angle;   // deferred, summed per qubit

    for (const auto& e : edges) {
        if (e.p == e.q) throw DqcError("compile_qaoa_cost: self-loop edge");
        if (e.p < 0 || e.p >= n || e.q < 0 || e.q >= n)
            throw DqcError("compile_qaoa_cost: edge endpoint out of range");
        rz_angle[e.p] += 2.0 * e.theta;
        rz_angle[e.q] += 2.0 * e.theta;
    }

    // maximal runs of edges sharing a control vertex with distinct targets
    size_t i = 0;
    while (i < edges.size()) {
        size_t j = i + 1;
        std::set<int> seen{edges[i].q};
        while (j < edges.size() && edges[j].p == edges[i].p && !seen.count(edges[j].q) &&
               edges[j].q != edges[i].p) {
            seen.insert(edges[j].q);
            ++j;
        }
        if (j - i == 1) {
            c.gates.push_back(Controlled{U1q::p(-4.0 * edges[i].theta), edges[i].p, edges[i].q});
        } else {
            FanOut fo;
            fo.control = edges[i].p;
            for (size_t k = i; k < j; ++k)
                fo.targets.push_back({edges[k].q, U1q::p(-4.0 * edges[k].theta)});
            c.gates.push_back(std::move(fo));
        }
        i = j;
    }

    for (const auto& [q, a] : rz_angle) c.gates.push_back(Local1Q{U1q::rz(a), q});
    return c;
}

Circuit build_parity_gate(const std::vector<int>& qubits, int ancilla, ParityForm form,
                          int n_qubits_total, const std::vector<int>* nodes,
                          int ancilla_node) {
    for (int q : qubits)
        if (q == ancilla) throw DqcError("build_parity_gate: ancilla collides with a qubit");
    if (qubits.empty()) throw DqcError("build_parity_gate: need at least one qubit");

    Circuit c;
    c.name = "parity";
    c.qubits = line_qubits(n_qubits_total, nodes);
    c.qubits.push_back({ancilla, "a_0",
                        ancilla_node >= 0 ? ancilla_node : n_qubits_total,
                        QubitRole::Ancilla});

    if (form == ParityForm::CnotChain) {
        for (int q : qubits) c.gates.push_back(Controlled{U1q::x(), q, ancilla});
        return c;
    }
    c.gates.push_back(Local1Q{U1q::h(), ancilla});
    for (int q : qubits) c.gates.push_back(Local1Q{U1q::h(), q});
    FanOut fo;
    fo.control = ancilla;
    for (int q : qubits) fo.targets.push_back({q, U1q::x()});
    c.gates.push_back(std::move(fo));
    for (int q : qubits) c.gates.push_back(Local1Q{U1q::h(), q});
    c.gates.push_back(Local1Q{U1q::h(), ancilla});
    return c;
}

Circuit build_parity_gate_simple(int n, ParityForm form) {
    std::vector<int> qs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) qs[static_cast<size_t>(i)] = i;
    return build_parity_gate(qs, n, form, n);
}

Circuit compile_pauli_exp(const PauliString& p, const std::vector<int>* nodes,
                          int ancilla_node) {
    const int n = static_cast<int>(p.ops.size());
    if (n == 0) throw DqcError("compile_pauli_exp: empty Pauli string");

    std::vector<int> active;   // qubit ids with non-I Pauli
    for (int i = 0; i < n; ++i) {
        // leftmost character = highest qubit index
        const char op = p.ops[static_cast<size_t>(n - 1 - i)];
        if (op == 'I') continue;
        if (op != 'X' && op != 'Y' && op != 'Z')
            throw DqcError("compile_pauli_exp: invalid Pauli character");
        active.push_back(i);
    }
    if (active.empty())
        throw DqcError("compile_pauli_exp: all-identity string is a global phase");

    const int ancilla = n;
    Circuit c;
    c.name = "pauli_exp_" + p.ops;
    c.qubits = line_qubits(n, nodes);
    c.qubits.push_back({ancilla, "a_0", ancilla_node >= 0 ? ancilla_node : n,
                        QubitRole::Ancilla});

    auto op_of = [&](int q) { return p.ops[static_cast<size_t>(n - 1 - q)]; };

    // conjugate X/Y positions into the Z basis: X uses H, Y uses V = S H
    // (V Z V^dag = Y), so the circuit applies Sdg,H before and H,S after.
    for (int q : active) {
        if (op_of(q) == 'X') {
            c.gates.push_back(Local1Q{U1q::h(), q});
        } else if (op_of(q) == 'Y') {
            c.gates.push_back(Local1Q{U1q::sdg(), q});
            c.gates.push_back(Local1Q{U1q::h(), q});
        }
    }

    auto parity_stage = [&]() {
        c.gates.push_back(Local1Q{U1q::h(), ancilla});
        for (int q : active) c.gates.push_back(Local1Q{U1q::h(), q});
        FanOut fo;
        fo.control = ancilla;
        for (int q : active) fo.targets.push_back({q, U1q::x()});
        c.gates.push_back(std::move(fo));
        for (int q : active) c.gates.push_back(Local1Q{U1q::h(), q});
        c.gates.push_back(Local1Q{U1q::h(), ancilla});
    };

    parity_stage();
    c.gates.push_back(Local1Q{U1q::rz(2.0 * p.theta), ancilla});
    parity_stage();

    for (int q : active) {
        if (op_of(q) == 'X') {
            c.gates.push_back(Local1Q{U1q::h(), q});
        } else if (op_of(q) == 'Y') {
            c.gates.push_back(Local1Q{U1q::h(), q});
            c.gates.push_back(Local1Q{U1q::s(), q});
        }
    }
    return c;
}

Circuit group_fanouts(const Circuit& c) {
    {
        const auto viols = validate(c);
        if (!viols.empty())
            throw DqcError("group_fanouts: input circuit has violation '" +
                           viols.front().rule + "'");
    }
    Circuit out;
    out.name = c.name;
    out.qubits = c.qubits;
    out.cbits = c.cbits;

    std::vector<bool> consumed(c.gates.size(), false);
    for (size_t i = 0; i < c.gates.size(); ++i) {
        if (consumed[i]) continue;
        const auto* first = std::get_if<Controlled>(&c.gates[i]);
        if (!first) {
            out.gates.push_back(c.gates[i]);
            continue;
        }
        // maximal munch: absorb later Controlled gates with the same control
        // and fresh targets, hopping over gates on disjoint qubits
        std::vector<const Controlled*> run{first};
        std::set<int> used{first->control, first->target};
        std::set<int> blocked;
        std::vector<size_t> members{i};
        for (size_t j = i + 1; j < c.gates.size(); ++j) {
            if (consumed[j]) continue;
            const auto* cand = std::get_if<Controlled>(&c.gates[j]);
            if (cand && cand->control == first->control && !used.count(cand->target) &&
                !blocked.count(cand->target) && !blocked.count(cand->control)) {
                run.push_back(cand);
                used.insert(cand->target);
                members.push_back(j);
                continue;
            }
            // barriers and measurements block everything behind them
            if (std::holds_alternative<Barrier>(c.gates[j])) break;
            const auto qs = gate_qubits(c.gates[j]);
            if (std::any_of(qs.begin(), qs.end(), [&](int q) { return used.count(q); }))
                break;
            blocked.insert(qs.begin(), qs.end());
        }
        if (run.size() == 1) {
            out.gates.push_back(c.gates[i]);
            continue;
        }
        FanOut fo;
        fo.control = first->control;
        for (const auto* g : run) fo.targets.push_back({g->target, g->u});
        out.gates.push_back(std::move(fo));
        for (size_t m : members) consumed[m] = true;
    }
    return out;
}

}  // namespace dqc
