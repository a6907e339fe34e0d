#include "dqc/expand.hpp"

#include <algorithm>
#include <cmath>

namespace dqc {

const char* strategy_name(Strategy s) {
    return s == Strategy::BellOnly ? "bell_only" : "fanout";
}

const char* ghz_mode_name(GhzMode m) {
    return m == GhzMode::OneShot ? "one_shot" : "tree";
}

namespace {

/// Shared state for one expansion run: allocates communication qubits and
/// classical bits, appends gates to the output circuit.
struct Expander {
    Circuit out;
    int next_qid;
    int next_cbid;
    ExpansionResult result;

    explicit Expander(const Circuit& c)
        : out{c.name, c.qubits, c.cbits, {}},
          next_qid(c.max_qubit_id() + 1),
          next_cbid(c.max_cbit_id() + 1) {}

    int fresh_comm(int node, const std::string& label) {
        const int id = next_qid++;
        out.qubits.push_back({id, label, node, QubitRole::Communication});
        result.new_comm_qubits.push_back(id);
        return id;
    }

    int fresh_cbit(const std::string& label) {
        const int id = next_cbid++;
        out.cbits.push_back({id, label});
        result.new_cbits.push_back(id);
        return id;
    }

    void emit(Gate g) { out.gates.push_back(std::move(g)); }

    void emit_resource(Gate g) {
        result.resources_emitted.push_back(g);
        out.gates.push_back(std::move(g));
    }

    // Bell-pair protocol for one remote controlled gate.
    void emit_dcu(const Circuit& c, const Controlled& g, size_t site) {
        const std::string tag = ".g" + std::to_string(site);
        const int e0 = fresh_comm(c.node_of(g.control), "a0" + tag);
        const int e1 = fresh_comm(c.node_of(g.target), "a1" + tag);
        const int m0 = fresh_cbit("m0" + tag);
        const int m1 = fresh_cbit("m1" + tag);
        emit_resource(BellPrep{e0, e1});
        emit(Controlled{U1q::x(), g.control, e0});
        emit(Measure{e0, m0});
        emit(Conditioned{{{m0}}, U1q::x(), e1});
        emit(Controlled{g.u, e1, g.target});
        emit(Local1Q{U1q::h(), e1});
        emit(Measure{e1, m1});
        emit(Conditioned{{{m1}}, U1q::z(), g.control});
    }

    // GHZ cat protocol for one remote fan-out. Remote nodes in first-occurrence
    // order of the target list; targets on the same node share one
    // communication qubit. A single remote node degenerates to the Bell form.
    void emit_dfanout(const Circuit& c, const FanOut& g, size_t site, GhzMode mode) {
        const std::string tag = ".g" + std::to_string(site);
        const int control_node = c.node_of(g.control);

        std::vector<int> remote_nodes;
        for (const auto& t : g.targets) {
            const int n = c.node_of(t.qubit);
            if (n != control_node &&
                std::find(remote_nodes.begin(), remote_nodes.end(), n) == remote_nodes.end())
                remote_nodes.push_back(n);
        }
        if (remote_nodes.empty()) throw DqcError("expand_dfanout: no remote targets");

        const int a0 = fresh_comm(control_node, "a0" + tag);
        std::vector<int> comm;   // per remote node, parallel to remote_nodes
        for (size_t i = 0; i < remote_nodes.size(); ++i)
            comm.push_back(
                fresh_comm(remote_nodes[i], "a" + std::to_string(i + 1) + tag));

        if (comm.size() == 1) {
            emit_resource(BellPrep{a0, comm[0]});
        } else {
            GhzPrep gp;
            gp.qubits.push_back(a0);
            gp.qubits.insert(gp.qubits.end(), comm.begin(), comm.end());
            gp.mode = mode;
            emit_resource(gp);
        }

        const int m0 = fresh_cbit("m0" + tag);
        emit(Controlled{U1q::x(), g.control, a0});
        emit(Measure{a0, m0});
        for (int a : comm) emit(Conditioned{{{m0}}, U1q::x(), a});

        for (const auto& t : g.targets) {
            const int n = c.node_of(t.qubit);
            if (n == control_node) {
                emit(Controlled{t.u, g.control, t.qubit});
            } else {
                const size_t i = static_cast<size_t>(
                    std::find(remote_nodes.begin(), remote_nodes.end(), n) -
                    remote_nodes.begin());
                emit(Controlled{t.u, comm[i], t.qubit});
            }
        }

        ParityCondition zc;
        for (size_t i = 0; i < comm.size(); ++i) {
            const int mi = fresh_cbit("m" + std::to_string(i + 1) + tag);
            emit(Local1Q{U1q::h(), comm[i]});
            emit(Measure{comm[i], mi});
            zc.bits.push_back(mi);
        }
        emit(Conditioned{zc, U1q::z(), g.control});
    }
};

std::vector<Controlled> lower_fanout(const FanOut& fo) {
    std::vector<Controlled> out;
    for (const auto& t : fo.targets) out.push_back({t.u, fo.control, t.qubit});
    std::sort(out.begin(), out.end(),
              [](const Controlled& a, const Controlled& b) { return a.target < b.target; });
    return out;
}

}  // namespace

ExpansionResult expand_dcu(const Circuit& c, size_t gate_idx) {
    if (gate_idx >= c.gates.size()) throw DqcError("expand_dcu: gate index out of range");
    const auto* g = std::get_if<Controlled>(&c.gates[gate_idx]);
    if (!g) throw DqcError("expand_dcu: gate is not Controlled");
    if (locality(c, c.gates[gate_idx]).kind != LocalityClass::RemoteControlled)
        throw DqcError("expand_dcu: gate is local, nothing to expand");

    Expander ex(c);
    for (size_t i = 0; i < c.gates.size(); ++i) {
        if (i == gate_idx)
            ex.emit_dcu(c, *g, i);
        else
            ex.emit(c.gates[i]);
    }
    ex.result.circuit = std::move(ex.out);
    return std::move(ex.result);
}

ExpansionResult expand_dfanout(const Circuit& c, size_t gate_idx, GhzMode mode) {
    if (gate_idx >= c.gates.size()) throw DqcError("expand_dfanout: gate index out of range");
    const auto* g = std::get_if<FanOut>(&c.gates[gate_idx]);
    if (!g) throw DqcError("expand_dfanout: gate is not FanOut");
    if (locality(c, c.gates[gate_idx]).kind != LocalityClass::RemoteFanOut)
        throw DqcError("expand_dfanout: fan-out has no remote targets");

    Expander ex(c);
    for (size_t i = 0; i < c.gates.size(); ++i) {
        if (i == gate_idx)
            ex.emit_dfanout(c, *g, i, mode);
        else
            ex.emit(c.gates[i]);
    }
    ex.result.circuit = std::move(ex.out);
    return std::move(ex.result);
}

ExpansionResult expand_all(const Circuit& c, Strategy strategy, GhzMode ghz_mode) {
    {
        const auto viols = validate(c);
        if (!viols.empty())
            throw DqcError("expand_all: input circuit has violation '" + viols.front().rule +
                           "'");
    }
    Expander ex(c);
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        const auto lc = locality(c, g);
        if (lc.kind == LocalityClass::Local) {
            ex.emit(g);
            continue;
        }
        if (const auto* ctl = std::get_if<Controlled>(&g)) {
            ex.emit_dcu(c, *ctl, i);
            continue;
        }
        const auto& fo = std::get<FanOut>(g);
        if (strategy == Strategy::BellOnly) {
            for (const auto& ctl : lower_fanout(fo)) {
                if (c.node_of(ctl.control) == c.node_of(ctl.target))
                    ex.emit(ctl);
                else
                    ex.emit_dcu(c, ctl, i);
            }
        } else {
            ex.emit_dfanout(c, fo, i, ghz_mode);
        }
    }
    ex.result.circuit = std::move(ex.out);
    return std::move(ex.result);
}

GhzTreeResult ghz_prepare_tree(const std::vector<int>& nodes, int root) {
    const int k = static_cast<int>(nodes.size());
    if (k < 2) throw DqcError("ghz_prepare_tree: need at least 2 nodes");
    std::vector<int> order = nodes;
    auto it = std::find(order.begin(), order.end(), root);
    if (it == order.end()) throw DqcError("ghz_prepare_tree: root not in node list");
    std::rotate(order.begin(), it, it + 1);   // root leads, rest keep order

    GhzTreeResult res;
    Circuit& c = res.circuit;
    c.name = "ghz_tree_k" + std::to_string(k);
    for (int i = 0; i < k; ++i) {
        c.qubits.push_back({i, "g" + std::to_string(i), order[static_cast<size_t>(i)],
                            QubitRole::Computation});
        res.ghz_qubits.push_back(i);
    }

    if (k == 2) {
        c.gates.push_back(BellPrep{0, 1});
        res.bell_pairs_used = 1;
        res.merge_layers = 1;
        return res;
    }

    int next_qid = k;
    int next_cbid = 0;
    for (int i = 0; i < k; ++i) c.gates.push_back(Local1Q{U1q::h(), i});

    // groups of qubit indices holding a GHZ each; front() is the group rep
    std::vector<std::vector<int>> groups;
    for (int i = 0; i < k; ++i) groups.push_back({i});

    while (groups.size() > 1) {
        ++res.merge_layers;
        std::vector<std::vector<int>> merged;
        for (size_t g = 0; g + 1 < groups.size(); g += 2) {
            auto& a = groups[g];
            auto& b = groups[g + 1];
            const int rep_a = a.front();
            const int rep_b = b.front();
            const int na = c.qubits[static_cast<size_t>(rep_a)].node;
            const int nb = c.qubits[static_cast<size_t>(rep_b)].node;

            const int e1 = next_qid++;
            const int e2 = next_qid++;
            c.qubits.push_back({e1, "e" + std::to_string(e1), na, QubitRole::Communication});
            c.qubits.push_back({e2, "e" + std::to_string(e2), nb, QubitRole::Communication});
            const int ma = next_cbid++;
            const int mb = next_cbid++;
            c.cbits.push_back({ma, "m" + std::to_string(ma)});
            c.cbits.push_back({mb, "m" + std::to_string(mb)});
            ++res.bell_pairs_used;

            // entangle-swap the Bell pair onto group a, then fuse with b
            c.gates.push_back(BellPrep{e1, e2});
            c.gates.push_back(Controlled{U1q::x(), rep_a, e1});
            c.gates.push_back(Measure{e1, ma});
            c.gates.push_back(Conditioned{{{ma}}, U1q::x(), e2});
            c.gates.push_back(Controlled{U1q::x(), rep_b, e2});
            c.gates.push_back(Measure{e2, mb});
            for (int q : a) c.gates.push_back(Conditioned{{{mb}}, U1q::x(), q});

            std::vector<int> joined = a;
            joined.insert(joined.end(), b.begin(), b.end());
            merged.push_back(std::move(joined));
        }
        if (groups.size() % 2 == 1) merged.push_back(groups.back());
        groups = std::move(merged);
    }
    return res;
}

}  // namespace dqc
