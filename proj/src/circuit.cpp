#include "dqc/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dqc {

namespace {
constexpr cplx kI{0.0, 1.0};
}

std::array<cplx, 4> U1q::matrix() const {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (kind) {
        case UKind::H:
            return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case UKind::X:
            return {0, 1, 1, 0};
        case UKind::Y:
            return {0, -kI, kI, 0};
        case UKind::Z:
            return {1, 0, 0, -1};
        case UKind::S:
            return {1, 0, 0, kI};
        case UKind::Sdg:
            return {1, 0, 0, -kI};
        case UKind::T:
            return {1, 0, 0, std::exp(kI * (std::numbers::pi / 4.0))};
        case UKind::Rz:
            return {std::exp(-kI * (theta / 2.0)), 0, 0, std::exp(kI * (theta / 2.0))};
        case UKind::Rx: {
            const cplx c = std::cos(theta / 2.0);
            const cplx s = -kI * std::sin(theta / 2.0);
            return {c, s, s, c};
        }
        case UKind::P:
            return {1, 0, 0, std::exp(kI * theta)};
        case UKind::Custom:
            return mat;
    }
    throw DqcError("unreachable unitary kind");
}

const char* ukind_name(UKind k) {
    switch (k) {
        case UKind::H: return "h";
        case UKind::X: return "x";
        case UKind::Y: return "y";
        case UKind::Z: return "z";
        case UKind::S: return "s";
        case UKind::Sdg: return "sdg";
        case UKind::T: return "t";
        case UKind::Rz: return "rz";
        case UKind::Rx: return "rx";
        case UKind::P: return "p";
        case UKind::Custom: return "custom";
    }
    return "?";
}

const char* role_name(QubitRole r) {
    switch (r) {
        case QubitRole::Computation: return "computation";
        case QubitRole::Communication: return "communication";
        case QubitRole::Ancilla: return "ancilla";
    }
    return "?";
}

std::vector<int> gate_qubits(const Gate& g) {
    return std::visit(
        [](const auto& x) -> std::vector<int> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Local1Q>) {
                return {x.qubit};
            } else if constexpr (std::is_same_v<T, Controlled>) {
                return {x.control, x.target};
            } else if constexpr (std::is_same_v<T, FanOut>) {
                std::vector<int> out{x.control};
                for (const auto& t : x.targets) out.push_back(t.qubit);
                return out;
            } else if constexpr (std::is_same_v<T, BellPrep>) {
                return {x.a, x.b};
            } else if constexpr (std::is_same_v<T, GhzPrep>) {
                return x.qubits;
            } else if constexpr (std::is_same_v<T, Measure>) {
                return {x.qubit};
            } else if constexpr (std::is_same_v<T, Conditioned>) {
                return {x.qubit};
            } else {
                return {};  // Barrier
            }
        },
        g);
}

const Qubit* Circuit::find_qubit(int id) const {
    for (const auto& q : qubits)
        if (q.id == id) return &q;
    return nullptr;
}

bool Circuit::has_cbit(int id) const {
    return std::any_of(cbits.begin(), cbits.end(),
                       [&](const ClassicalBit& b) { return b.id == id; });
}

int Circuit::node_of(int qubit_id) const {
    const Qubit* q = find_qubit(qubit_id);
    if (!q) throw DqcError("node_of: unknown qubit id " + std::to_string(qubit_id));
    return q->node;
}

int Circuit::num_nodes() const {
    int mx = -1;
    for (const auto& q : qubits) mx = std::max(mx, q.node);
    return mx + 1;
}

int Circuit::max_qubit_id() const {
    int mx = -1;
    for (const auto& q : qubits) mx = std::max(mx, q.id);
    return mx;
}

int Circuit::max_cbit_id() const {
    int mx = -1;
    for (const auto& b : cbits) mx = std::max(mx, b.id);
    return mx;
}

std::vector<int> Circuit::sorted_qubit_ids() const {
    std::vector<int> ids;
    for (const auto& q : qubits) ids.push_back(q.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<int> Circuit::sorted_noncomm_qubit_ids() const {
    std::vector<int> ids;
    for (const auto& q : qubits)
        if (q.role != QubitRole::Communication) ids.push_back(q.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

bool is_unitary_2x2(const std::array<cplx, 4>& m, double tol) {
    // max-norm of U^dag U - I
    cplx g[4] = {
        std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2],
        std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3],
        std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2],
        std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3],
    };
    g[0] -= 1.0;
    g[3] -= 1.0;
    double mx = 0;
    for (const auto& v : g) mx = std::max(mx, std::abs(v));
    return mx <= tol;
}

bool finite_u(const U1q& u) {
    if (u.kind == UKind::Custom) {
        for (const auto& v : u.mat)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
    return std::isfinite(u.theta);
}

}  // namespace

std::vector<Violation> validate(const Circuit& c) {
    std::vector<Violation> out;
    auto add = [&](int gi, std::string rule, std::string detail) {
        out.push_back({gi, std::move(rule), std::move(detail)});
    };

    std::unordered_set<int> qids, cids;
    std::set<int> nodes;
    for (const auto& q : c.qubits) {
        if (q.id < 0) add(-1, "NegativeQubitId", "qubit id " + std::to_string(q.id));
        if (!qids.insert(q.id).second)
            add(-1, "DuplicateQubitId", "qubit id " + std::to_string(q.id));
        if (q.node < 0) add(-1, "NegativeNodeId", "node " + std::to_string(q.node));
        nodes.insert(q.node);
    }
    for (const auto& b : c.cbits) {
        if (b.id < 0) add(-1, "NegativeCbitId", "cbit id " + std::to_string(b.id));
        if (!cids.insert(b.id).second)
            add(-1, "DuplicateCbitId", "cbit id " + std::to_string(b.id));
    }
    // node ids dense 0..num_nodes-1
    {
        int expect = 0;
        for (int n : nodes)
            if (n != expect++) {
                add(-1, "NonDenseNodeIds", "node ids must be 0..k-1");
                break;
            }
    }

    std::unordered_set<int> written_cbits;   // SSA
    std::unordered_set<int> dead_comm;       // measured communication qubits

    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        const int idx = static_cast<int>(gi);

        auto qs = gate_qubits(g);
        bool refs_ok = true;
        std::unordered_set<int> seen;
        for (int q : qs) {
            if (!qids.count(q)) {
                add(idx, "UnknownQubit", "qubit id " + std::to_string(q));
                refs_ok = false;
            }
            if (!seen.insert(q).second)
                add(idx, "DuplicateQubitInGate", "qubit id " + std::to_string(q));
            if (dead_comm.count(q))
                add(idx, "ReuseAfterMeasure",
                    "communication qubit " + std::to_string(q) + " already measured");
        }
        if (!refs_ok) continue;

        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, Local1Q>) {
                    if (!finite_u(x.u)) add(idx, "NonFiniteAngle", "local1q");
                    if (x.u.kind == UKind::Custom && !is_unitary_2x2(x.u.mat, 1e-10))
                        add(idx, "NonUnitaryCustom", "local1q");
                } else if constexpr (std::is_same_v<T, Controlled>) {
                    if (!finite_u(x.u)) add(idx, "NonFiniteAngle", "controlled");
                    if (x.u.kind == UKind::Custom && !is_unitary_2x2(x.u.mat, 1e-10))
                        add(idx, "NonUnitaryCustom", "controlled");
                } else if constexpr (std::is_same_v<T, FanOut>) {
                    if (x.targets.empty()) add(idx, "EmptyFanOut", "no targets");
                    for (const auto& t : x.targets) {
                        if (!finite_u(t.u)) add(idx, "NonFiniteAngle", "fanout target");
                        if (t.u.kind == UKind::Custom && !is_unitary_2x2(t.u.mat, 1e-10))
                            add(idx, "NonUnitaryCustom", "fanout target");
                    }
                } else if constexpr (std::is_same_v<T, GhzPrep>) {
                    if (x.qubits.size() < 2) add(idx, "GhzTooSmall", "needs >= 2 qubits");
                } else if constexpr (std::is_same_v<T, Measure>) {
                    if (!cids.count(x.cbit))
                        add(idx, "UnknownCbit", "cbit id " + std::to_string(x.cbit));
                    else if (!written_cbits.insert(x.cbit).second)
                        add(idx, "DoubleWrite", "cbit id " + std::to_string(x.cbit));
                    const Qubit* q = c.find_qubit(x.qubit);
                    if (q && q->role == QubitRole::Communication) dead_comm.insert(x.qubit);
                } else if constexpr (std::is_same_v<T, Conditioned>) {
                    if (x.cond.bits.empty()) add(idx, "EmptyCondition", "no bits");
                    for (int b : x.cond.bits) {
                        if (!cids.count(b))
                            add(idx, "UnknownCbit", "cbit id " + std::to_string(b));
                        else if (!written_cbits.count(b))
                            add(idx, "ReadBeforeWrite", "cbit id " + std::to_string(b));
                    }
                    if (!finite_u(x.u)) add(idx, "NonFiniteAngle", "conditioned");
                    if (x.u.kind == UKind::Custom && !is_unitary_2x2(x.u.mat, 1e-10))
                        add(idx, "NonUnitaryCustom", "conditioned");
                }
            },
            g);
    }
    return out;
}

LocalityClass locality(const Circuit& c, const Gate& g) {
    LocalityClass lc;
    if (const auto* ctl = std::get_if<Controlled>(&g)) {
        const int nc = c.node_of(ctl->control);
        const int nt = c.node_of(ctl->target);
        lc.kind = (nc == nt) ? LocalityClass::Local : LocalityClass::RemoteControlled;
        if (nc != nt) lc.remote_nodes.insert(nt);
        return lc;
    }
    if (const auto* fo = std::get_if<FanOut>(&g)) {
        const int nc = c.node_of(fo->control);
        for (const auto& t : fo->targets) {
            const int nt = c.node_of(t.qubit);
            if (nt == nc)
                lc.local_targets.push_back(t.qubit);
            else
                lc.remote_nodes.insert(nt);
        }
        lc.kind = lc.remote_nodes.empty() ? LocalityClass::Local : LocalityClass::RemoteFanOut;
        return lc;
    }
    // Everything else (local ops, markers, measurements) is Local.
    for (int q : gate_qubits(g)) c.node_of(q);  // existence check
    lc.kind = LocalityClass::Local;
    return lc;
}

}  // namespace dqc
