#pragma once

#include "dqc/circuit.hpp"
#include "dqc/expand.hpp"
#include "dqc/resources.hpp"

namespace dqc {

struct PauliString {
    std::string ops;    // over {I,X,Y,Z}; leftmost = highest qubit index
    double theta = 0.0;
};

struct WeightedEdge {
    int p = 0;
    int q = 0;
    double theta = 0.0;
};

/// QFT in controlled-phase form, no terminal swaps. Block j applies H to q_j
/// and then one fan-out of P(pi/2^(t-j)) gates from q_j onto q_{j+1..n-1};
/// the final width-1 block degenerates to a plain Controlled gate.
/// Default partition: qubit i on node i; pass `nodes` to override.
Circuit build_qft_cp(int n, const std::vector<int>* nodes = nullptr);

/// QFT in controlled-rotation form (controls on later qubits). Same unitary
/// as build_qft_cp gate for gate; kept as a cross-check only.
Circuit build_qft_cr(int n);

/// build_qft_cp then expand_all, with the resource report.
std::pair<Circuit, ResourceReport> compile_dqft(int n, Strategy strategy,
                                                GhzMode ghz_mode = GhzMode::OneShot,
                                                const std::vector<int>* nodes = nullptr);

/// Circuit for e^{-i theta Z_p Z_q}: CP(-4 theta) then Rz(2 theta) on both.
Circuit build_zz_term(const WeightedEdge& e);

/// QAOA cost layer: per-edge CP(-4 theta) gates grouped into fan-outs over
/// runs sharing a control vertex, with all Rz rotations deferred to a final
/// layer and merged per qubit.
Circuit compile_qaoa_cost(const std::vector<WeightedEdge>& edges, int n,
                          const std::vector<int>* nodes = nullptr);

enum class ParityForm { CnotChain, FanOutForm };

/// |x>|a> -> |x>|a xor parity(x)>. CnotChain is the sequential form,
/// FanOutForm the Hadamard-conjugated fan-out equivalent.
Circuit build_parity_gate(const std::vector<int>& qubits, int ancilla, ParityForm form,
                          int n_qubits_total, const std::vector<int>* nodes = nullptr,
                          int ancilla_node = -1);

/// Convenience: parity gate over qubits 0..n-1 with ancilla n.
Circuit build_parity_gate_simple(int n, ParityForm form);

/// e^{-i theta P} via ancilla: basis conjugation, fan-out parity compute,
/// Rz(2 theta) on the ancilla, uncompute, undo conjugation. The ancilla
/// returns to |0> exactly.
Circuit compile_pauli_exp(const PauliString& p, const std::vector<int>* nodes = nullptr,
                          int ancilla_node = -1);

/// Greedy left-to-right pass merging adjacent Controlled gates that share a
/// control into FanOut gates, hopping only over gates on disjoint qubits.
/// Preserves the unitary exactly and never increases gate count.
Circuit group_fanouts(const Circuit& c);

}  // namespace dqc
