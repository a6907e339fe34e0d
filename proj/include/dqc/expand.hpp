#pragma once

#include "dqc/circuit.hpp"

namespace dqc {

enum class Strategy { BellOnly, FanOut };

const char* strategy_name(Strategy s);
const char* ghz_mode_name(GhzMode m);

struct ExpansionResult {
    Circuit circuit;
    std::vector<int> new_comm_qubits;
    std::vector<int> new_cbits;
    std::vector<Gate> resources_emitted;   // BellPrep/GhzPrep markers inserted
};

/// Rewrites the remote Controlled gate at gate_idx into the Bell-pair
/// protocol: cat-entangle the control onto a communication qubit on the
/// target's node, apply the controlled gate locally, then disentangle.
/// Emits exactly 1 Bell pair, 2 measurements, 2 conditioned corrections.
ExpansionResult expand_dcu(const Circuit& c, size_t gate_idx);

/// Rewrites the remote FanOut gate at gate_idx into the GHZ cat protocol:
/// one communication qubit per remote node shares the control's value, every
/// remote target is driven locally, then all copies are coherently erased.
/// Targets co-located with the control become plain local Controlled gates.
ExpansionResult expand_dfanout(const Circuit& c, size_t gate_idx,
                               GhzMode mode = GhzMode::OneShot);

/// Lowers every remote gate in the circuit. BellOnly first flattens FanOut
/// gates into Controlled sequences (targets ascending) and Bell-expands each
/// remote one; FanOut uses the GHZ protocol for fan-outs. The output has no
/// remote gates and validates clean.
ExpansionResult expand_all(const Circuit& c, Strategy strategy,
                           GhzMode ghz_mode = GhzMode::OneShot);

struct GhzTreeResult {
    Circuit circuit;
    std::vector<int> ghz_qubits;   // the k qubits carrying the final GHZ
    int bell_pairs_used = 0;
    int merge_layers = 0;
};

/// Builds a k-qubit GHZ state across the given nodes out of Bell pairs,
/// fusing pairwise in a balanced tree: ceil(log2 k) merge layers, k-1 Bell
/// pairs. Every measurement branch ends in the GHZ state up to phase.
GhzTreeResult ghz_prepare_tree(const std::vector<int>& nodes, int root);

}  // namespace dqc
