#pragma once

#include <functional>
#include <map>
#include <string>

#include "dqc/circuit.hpp"
#include "dqc/expand.hpp"

namespace dqc {

/// Per-operation depth weights. ghz_oneshot is constant in width; the tree
/// regime charges ceil(log2 k) per k-qubit GHZ (scaled).
struct CostModel {
    double local_gate = 1.0;
    double bell_prep = 1.0;
    double ghz_oneshot = 1.0;
    double ghz_tree_scale = 1.0;
    double measure_and_classical = 1.0;

    double ghz_tree(int k) const;
    /// Applies a "key=value" override; throws on unknown keys.
    void set(const std::string& key, double value);
};

struct ResourceReport {
    int bell_pairs = 0;
    std::map<int, int> ghz_sizes;   // width -> count
    double depth = 0.0;
    int measurements = 0;
    int conditioned_ops = 0;
    std::string strategy;
    std::string ghz_mode;
    /// Bell pairs if every GHZ were tree-built (k-1 per k-qubit GHZ), plus
    /// the direct pairs; see README for the accounting convention.
    int bell_pairs_equiv = 0;
    bool expanded = true;   // false when remote gates remain (counts are zero)

    std::string ghz_sizes_str() const;   // e.g. "[4;3]"
};

/// Tallies entanglement markers, measurements and corrections.
ResourceReport count_resources(const Circuit& c);

/// Greedy ASAP layering; a gate enters the earliest layer where all its
/// qubits and classical dependencies are free. Depth = sum over layers of
/// the heaviest member.
double depth(const Circuit& c, const CostModel& m);

struct CompareRow {
    std::string family;
    int n = 0;
    std::string strategy;
    std::string ghz_mode;
    int bell_pairs = 0;
    std::string ghz_sizes;
    double depth = 0.0;
    int measurements = 0;
};

/// Expands the family circuit under BellOnly, FanOut/Tree and FanOut/OneShot
/// for each n and reports resources + depth.
std::vector<CompareRow> compare_strategies(const std::string& family,
                                           const std::function<Circuit(int)>& builder,
                                           const std::vector<int>& n_range,
                                           const CostModel& m);

std::string rows_to_csv(const std::vector<CompareRow>& rows);
std::string rows_to_table(const std::vector<CompareRow>& rows);

}  // namespace dqc
