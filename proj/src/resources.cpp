#include "dqc/resources.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

namespace dqc {

double CostModel::ghz_tree(int k) const {
    return ghz_tree_scale * std::ceil(std::log2(static_cast<double>(k)));
}

void CostModel::set(const std::string& key, double value) {
    if (value < 0) throw DqcError("cost weight must be >= 0");
    if (key == "local_gate")
        local_gate = value;
    else if (key == "bell_prep")
        bell_prep = value;
    else if (key == "ghz_oneshot")
        ghz_oneshot = value;
    else if (key == "ghz_tree_scale")
        ghz_tree_scale = value;
    else if (key == "measure_and_classical")
        measure_and_classical = value;
    else
        throw DqcError("unknown cost-model key '" + key + "'");
}

std::string ResourceReport::ghz_sizes_str() const {
    std::string s = "[";
    bool first = true;
    // widest first: n, n-1, ..., 3
    for (auto it = ghz_sizes.rbegin(); it != ghz_sizes.rend(); ++it)
        for (int i = 0; i < it->second; ++i) {
            if (!first) s += ";";
            s += std::to_string(it->first);
            first = false;
        }
    return s + "]";
}

ResourceReport count_resources(const Circuit& c) {
    ResourceReport r;
    for (const auto& g : c.gates) {
        if (std::holds_alternative<BellPrep>(g)) {
            ++r.bell_pairs;
        } else if (const auto* gp = std::get_if<GhzPrep>(&g)) {
            ++r.ghz_sizes[static_cast<int>(gp->qubits.size())];
        } else if (std::holds_alternative<Measure>(g)) {
            ++r.measurements;
        } else if (std::holds_alternative<Conditioned>(g)) {
            ++r.conditioned_ops;
        }
        if (locality(c, g).kind != LocalityClass::Local) r.expanded = false;
    }
    r.bell_pairs_equiv = r.bell_pairs;
    for (const auto& [k, cnt] : r.ghz_sizes) r.bell_pairs_equiv += (k - 1) * cnt;
    return r;
}

namespace {

double gate_weight(const Gate& g, const CostModel& m) {
    if (std::holds_alternative<BellPrep>(g)) return m.bell_prep;
    if (const auto* gp = std::get_if<GhzPrep>(&g))
        return gp->mode == GhzMode::OneShot ? m.ghz_oneshot
                                            : m.ghz_tree(static_cast<int>(gp->qubits.size()));
    if (std::holds_alternative<Measure>(g)) return m.measure_and_classical;
    if (std::holds_alternative<Barrier>(g)) return 0.0;
    return m.local_gate;   // local/controlled/fanout/conditioned
}

}  // namespace

double depth(const Circuit& c, const CostModel& m) {
    {
        const auto viols = validate(c);
        if (!viols.empty())
            throw DqcError("depth: input circuit has violation '" + viols.front().rule + "'");
    }
    std::unordered_map<int, int> qubit_layer;   // last occupied layer per qubit
    std::unordered_map<int, int> cbit_layer;    // layer of each measurement
    std::map<int, double> layer_weight;         // layer -> max weight

    for (const auto& g : c.gates) {
        std::vector<int> qs = gate_qubits(g);
        if (std::holds_alternative<Barrier>(g))
            for (const auto& q : c.qubits) qs.push_back(q.id);

        int layer = 1;
        for (int q : qs) {
            auto it = qubit_layer.find(q);
            if (it != qubit_layer.end()) layer = std::max(layer, it->second + 1);
        }
        if (const auto* cg = std::get_if<Conditioned>(&g)) {
            for (int b : cg->cond.bits) {
                auto it = cbit_layer.find(b);
                if (it != cbit_layer.end()) layer = std::max(layer, it->second + 1);
            }
        }
        for (int q : qs) qubit_layer[q] = layer;
        if (const auto* ms = std::get_if<Measure>(&g)) cbit_layer[ms->cbit] = layer;

        auto& w = layer_weight[layer];
        w = std::max(w, gate_weight(g, m));
    }

    double total = 0;
    for (const auto& [layer, w] : layer_weight) total += w;
    return total;
}

std::vector<CompareRow> compare_strategies(const std::string& family,
                                           const std::function<Circuit(int)>& builder,
                                           const std::vector<int>& n_range,
                                           const CostModel& m) {
    std::vector<CompareRow> rows;
    struct Combo {
        Strategy strategy;
        GhzMode mode;
        const char* mode_str;
    };
    const Combo combos[] = {
        {Strategy::BellOnly, GhzMode::OneShot, "-"},
        {Strategy::FanOut, GhzMode::Tree, "tree"},
        {Strategy::FanOut, GhzMode::OneShot, "one_shot"},
    };
    for (int n : n_range) {
        const Circuit base = builder(n);
        for (const auto& combo : combos) {
            const ExpansionResult ex = expand_all(base, combo.strategy, combo.mode);
            const ResourceReport r = count_resources(ex.circuit);
            CompareRow row;
            row.family = family;
            row.n = n;
            row.strategy = strategy_name(combo.strategy);
            row.ghz_mode = combo.mode_str;
            row.bell_pairs = r.bell_pairs;
            row.ghz_sizes = r.ghz_sizes_str();
            row.depth = depth(ex.circuit, m);
            row.measurements = r.measurements;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

namespace {

std::string fmt_depth(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", d);
    return buf;
}

}  // namespace

std::string rows_to_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "family,n,strategy,ghz_mode,bell_pairs,ghz_sizes,depth,measurements\n";
    for (const auto& r : rows)
        out << r.family << ',' << r.n << ',' << r.strategy << ',' << r.ghz_mode << ','
            << r.bell_pairs << ',' << r.ghz_sizes << ',' << fmt_depth(r.depth) << ','
            << r.measurements << '\n';
    return out.str();
}

std::string rows_to_table(const std::vector<CompareRow>& rows) {
    const char* headers[] = {"family", "n",          "strategy", "ghz_mode",
                             "bell",   "ghz_sizes",  "depth",    "meas"};
    std::vector<std::array<std::string, 8>> cells;
    for (const auto& r : rows)
        cells.push_back({r.family, std::to_string(r.n), r.strategy, r.ghz_mode,
                         std::to_string(r.bell_pairs), r.ghz_sizes, fmt_depth(r.depth),
                         std::to_string(r.measurements)});
    std::array<size_t, 8> width{};
    for (size_t i = 0; i < 8; ++i) width[i] = std::string(headers[i]).size();
    for (const auto& row : cells)
        for (size_t i = 0; i < 8; ++i) width[i] = std::max(width[i], row[i].size());

    std::ostringstream out;
    auto emit_row = [&](const std::array<std::string, 8>& row) {
        for (size_t i = 0; i < 8; ++i) {
            out << row[i];
            if (i + 1 < 8) out << std::string(width[i] - row[i].size() + 2, ' ');
        }
        out << '\n';
    };
    std::array<std::string, 8> hrow;
    for (size_t i = 0; i < 8; ++i) hrow[i] = headers[i];
    emit_row(hrow);
    for (const auto& row : cells) emit_row(row);
    return out.str();
}

}  // namespace dqc
