// dqc: build, expand, verify and cost distributed quantum circuits.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dqc/compile.hpp"
#include "dqc/expand.hpp"
#include "dqc/json_io.hpp"
#include "dqc/resources.hpp"
#include "dqc/verify.hpp"

using namespace dqc;

namespace {

std::vector<WeightedEdge> parse_edges(const std::string& text) {
    std::vector<WeightedEdge> edges;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        WeightedEdge e;
        char dash = 0, colon = 0;
        std::istringstream is(item);
        if (!(is >> e.p >> dash >> e.q >> colon >> e.theta) || dash != '-' || colon != ':')
            throw CLI::ValidationError("--edges", "expected p-q:theta triples, got '" + item + "'");
        edges.push_back(e);
    }
    if (edges.empty()) throw CLI::ValidationError("--edges", "empty edge list");
    return edges;
}

// accepts "4" or "4..8"
std::vector<int> parse_range(const std::string& text) {
    int lo = 0, hi = 0;
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text);
        } else {
            lo = std::stoi(text.substr(0, dots));
            hi = std::stoi(text.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("--n", "expected N or LO..HI, got '" + text + "'");
    }
    if (lo < 1 || hi < lo) throw CLI::ValidationError("--n", "bad range '" + text + "'");
    std::vector<int> r;
    for (int n = lo; n <= hi; ++n) r.push_back(n);
    return r;
}

CostModel parse_cost(const std::vector<std::string>& overrides) {
    CostModel m;
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--cost", "expected key=value, got '" + kv + "'");
        try {
            m.set(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
        } catch (const DqcError& e) {
            throw CLI::ValidationError("--cost", e.what());
        } catch (const std::exception&) {
            throw CLI::ValidationError("--cost", "bad value in '" + kv + "'");
        }
    }
    return m;
}

Strategy parse_strategy(const std::string& s) {
    if (s == "bell_only") return Strategy::BellOnly;
    if (s == "fanout") return Strategy::FanOut;
    throw CLI::ValidationError("--strategy", "expected bell_only or fanout");
}

GhzMode parse_ghz_mode(const std::string& s) {
    if (s == "one_shot") return GhzMode::OneShot;
    if (s == "tree") return GhzMode::Tree;
    throw CLI::ValidationError("--ghz-mode", "expected one_shot or tree");
}

// summary list with commas: "[4,3]"
std::string ghz_list(const std::map<int, int>& sizes) {
    std::string s = "[";
    bool first = true;
    for (auto it = sizes.rbegin(); it != sizes.rend(); ++it)
        for (int i = 0; i < it->second; ++i) {
            if (!first) s += ",";
            s += std::to_string(it->first);
            first = false;
        }
    return s + "]";
}

void emit_circuit(const Circuit& c, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << serialize(c);
        std::fprintf(stderr, "%s: %zu qubits, %zu gates\n", c.name.c_str(),
                     c.qubits.size(), c.gates.size());
    } else {
        save_circuit(c, out_path);
        std::printf("wrote %s: %zu qubits, %zu gates\n", out_path.c_str(),
                    c.qubits.size(), c.gates.size());
    }
}

void print_counts(const ResourceReport& r, double d) {
    std::printf("Bell: %d\n", r.bell_pairs);
    std::printf("GHZ: %s\n", ghz_list(r.ghz_sizes).c_str());
    std::printf("bell_equivalent: %d\n", r.bell_pairs_equiv);
    std::printf("measurements: %d\n", r.measurements);
    std::printf("corrections: %d\n", r.conditioned_ops);
    std::printf("depth: %g\n", d);
    std::printf("expanded: %s\n", r.expanded ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed quantum circuit toolkit"};
    app.require_subcommand(1);

    // ---- build ----
    auto* build = app.add_subcommand("build", "construct a circuit family");
    build->require_subcommand(1);
    std::string build_out;

    auto* bqft = build->add_subcommand("qft", "controlled-phase QFT, no terminal swaps");
    int qft_n = 4;
    bqft->add_option("--n", qft_n, "qubit count")->required()->check(CLI::PositiveNumber);
    bqft->add_option("--out", build_out, "output circuit file (default: stdout)");

    auto* bqaoa = build->add_subcommand("qaoa", "cost layer for a weighted graph");
    std::string edges_text;
    bqaoa->add_option("--edges", edges_text, "comma list of p-q:theta triples")->required();
    bqaoa->add_option("--out", build_out, "output circuit file (default: stdout)");

    auto* bpexp = build->add_subcommand("pauli-exp", "exponential of a Pauli string");
    std::string pauli;
    double pauli_theta = 0.0;
    int ancilla_node = -1;
    bpexp->add_option("--pauli", pauli, "string over I,X,Y,Z (leftmost = top qubit)")
        ->required();
    bpexp->add_option("--theta", pauli_theta, "rotation angle")->required();
    bpexp->add_option("--ancilla-node", ancilla_node, "node hosting the ancilla");
    bpexp->add_option("--out", build_out, "output circuit file (default: stdout)");

    auto* bpar = build->add_subcommand("parity", "xor of n qubits into an ancilla");
    int par_n = 2;
    std::string par_form = "chain";
    bpar->add_option("--n", par_n, "data qubit count")->required()->check(CLI::PositiveNumber);
    bpar->add_option("--form", par_form, "chain or fanout")
        ->check(CLI::IsMember({"chain", "fanout"}));
    bpar->add_option("--out", build_out, "output circuit file (default: stdout)");

    // ---- expand ----
    auto* expand = app.add_subcommand("expand", "rewrite remote gates into protocols");
    std::string ex_in, ex_out, ex_strategy = "fanout", ex_mode = "one_shot";
    expand->add_option("--in", ex_in, "input circuit file")->required();
    expand->add_option("--out", ex_out, "output circuit file");
    expand->add_option("--strategy", ex_strategy, "bell_only or fanout")
        ->check(CLI::IsMember({"bell_only", "fanout"}));
    expand->add_option("--ghz-mode", ex_mode, "one_shot or tree")
        ->check(CLI::IsMember({"one_shot", "tree"}));

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check an expansion against its original");
    std::string v_orig, v_exp, v_out;
    VerifyOptions vopt;
    verify->add_option("--original", v_orig, "measurement-free reference circuit")->required();
    verify->add_option("--expanded", v_exp, "candidate circuit")->required();
    verify->add_option("--tol", vopt.tol, "worst-branch infidelity bound (default 1e-9)")
        ->check(CLI::Range(1e-300, 1.0));
    verify->add_option("--seed", vopt.seed, "random-state seed (default 1)");
    verify->add_option("--num-states", vopt.num_states, "random inputs to try (default 10)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--branch-cap", vopt.sim.branch_cap, "measurement branch limit");
    verify->add_option("--out", v_out, "also write the report to a file");

    // ---- count ----
    auto* count = app.add_subcommand("count", "resource and depth report for a circuit");
    std::string c_in;
    std::vector<std::string> c_cost;
    count->add_option("--in", c_in, "input circuit file")->required();
    count->add_option("--cost", c_cost, "cost-model override key=value (repeatable)");

    // ---- compare ----
    auto* compare = app.add_subcommand("compare", "strategy comparison over a size range");
    std::string cmp_family, cmp_range = "4..8", cmp_format = "text";
    std::vector<std::string> cmp_cost;
    compare->add_option("family", cmp_family, "circuit family (qft)")->required();
    compare->add_option("--n", cmp_range, "size or LO..HI range (default 4..8)");
    compare->add_option("--cost", cmp_cost, "cost-model override key=value (repeatable)");
    compare->add_option("--format", cmp_format, "text or csv")
        ->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bqft->parsed()) {
            emit_circuit(build_qft_cp(qft_n), build_out);
        } else if (bqaoa->parsed()) {
            const auto edges = parse_edges(edges_text);
            int n = 0;
            for (const auto& e : edges) n = std::max({n, e.p + 1, e.q + 1});
            emit_circuit(compile_qaoa_cost(edges, n), build_out);
        } else if (bpexp->parsed()) {
            emit_circuit(compile_pauli_exp({pauli, pauli_theta}, nullptr, ancilla_node),
                         build_out);
        } else if (bpar->parsed()) {
            const ParityForm form =
                par_form == "chain" ? ParityForm::CnotChain : ParityForm::FanOutForm;
            emit_circuit(build_parity_gate_simple(par_n, form), build_out);
        } else if (expand->parsed()) {
            const Circuit in = load_circuit(ex_in);
            if (count_resources(in).expanded) std::printf("no remote gates\n");
            const ExpansionResult ex =
                expand_all(in, parse_strategy(ex_strategy), parse_ghz_mode(ex_mode));
            const ResourceReport r = count_resources(ex.circuit);
            if (!r.expanded) throw DqcError("expansion left remote gates behind");
            if (r.ghz_sizes.empty())
                std::printf("Bell: %d\n", r.bell_pairs);
            else
                std::printf("GHZ: %s, Bell: %d\n", ghz_list(r.ghz_sizes).c_str(),
                            r.bell_pairs);
            if (!ex_out.empty()) {
                save_circuit(ex.circuit, ex_out);
                std::printf("wrote %s\n", ex_out.c_str());
            }
        } else if (verify->parsed()) {
            const Circuit orig = load_circuit(v_orig);
            const Circuit cand = load_circuit(v_exp);
            const VerifyResult res = verify_equivalence(orig, cand, vopt);
            std::fputs(res.report.c_str(), stdout);
            if (!v_out.empty()) {
                std::ofstream f(v_out, std::ios::binary);
                if (!f) throw DqcError("cannot write '" + v_out + "'");
                f << res.report;
            }
            return res.pass ? 0 : 1;
        } else if (count->parsed()) {
            const Circuit in = load_circuit(c_in);
            const CostModel m = parse_cost(c_cost);
            print_counts(count_resources(in), depth(in, m));
        } else if (compare->parsed()) {
            if (cmp_family != "qft")
                throw CLI::ValidationError("family", "only 'qft' is available");
            const CostModel m = parse_cost(cmp_cost);
            const auto rows = compare_strategies(
                cmp_family, [](int n) { return build_qft_cp(n); }, parse_range(cmp_range),
                m);
            std::fputs((cmp_format == "csv" ? rows_to_csv(rows) : rows_to_table(rows)).c_str(),
                       stdout);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DqcError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
