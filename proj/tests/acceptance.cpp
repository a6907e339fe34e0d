// Acceptance gate: one line per criterion, nonzero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "dqc/compile.hpp"
#include "dqc/expand.hpp"
#include "dqc/resources.hpp"
#include "dqc/verify.hpp"

using namespace dqc;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
    std::printf("[%2d] %-52s %s%s%s\n", idx, what, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CMatrix bit_reversed_dft(int n) {
    const int dim = 1 << n;
    auto rev = [&](int x) {
        int y = 0;
        for (int b = 0; b < n; ++b)
            if ((x >> b) & 1) y |= 1 << (n - 1 - b);
        return y;
    };
    CMatrix m(dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int y = 0; y < dim; ++y)
        for (int x = 0; x < dim; ++x)
            m(y, x) = scale * std::exp(cplx{0, 2.0 * std::numbers::pi * y * rev(x) / dim});
    return m;
}

// 1: dCNOT protocol, 20 random inputs, all 4 branches, infidelity < 1e-10, < 1 s
void criterion_1() {
    const auto t0 = Clock::now();
    Circuit orig;
    orig.qubits = {{0, "q_0", 0}, {1, "q_1", 1}};
    orig.gates = {Controlled{U1q::x(), 0, 1}};
    const ExpansionResult ex = expand_dcu(orig, 0);

    StateSampler sampler(1001);
    double worst = 0;
    bool branches_ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector in = sampler.haar_state(2);
        const StateVector want = run_branches(orig, in).front().state;
        const auto branches = run_branches(ex.circuit, in);
        if (branches.size() != 4) branches_ok = false;
        for (const auto& b : branches) worst = std::max(worst, infidelity(b.state, want));
    }
    const double dt = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst infidelity %.2e, %.2fs", worst, dt);
    report(1, "dCNOT protocol, 4 branches, tol 1e-10, <1s",
           branches_ok && worst < 1e-10 && dt < 1.0, buf);
}

// 2: fan-out for k in 1..4, 2^{k+1} uniform branches, infidelity < 1e-9, < 10 s
void criterion_2() {
    const auto t0 = Clock::now();
    StateSampler sampler(1002);
    double worst_inf = 0, worst_prob = 0;
    bool counts_ok = true;
    for (int k = 1; k <= 4; ++k) {
        Circuit orig;
        orig.qubits = {{0, "q_0", 0}};
        FanOut fo;
        fo.control = 0;
        for (int t = 1; t <= k; ++t) {
            orig.qubits.push_back({t, "q_" + std::to_string(t), t});
            fo.targets.push_back({t, U1q::custom(sampler.haar_unitary_2x2())});
        }
        orig.gates = {std::move(fo)};
        const ExpansionResult ex = expand_dfanout(orig, 0);

        const double expect_p = 1.0 / (1 << (k + 1));
        for (int trial = 0; trial < 20; ++trial) {
            const StateVector in = sampler.haar_state(k + 1);
            const StateVector want = run_branches(orig, in).front().state;
            const auto branches = run_branches(ex.circuit, in);
            if (branches.size() != size_t{1} << (k + 1)) counts_ok = false;
            for (const auto& b : branches) {
                worst_inf = std::max(worst_inf, infidelity(b.state, want));
                worst_prob = std::max(worst_prob, std::abs(b.probability - expect_p));
            }
        }
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "worst infidelity %.2e, prob dev %.2e, %.2fs",
                  worst_inf, worst_prob, dt);
    report(2, "fan-out k=1..4, uniform branches, tol 1e-9, <10s",
           counts_ok && worst_inf < 1e-9 && worst_prob < 1e-9 && dt < 10.0, buf);
}

// 3: dqft Bell pairs = n(n-1)/2 bell-only; GHZ {n..3} + 1 Bell with fan-outs
void criterion_3() {
    bool ok = true;
    for (int n = 2; n <= 10; ++n) {
        auto [bc, br] = compile_dqft(n, Strategy::BellOnly);
        if (br.bell_pairs != n * (n - 1) / 2 || !br.ghz_sizes.empty()) ok = false;
    }
    for (int n = 3; n <= 10; ++n) {
        auto [fc, fr] = compile_dqft(n, Strategy::FanOut);
        std::map<int, int> want;
        for (int k = 3; k <= n; ++k) want[k] = 1;
        if (fr.bell_pairs != 1 || fr.ghz_sizes != want) ok = false;
    }
    report(3, "dqft resources: n(n-1)/2 vs GHZ {n..3} + 1 Bell", ok);
}

// 4: dqft expansions map basis states to DFT oracle columns, < 60 s at n=4
void criterion_4() {
    const auto t0 = Clock::now();
    double worst = 0;
    for (int n : {2, 3, 4}) {
        const CMatrix oracle = bit_reversed_dft(n);
        for (Strategy s : {Strategy::BellOnly, Strategy::FanOut}) {
            auto [circ, rep] = compile_dqft(n, s);
            for (int x = 0; x < (1 << n); ++x) {
                StateVector want;
                want.num_qubits = n;
                for (int y = 0; y < (1 << n); ++y) want.amps.push_back(oracle(y, x));
                for (const auto& b : run_branches(circ, StateVector::basis(n, x)))
                    worst = std::max(worst, infidelity(b.state, want));
            }
        }
    }
    const double dt = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst infidelity %.2e, %.2fs", worst, dt);
    report(4, "dqft correctness n=2..4, both strategies, <60s",
           worst < 1e-9 && dt < 60.0, buf);
}

// 5: zz term equals exp(-i theta Z x Z) up to phase for 50 random angles
void criterion_5() {
    StateSampler sampler(1005);
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        const double theta = 8.0 * sampler.uniform() - 4.0;
        const CMatrix u = unitary_of(build_zz_term({0, 1, theta}));
        if (!matrices_equal_upto_phase(u, pauli_exp_matrix("ZZ", theta), 1e-10)) ok = false;
    }
    report(5, "zz term vs exponential oracle, 50 angles, tol 1e-10", ok);
}

// 6: the 4-vertex star cost layer: one width-3 fan-out, summed Rz, product oracle
void criterion_6() {
    const double th0 = 0.3, th1 = 0.5, th2 = 0.7;
    const std::vector<WeightedEdge> star = {{0, 1, th0}, {0, 2, th1}, {0, 3, th2}};
    const Circuit c = compile_qaoa_cost(star, 4);

    int fanouts = 0, width = 0;
    double control_rz = 0;
    bool got_rz = false;
    for (const auto& g : c.gates) {
        if (const auto* fo = std::get_if<FanOut>(&g)) {
            ++fanouts;
            width = static_cast<int>(fo->targets.size());
        } else if (const auto* lg = std::get_if<Local1Q>(&g)) {
            if (lg->qubit == 0 && lg->u.kind == UKind::Rz) {
                control_rz = lg->u.theta;
                got_rz = true;
            }
        }
    }
    CMatrix oracle = CMatrix::identity(16);
    const char* strings[3] = {"IIZZ", "IZIZ", "ZIIZ"};
    const double thetas[3] = {th0, th1, th2};
    for (int i = 0; i < 3; ++i) oracle = pauli_exp_matrix(strings[i], thetas[i]) * oracle;

    const bool ok = fanouts == 1 && width == 3 && got_rz &&
                    std::abs(control_rz - 2 * (th0 + th1 + th2)) < 1e-12 &&
                    matrices_equal_upto_phase(unitary_of(c), oracle, 1e-9);
    report(6, "qaoa star: one width-3 fan-out, summed Rz, oracle", ok);
}

// 7: parity gate forms agree up to phase for n in 1..4
void criterion_7() {
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
        const CMatrix chain = unitary_of(build_parity_gate_simple(n, ParityForm::CnotChain));
        const CMatrix fan = unitary_of(build_parity_gate_simple(n, ParityForm::FanOutForm));
        if (!matrices_equal_upto_phase(chain, fan, 1e-10)) ok = false;
    }
    report(7, "parity gate: cnot chain vs fan-out form, tol 1e-10", ok);
}

// 8: pauli exponential compiler vs matrix oracle, ancilla block structure
void criterion_8() {
    StateSampler sampler(1008);
    bool ok = true;
    for (const char* s : {"Z", "ZZ", "ZZZ", "XZXZ", "XYZ"}) {
        for (int trial = 0; trial < 10; ++trial) {
            const double theta = 8.0 * sampler.uniform() - 4.0;
            const CMatrix u = unitary_of(compile_pauli_exp({s, theta}));
            const CMatrix oracle = pauli_exp_matrix(s, theta);
            const int dim = oracle.dim();
            CMatrix block(dim);
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) block(r, c) = u(r, c);
            if (!matrices_equal_upto_phase(block, oracle, 1e-9)) ok = false;
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c)
                    if (std::abs(u(r + dim, c)) > 1e-9) ok = false;
        }
    }
    report(8, "pauli exponential vs oracle, ancilla restored, tol 1e-9", ok);
}

// 9: GHZ tree: branch fidelity, ceil(log2 k) layers, k-1 Bell pairs
void criterion_9() {
    bool ok = true;
    double worst = 0;
    for (int k = 2; k <= 5; ++k) {
        std::vector<int> nodes;
        for (int i = 0; i < k; ++i) nodes.push_back(i);
        const GhzTreeResult res = ghz_prepare_tree(nodes, 0);
        if (res.bell_pairs_used != k - 1) ok = false;
        if (res.merge_layers != static_cast<int>(std::ceil(std::log2(k)))) ok = false;

        StateVector ghz;
        ghz.num_qubits = k;
        ghz.amps.assign(size_t{1} << k, cplx{});
        ghz.amps.front() = 1.0 / std::numbers::sqrt2;
        ghz.amps.back() = 1.0 / std::numbers::sqrt2;
        for (const auto& b : run_branches(res.circuit, StateVector::zero(k)))
            worst = std::max(worst, infidelity(b.state, ghz));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst infidelity %.2e", worst);
    report(9, "ghz tree k=2..5: fidelity, layers, k-1 pairs", ok && worst < 1e-9, buf);
}

// 10: depth ordering one-shot <= tree <= bell-only, strict at n=8, table < 5 s
void criterion_10() {
    const auto t0 = Clock::now();
    const CostModel m;
    bool ok = true;
    for (int n : {4, 6, 8}) {
        auto [b, _1] = compile_dqft(n, Strategy::BellOnly);
        auto [t, _2] = compile_dqft(n, Strategy::FanOut, GhzMode::Tree);
        auto [o, _3] = compile_dqft(n, Strategy::FanOut, GhzMode::OneShot);
        const double db = depth(b, m), dt = depth(t, m), dos = depth(o, m);
        if (!(dos <= dt && dt <= db)) ok = false;
        if (n == 8 && !(dos < dt && dt < db)) ok = false;
    }
    const auto rows = compare_strategies(
        "qft", [](int n) { return build_qft_cp(n); }, {4, 5, 6, 7, 8}, m);
    const std::string table = rows_to_table(rows);
    const double dt = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu table rows, %.2fs", rows.size(), dt);
    report(10, "depth ordering one_shot <= tree <= bell_only, <5s",
           ok && !table.empty() && dt < 5.0, buf);
}

// 11: verification reports are byte-identical for a fixed seed
void criterion_11() {
    Circuit orig;
    orig.qubits = {{0, "q_0", 0}, {1, "q_1", 1}};
    orig.gates = {Controlled{U1q::p(0.7), 0, 1}};
    const ExpansionResult ex = expand_all(orig, Strategy::BellOnly);
    VerifyOptions opt;
    opt.seed = 2024;
    const VerifyResult a = verify_equivalence(orig, ex.circuit, opt);
    const VerifyResult b = verify_equivalence(orig, ex.circuit, opt);
    report(11, "seeded verification is byte-identical",
           a.pass && b.pass && a.report == b.report);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%s (%d/11 criteria)\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                11 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
