#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dqc/expand.hpp"
#include "dqc/statevector.hpp"
#include "dqc/verify.hpp"

using namespace dqc;

namespace {

Circuit remote_controlled(const U1q& u) {
    Circuit c;
    c.name = "dcu";
    c.qubits = {{0, "c", 0, QubitRole::Computation}, {1, "t", 1, QubitRole::Computation}};
    c.gates = {Controlled{u, 0, 1}};
    return c;
}

Circuit remote_fanout(int k, StateSampler& sampler, bool random_unitaries = true) {
    Circuit c;
    c.name = "dfanout";
    c.qubits.push_back({0, "c", 0, QubitRole::Computation});
    FanOut fo;
    fo.control = 0;
    for (int i = 1; i <= k; ++i) {
        c.qubits.push_back({i, "t_" + std::to_string(i), i, QubitRole::Computation});
        fo.targets.push_back(
            {i, random_unitaries ? U1q::custom(sampler.haar_unitary_2x2()) : U1q::x()});
    }
    c.gates.push_back(std::move(fo));
    return c;
}

/// oracle application of the single remote gate, then branch comparison
void check_protocol(const Circuit& original, const Circuit& expanded, int num_states,
                    uint64_t seed, double tol, int expected_branches = -1) {
    StateSampler sampler(seed);
    const int n = static_cast<int>(original.qubits.size());
    for (int s = 0; s < num_states; ++s) {
        const StateVector input = sampler.haar_state(n);
        const auto oracle = run_branches(original, input);
        REQUIRE(oracle.size() == 1);
        const auto branches = run_branches(expanded, input);
        if (expected_branches > 0) REQUIRE(static_cast<int>(branches.size()) == expected_branches);
        double total = 0;
        for (const auto& b : branches) {
            CHECK(b.qubit_ids == oracle.front().qubit_ids);
            CHECK(infidelity(b.state, oracle.front().state) < tol);
            total += b.probability;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

}  // namespace

TEST_CASE("expand_dcu structure follows the Bell protocol") {
    const Circuit c = remote_controlled(U1q::p(0.7));
    const ExpansionResult ex = expand_dcu(c, 0);

    CHECK(validate(ex.circuit).empty());
    REQUIRE(ex.resources_emitted.size() == 1);
    CHECK(std::holds_alternative<BellPrep>(ex.resources_emitted.front()));
    CHECK(ex.new_comm_qubits.size() == 2);
    CHECK(ex.new_cbits.size() == 2);
    REQUIRE(ex.circuit.gates.size() == 8);

    int measures = 0, conds = 0;
    for (const auto& g : ex.circuit.gates) {
        if (std::holds_alternative<Measure>(g)) ++measures;
        if (std::holds_alternative<Conditioned>(g)) ++conds;
    }
    CHECK(measures == 2);
    CHECK(conds == 2);
}

TEST_CASE("expand_dcu implements dCNOT on every branch") {
    const Circuit c = remote_controlled(U1q::x());
    const ExpansionResult ex = expand_dcu(c, 0);
    check_protocol(c, ex.circuit, 20, 42, 1e-10, 4);
}

TEST_CASE("expand_dcu with identity unitary leaves input unchanged") {
    const Circuit c = remote_controlled(U1q::custom({1, 0, 0, 1}));
    const ExpansionResult ex = expand_dcu(c, 0);
    StateSampler sampler(9);
    const StateVector input = sampler.haar_state(2);
    for (const auto& b : run_branches(ex.circuit, input))
        CHECK(infidelity(b.state, input) < 1e-12);
}

TEST_CASE("expand_dcu rejects local and mismatched gates") {
    Circuit local = remote_controlled(U1q::x());
    local.qubits[1].node = 0;
    CHECK_THROWS_WITH_AS(expand_dcu(local, 0), doctest::Contains("local"), DqcError);

    Circuit wrong = remote_controlled(U1q::x());
    wrong.gates[0] = Local1Q{U1q::h(), 0};
    CHECK_THROWS_AS(expand_dcu(wrong, 0), DqcError);
    CHECK_THROWS_AS(expand_dcu(wrong, 5), DqcError);
}

TEST_CASE("expand_dfanout matches the multitarget oracle for k=1..4") {
    for (int k = 1; k <= 4; ++k) {
        StateSampler sampler(100 + static_cast<uint64_t>(k));
        const Circuit c = remote_fanout(k, sampler);
        const ExpansionResult ex = expand_dfanout(c, 0);
        CHECK(validate(ex.circuit).empty());
        check_protocol(c, ex.circuit, 5, 7, 1e-9, 1 << (k + 1));
    }
}

TEST_CASE("expand_dfanout branch probabilities are uniform") {
    StateSampler sampler(3);
    const Circuit c = remote_fanout(3, sampler);
    const ExpansionResult ex = expand_dfanout(c, 0);
    const auto branches = run_branches(ex.circuit, sampler.haar_state(4));
    REQUIRE(branches.size() == 16);
    for (const auto& b : branches) CHECK(b.probability == doctest::Approx(1.0 / 16).epsilon(1e-9));
}

TEST_CASE("expand_dfanout uses one GHZ of size r+1 and r+1 measurements") {
    StateSampler sampler(4);
    const Circuit c = remote_fanout(3, sampler);
    const ExpansionResult ex = expand_dfanout(c, 0);
    REQUIRE(ex.resources_emitted.size() == 1);
    const auto& gp = std::get<GhzPrep>(ex.resources_emitted.front());
    CHECK(gp.qubits.size() == 4);
    int measures = 0;
    for (const auto& g : ex.circuit.gates)
        if (std::holds_alternative<Measure>(g)) ++measures;
    CHECK(measures == 4);
}

TEST_CASE("expand_dfanout with k=1 degenerates to the dcu structure") {
    StateSampler sampler(5);
    const Circuit fan = remote_fanout(1, sampler, /*random_unitaries=*/false);
    const ExpansionResult a = expand_dfanout(fan, 0);

    Circuit ctl = remote_controlled(U1q::x());
    const ExpansionResult b = expand_dcu(ctl, 0);

    REQUIRE(a.circuit.gates.size() == b.circuit.gates.size());
    for (size_t i = 0; i < a.circuit.gates.size(); ++i)
        CHECK(a.circuit.gates[i] == b.circuit.gates[i]);
}

TEST_CASE("targets sharing a remote node share one communication qubit") {
    Circuit c;
    c.qubits = {{0, "c", 0, QubitRole::Computation},
                {1, "t_1", 1, QubitRole::Computation},
                {2, "t_2", 1, QubitRole::Computation},
                {3, "t_3", 2, QubitRole::Computation}};
    FanOut fo;
    fo.control = 0;
    fo.targets = {{1, U1q::p(0.3)}, {2, U1q::p(0.4)}, {3, U1q::p(0.5)}};
    c.gates.push_back(fo);

    const ExpansionResult ex = expand_dfanout(c, 0);
    CHECK(ex.new_comm_qubits.size() == 3);   // a0 + one per remote node {1,2}
    const auto& gp = std::get<GhzPrep>(ex.resources_emitted.front());
    CHECK(gp.qubits.size() == 3);
    check_protocol(c, ex.circuit, 5, 12, 1e-9, 8);
}

TEST_CASE("local targets stay as local controlled gates") {
    Circuit c;
    c.qubits = {{0, "c", 0, QubitRole::Computation},
                {1, "t_1", 0, QubitRole::Computation},
                {2, "t_2", 1, QubitRole::Computation}};
    FanOut fo;
    fo.control = 0;
    fo.targets = {{1, U1q::p(0.9)}, {2, U1q::p(1.1)}};
    c.gates.push_back(fo);
    const ExpansionResult ex = expand_dfanout(c, 0);
    bool found_local = false;
    for (const auto& g : ex.circuit.gates)
        if (const auto* ctl = std::get_if<Controlled>(&g))
            if (ctl->control == 0 && ctl->target == 1) found_local = true;
    CHECK(found_local);
    check_protocol(c, ex.circuit, 5, 13, 1e-9, 4);
}

TEST_CASE("expand_all BellOnly lowers fan-outs to Bell pairs") {
    StateSampler sampler(6);
    const Circuit c = remote_fanout(3, sampler);
    const ExpansionResult ex = expand_all(c, Strategy::BellOnly);
    CHECK(validate(ex.circuit).empty());
    int bells = 0, ghz = 0;
    for (const auto& g : ex.circuit.gates) {
        bells += std::holds_alternative<BellPrep>(g);
        ghz += std::holds_alternative<GhzPrep>(g);
    }
    CHECK(bells == 3);
    CHECK(ghz == 0);
    check_protocol(c, ex.circuit, 5, 21, 1e-9, 64);
}

TEST_CASE("expand_all leaves local circuits untouched") {
    Circuit c;
    c.qubits = {{0, "q_0", 0}, {1, "q_1", 0}};
    c.gates = {Local1Q{U1q::h(), 0}, Controlled{U1q::x(), 0, 1}};
    const ExpansionResult ex = expand_all(c, Strategy::FanOut);
    CHECK(ex.circuit == c);
    CHECK(ex.resources_emitted.empty());
}

TEST_CASE("expand_all is idempotent") {
    StateSampler sampler(8);
    const Circuit c = remote_fanout(3, sampler);
    const ExpansionResult once = expand_all(c, Strategy::FanOut, GhzMode::Tree);
    const ExpansionResult twice = expand_all(once.circuit, Strategy::FanOut, GhzMode::Tree);
    CHECK(twice.circuit == once.circuit);
    CHECK(twice.resources_emitted.empty());
}

TEST_CASE("communication qubit hygiene after expansion") {
    StateSampler sampler(10);
    const Circuit c = remote_fanout(4, sampler);
    const ExpansionResult ex = expand_all(c, Strategy::FanOut);
    // every new communication qubit is measured exactly once and untouched after
    for (int q : ex.new_comm_qubits) {
        int measures = 0;
        bool touched_after = false;
        for (const auto& g : ex.circuit.gates) {
            const auto qs = gate_qubits(g);
            const bool touches = std::find(qs.begin(), qs.end(), q) != qs.end();
            if (std::holds_alternative<Measure>(g) && touches) {
                ++measures;
                continue;
            }
            if (touches && measures > 0) touched_after = true;
        }
        CHECK(measures == 1);
        CHECK_FALSE(touched_after);
    }
}

TEST_CASE("ghz_prepare_tree produces the GHZ state in every branch") {
    for (int k = 2; k <= 5; ++k) {
        std::vector<int> nodes;
        for (int i = 0; i < k; ++i) nodes.push_back(i);
        const GhzTreeResult res = ghz_prepare_tree(nodes, 0);
        CHECK(validate(res.circuit).empty());
        CHECK(res.bell_pairs_used == k - 1);
        CHECK(res.merge_layers == static_cast<int>(std::ceil(std::log2(k))));

        StateVector ghz;
        ghz.num_qubits = k;
        ghz.amps.assign(size_t{1} << k, cplx{});
        ghz.amps.front() = 1.0 / std::numbers::sqrt2;
        ghz.amps.back() = 1.0 / std::numbers::sqrt2;

        const auto branches =
            run_branches(res.circuit, StateVector::zero(k));
        CHECK_FALSE(branches.empty());
        double total = 0;
        for (const auto& b : branches) {
            CHECK(b.qubit_ids == res.ghz_qubits);
            CHECK(infidelity(b.state, ghz) < 1e-9);
            total += b.probability;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("ghz_prepare_tree k=2 is a single Bell pair") {
    const GhzTreeResult res = ghz_prepare_tree({0, 1}, 0);
    REQUIRE(res.circuit.gates.size() == 1);
    CHECK(std::holds_alternative<BellPrep>(res.circuit.gates.front()));
    CHECK(res.bell_pairs_used == 1);
    CHECK(res.merge_layers == 1);
}

TEST_CASE("ghz_prepare_tree rejects degenerate inputs") {
    CHECK_THROWS_AS(ghz_prepare_tree({0}, 0), DqcError);
    CHECK_THROWS_AS(ghz_prepare_tree({0, 1}, 7), DqcError);
}
