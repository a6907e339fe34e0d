#include "doctest.h"

#include "dqc/compile.hpp"
#include "dqc/expand.hpp"
#include "dqc/verify.hpp"

using namespace dqc;

namespace {

Circuit remote_cnot() {
    Circuit c;
    c.name = "dcnot";
    c.qubits = {{0, "q_0", 0}, {1, "q_1", 1}};
    c.gates = {Controlled{U1q::x(), 0, 1}};
    return c;
}

}  // namespace

TEST_CASE("expanded remote cnot verifies against its original") {
    const Circuit orig = remote_cnot();
    const ExpansionResult ex = expand_all(orig, Strategy::BellOnly);
    const VerifyResult r = verify_equivalence(orig, ex.circuit);
    CHECK(r.pass);
    CHECK(r.worst_infidelity < 1e-9);
    CHECK(r.report.find("RESULT: PASS") != std::string::npos);
}

TEST_CASE("a circuit verifies against itself") {
    const Circuit qft = build_qft_cp(3);
    const VerifyResult r = verify_equivalence(qft, qft);
    CHECK(r.pass);
    CHECK(r.worst_infidelity < 1e-12);
}

TEST_CASE("dropping a correction is caught, and in exactly half the branches") {
    const Circuit orig = remote_cnot();
    ExpansionResult ex = expand_all(orig, Strategy::BellOnly);

    // remove the final Z correction: branches with m1 = 1 now disagree
    Circuit broken = ex.circuit;
    bool erased = false;
    for (auto it = broken.gates.end(); it != broken.gates.begin();) {
        --it;
        if (const auto* cg = std::get_if<Conditioned>(&*it); cg && cg->u.kind == UKind::Z) {
            broken.gates.erase(it);
            erased = true;
            break;
        }
    }
    REQUIRE(erased);

    VerifyOptions opt;
    opt.num_states = 4;
    const VerifyResult r = verify_equivalence(orig, broken, opt);
    CHECK_FALSE(r.pass);
    CHECK(r.worst_infidelity > 0.01);
    CHECK(r.report.find("RESULT: FAIL") != std::string::npos);

    // half the branches carry m1 = 0 and still agree
    StateSampler sampler(99);
    const StateVector in = sampler.haar_state(2);
    const auto good = run_branches(ex.circuit, in);
    const auto bad = run_branches(broken, in);
    REQUIRE(good.size() == 4);
    REQUIRE(bad.size() == 4);
    const StateVector want = run_branches(orig, in).front().state;
    int agree = 0;
    for (const auto& b : bad)
        if (infidelity(b.state, want) < 1e-9) ++agree;
    CHECK(agree == 2);
}

TEST_CASE("verification reports are byte-identical for a fixed seed") {
    const Circuit orig = remote_cnot();
    const ExpansionResult ex = expand_all(orig, Strategy::BellOnly);
    VerifyOptions opt;
    opt.seed = 42;
    opt.num_states = 6;
    const VerifyResult a = verify_equivalence(orig, ex.circuit, opt);
    const VerifyResult b = verify_equivalence(orig, ex.circuit, opt);
    CHECK(a.report == b.report);
    CHECK(a.worst_infidelity == b.worst_infidelity);

    opt.seed = 43;
    const VerifyResult c = verify_equivalence(orig, ex.circuit, opt);
    CHECK(c.pass);
    CHECK(c.report != a.report);   // different inputs, different numbers
}

TEST_CASE("fanout expansion of a grouped qft verifies end to end") {
    const Circuit orig = build_qft_cp(3);
    for (GhzMode mode : {GhzMode::OneShot, GhzMode::Tree}) {
        const ExpansionResult ex = expand_all(orig, Strategy::FanOut, mode);
        VerifyOptions opt;
        opt.num_states = 3;
        const VerifyResult r = verify_equivalence(orig, ex.circuit, opt);
        CHECK(r.pass);
    }
}

TEST_CASE("originals with measurements are rejected") {
    Circuit orig = remote_cnot();
    orig.cbits = {{0, "m"}};
    orig.gates.push_back(Measure{0, 0});
    CHECK_THROWS_AS(verify_equivalence(orig, orig), DqcError);
}

TEST_CASE("mismatched computational qubits are rejected") {
    const Circuit a = remote_cnot();
    Circuit b = a;
    b.qubits.push_back({7, "extra", 0, QubitRole::Computation});
    CHECK_THROWS_AS(verify_equivalence(a, b), DqcError);
}

TEST_CASE("sampler determinism across instances") {
    StateSampler s1(7), s2(7);
    for (int i = 0; i < 100; ++i) CHECK(s1.uniform() == s2.uniform());
    const StateVector h1 = s1.haar_state(3);
    const StateVector h2 = s2.haar_state(3);
    CHECK(h1.amps == h2.amps);
    CHECK(std::abs(h1.norm() - 1.0) < 1e-12);
}
