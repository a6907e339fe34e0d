#include "dqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace dqc {

double StateSampler::uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double StateSampler::gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

StateVector StateSampler::haar_state(int num_qubits) {
    StateVector s;
    s.num_qubits = num_qubits;
    s.amps.resize(size_t{1} << num_qubits);
    for (auto& a : s.amps) a = {gaussian(), gaussian()};
    s.normalize();
    return s;
}

std::array<cplx, 4> StateSampler::haar_unitary_2x2() {
    // Gram-Schmidt on two Gaussian columns
    cplx c0[2] = {{gaussian(), gaussian()}, {gaussian(), gaussian()}};
    cplx c1[2] = {{gaussian(), gaussian()}, {gaussian(), gaussian()}};
    double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
    c0[0] /= n0;
    c0[1] /= n0;
    const cplx ov = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
    c1[0] -= ov * c0[0];
    c1[1] -= ov * c0[1];
    double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
    c1[0] /= n1;
    c1[1] /= n1;
    return {c0[0], c1[0], c0[1], c1[1]};
}

VerifyResult verify_equivalence(const Circuit& original, const Circuit& expanded,
                                const VerifyOptions& opt) {
    if (opt.tol <= 0 || opt.tol >= 1) throw DqcError("verify: tolerance must be in (0,1)");
    for (const auto& g : original.gates)
        if (std::holds_alternative<Measure>(g))
            throw DqcError("verify: original circuit must be measurement-free");

    const auto oracle_ids = original.sorted_noncomm_qubit_ids();
    const auto expanded_ids = expanded.sorted_noncomm_qubit_ids();
    if (oracle_ids != expanded_ids)
        throw DqcError("verify: circuits disagree on non-communication qubit ids");

    const int n = static_cast<int>(oracle_ids.size());
    StateSampler sampler(opt.seed);
    std::ostringstream rep;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "verify: original='%s' expanded='%s' qubits=%d\n"
                  "seed=%llu num_states=%d tol=%.3g\n",
                  original.name.c_str(), expanded.name.c_str(), n,
                  static_cast<unsigned long long>(opt.seed), opt.num_states, opt.tol);
    rep << buf;

    VerifyResult res;
    res.pass = true;
    for (int s = 0; s < opt.num_states; ++s) {
        const StateVector input = sampler.haar_state(n);

        const auto oracle_branches = run_branches(original, input, opt.sim);
        if (oracle_branches.size() != 1)
            throw DqcError("verify: original circuit is not deterministic");
        const StateVector& expect = oracle_branches.front().state;

        double worst = 0.0;
        const auto branches = run_branches(expanded, input, opt.sim);
        for (const auto& b : branches) {
            if (b.qubit_ids != oracle_ids)
                throw DqcError("verify: expanded branch left unexpected qubits alive");
            worst = std::max(worst, infidelity(b.state, expect));
        }
        res.worst_infidelity = std::max(res.worst_infidelity, worst);
        const bool ok = worst <= opt.tol;
        if (!ok) res.pass = false;
        std::snprintf(buf, sizeof buf, "state %d: branches=%zu worst_infidelity=%.6e %s\n", s,
                      branches.size(), worst, ok ? "PASS" : "FAIL");
        rep << buf;
    }
    std::snprintf(buf, sizeof buf, "worst infidelity: %.6e\nRESULT: %s\n",
                  res.worst_infidelity, res.pass ? "PASS" : "FAIL");
    rep << buf;
    res.report = rep.str();
    return res;
}

}  // namespace dqc
