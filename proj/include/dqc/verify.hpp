#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "dqc/circuit.hpp"
#include "dqc/statevector.hpp"

namespace dqc {

/// Deterministic pseudo-random source for verification inputs: mt19937_64
/// feeding a Box-Muller transform, so runs reproduce bit-for-bit across
/// platforms for a fixed seed.
class StateSampler {
public:
    explicit StateSampler(uint64_t seed) : rng_(seed) {}

    double uniform();        // [0, 1)
    double gaussian();
    StateVector haar_state(int num_qubits);
    std::array<cplx, 4> haar_unitary_2x2();

private:
    std::mt19937_64 rng_;
};

struct VerifyOptions {
    double tol = 1e-9;
    uint64_t seed = 1;
    int num_states = 10;
    SimOptions sim;
};

struct VerifyResult {
    bool pass = false;
    double worst_infidelity = 0.0;
    std::string report;
};

/// Checks that every measurement branch of `expanded` maps each of
/// `num_states` seeded random inputs to the state the measurement-free
/// `original` produces, up to global phase. The report is byte-stable for a
/// fixed seed.
VerifyResult verify_equivalence(const Circuit& original, const Circuit& expanded,
                                const VerifyOptions& opt = {});

}  // namespace dqc
