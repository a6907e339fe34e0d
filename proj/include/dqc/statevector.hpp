#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "dqc/circuit.hpp"

namespace dqc {

// ---------------------------------------------------------------------------
// Dense complex matrix (desk-scale oracle support)
// ---------------------------------------------------------------------------

class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

    static CMatrix identity(int dim);

    int dim() const { return dim_; }
    cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const cplx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix dagger() const;
    double max_abs_diff(const CMatrix& rhs) const;
    bool is_unitary(double tol) const;

private:
    int dim_ = 0;
    std::vector<cplx> a_;
};

/// min over global phase of max-entry distance <= tol. The phase is taken
/// from the largest-magnitude entry of B.
bool matrices_equal_upto_phase(const CMatrix& a, const CMatrix& b, double tol);

/// e^{-i theta P} for a Pauli string over {I,X,Y,Z}; leftmost character acts
/// on the highest qubit index (qubit 0 = least significant bit is the LAST
/// character). Computed exactly as cos(theta) I - i sin(theta) P.
CMatrix pauli_exp_matrix(std::string_view pauli, double theta);

/// Dense matrix of a Pauli string, same index convention as above.
CMatrix pauli_matrix(std::string_view pauli);

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

/// Little-endian dense state: bit position p of the amplitude index is the
/// p-th live qubit in ascending id order.
struct StateVector {
    int num_qubits = 0;
    std::vector<cplx> amps;

    static StateVector zero(int n);
    static StateVector basis(int n, uint64_t x);

    size_t dim() const { return amps.size(); }
    double norm() const;
    void normalize();

    void apply_1q(const std::array<cplx, 4>& m, int pos);
    void apply_controlled(const std::array<cplx, 4>& m, int control_pos, int target_pos);
};

struct Branch {
    std::map<int, int> outcomes;     // cbit id -> 0/1
    double probability = 1.0;
    std::vector<int> qubit_ids;      // surviving qubits, ascending id order
    StateVector state;
};

struct SimOptions {
    uint64_t branch_cap = uint64_t{1} << 20;
    int unitary_cap = 12;
    double prune_eps = 1e-12;
};

/// Executes the circuit on `input`, enumerating every measurement branch with
/// nonzero probability. `input` covers either all qubits or only the
/// non-communication qubits (communication qubits start in |0>), ordered by
/// ascending qubit id. Measured qubits are projected out of the branch state.
std::vector<Branch> run_branches(const Circuit& c, const StateVector& input,
                                 const SimOptions& opt = {});

/// Full unitary of a measurement-free, marker-free circuit, one basis column
/// at a time. Throws if the circuit contains Measure/Conditioned/BellPrep/
/// GhzPrep gates or exceeds the qubit cap.
CMatrix unitary_of(const Circuit& c, const SimOptions& opt = {});

/// 1 - |<a|b>|^2
double infidelity(const StateVector& a, const StateVector& b);

/// true iff |<a|b>|^2 >= 1 - tol
bool states_equal_upto_phase(const StateVector& a, const StateVector& b, double tol);

/// Debug dump (index, re, im) as CSV for failure triage.
std::string dump_amplitudes_csv(const StateVector& s);

}  // namespace dqc
