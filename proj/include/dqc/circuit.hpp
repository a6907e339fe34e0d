#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace dqc {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Single-qubit unitaries
// ---------------------------------------------------------------------------

enum class UKind { H, X, Y, Z, S, Sdg, T, Rz, Rx, P, Custom };

/// One-qubit unitary. Conventions:
///   Rz(t) = diag(e^{-it/2}, e^{it/2})
///   Rx(t) = cos(t/2) I - i sin(t/2) X
///   P(t)  = diag(1, e^{it})
struct U1q {
    UKind kind = UKind::H;
    double theta = 0.0;                 // Rz / Rx / P only
    std::array<cplx, 4> mat{};          // row-major, Custom only

    static U1q h() { return {UKind::H}; }
    static U1q x() { return {UKind::X}; }
    static U1q y() { return {UKind::Y}; }
    static U1q z() { return {UKind::Z}; }
    static U1q s() { return {UKind::S}; }
    static U1q sdg() { return {UKind::Sdg}; }
    static U1q t() { return {UKind::T}; }
    static U1q rz(double t) { return {UKind::Rz, t}; }
    static U1q rx(double t) { return {UKind::Rx, t}; }
    static U1q p(double t) { return {UKind::P, t}; }
    static U1q custom(const std::array<cplx, 4>& m) { return {UKind::Custom, 0.0, m}; }

    std::array<cplx, 4> matrix() const;
    bool operator==(const U1q&) const = default;
};

const char* ukind_name(UKind k);

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

/// Holds iff the XOR of the referenced classical bits is 1.
struct ParityCondition {
    std::vector<int> bits;
    bool operator==(const ParityCondition&) const = default;
};

struct Local1Q {
    U1q u;
    int qubit = 0;
    bool operator==(const Local1Q&) const = default;
};

struct Controlled {
    U1q u;
    int control = 0;
    int target = 0;
    bool operator==(const Controlled&) const = default;
};

struct FanOutTarget {
    int qubit = 0;
    U1q u;
    bool operator==(const FanOutTarget&) const = default;
};

/// Multitarget controlled gate: one control, per-target unitaries.
struct FanOut {
    int control = 0;
    std::vector<FanOutTarget> targets;
    bool operator==(const FanOut&) const = default;
};

/// Resource marker: ideal (|00>+|11>)/sqrt(2) on two fresh qubits.
struct BellPrep {
    int a = 0;
    int b = 0;
    bool operator==(const BellPrep&) const = default;
};

enum class GhzMode { OneShot, Tree };

/// Resource marker: ideal (|0..0>+|1..1>)/sqrt(2) on fresh qubits.
struct GhzPrep {
    std::vector<int> qubits;
    GhzMode mode = GhzMode::OneShot;
    bool operator==(const GhzPrep&) const = default;
};

struct Measure {
    int qubit = 0;
    int cbit = 0;   // Z basis only
    bool operator==(const Measure&) const = default;
};

struct Conditioned {
    ParityCondition cond;
    U1q u;
    int qubit = 0;
    bool operator==(const Conditioned&) const = default;
};

struct Barrier {
    std::string note;
    bool operator==(const Barrier&) const = default;
};

using Gate = std::variant<Local1Q, Controlled, FanOut, BellPrep, GhzPrep,
                          Measure, Conditioned, Barrier>;

/// All qubit ids a gate touches, in gate-declaration order.
std::vector<int> gate_qubits(const Gate& g);

// ---------------------------------------------------------------------------
// Circuit
// ---------------------------------------------------------------------------

enum class QubitRole { Computation, Communication, Ancilla };

const char* role_name(QubitRole r);

struct Qubit {
    int id = 0;
    std::string label;
    int node = 0;
    QubitRole role = QubitRole::Computation;
    bool operator==(const Qubit&) const = default;
};

struct ClassicalBit {
    int id = 0;
    std::string label;
    bool operator==(const ClassicalBit&) const = default;
};

/// Ordered gate list over named qubits/cbits with a node partition.
/// Circuits are immutable by convention once built; passes return new ones.
struct Circuit {
    std::string name;
    std::vector<Qubit> qubits;
    std::vector<ClassicalBit> cbits;
    std::vector<Gate> gates;

    const Qubit* find_qubit(int id) const;
    bool has_cbit(int id) const;
    int node_of(int qubit_id) const;
    int num_nodes() const;
    int max_qubit_id() const;
    int max_cbit_id() const;

    /// Qubit ids sorted ascending; bit position of a qubit in simulation
    /// states is its index here (little-endian, qubit at index 0 = LSB).
    std::vector<int> sorted_qubit_ids() const;
    std::vector<int> sorted_noncomm_qubit_ids() const;

    bool operator==(const Circuit&) const = default;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct Violation {
    int gate_index = -1;    // -1 for circuit-level problems
    std::string rule;
    std::string detail;
};

/// Returns the empty list iff the circuit is well formed. Violations are
/// data, not failures.
std::vector<Violation> validate(const Circuit& c);

// ---------------------------------------------------------------------------
// Locality
// ---------------------------------------------------------------------------

struct LocalityClass {
    enum Kind { Local, RemoteControlled, RemoteFanOut } kind = Local;
    std::set<int> remote_nodes;        // RemoteFanOut: target nodes != control's
    std::vector<int> local_targets;    // RemoteFanOut: targets on control's node
};

/// Classifies a gate of the circuit against its partition. Resource markers,
/// measurements and conditioned corrections count as Local.
LocalityClass locality(const Circuit& c, const Gate& g);

struct DqcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dqc
