#include "dqc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace dqc {

namespace {
constexpr cplx kI{0.0, 1.0};
}

// ---------------------------------------------------------------------------
// CMatrix
// ---------------------------------------------------------------------------

CMatrix CMatrix::identity(int dim) {
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (dim_ != rhs.dim_) throw DqcError("matrix dimension mismatch");
    CMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int k = 0; k < dim_; ++k) {
            const cplx v = (*this)(r, k);
            if (v == cplx{}) continue;
            for (int c = 0; c < dim_; ++c) out(r, c) += v * rhs(k, c);
        }
    return out;
}

CMatrix CMatrix::dagger() const {
    CMatrix out(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

double CMatrix::max_abs_diff(const CMatrix& rhs) const {
    if (dim_ != rhs.dim_) throw DqcError("matrix dimension mismatch");
    double mx = 0;
    for (size_t i = 0; i < a_.size(); ++i) mx = std::max(mx, std::abs(a_[i] - rhs.a_[i]));
    return mx;
}

bool CMatrix::is_unitary(double tol) const {
    return (dagger() * *this).max_abs_diff(identity(dim_)) <= tol;
}

bool matrices_equal_upto_phase(const CMatrix& a, const CMatrix& b, double tol) {
    if (a.dim() != b.dim()) throw DqcError("matrices_equal_upto_phase: shape mismatch");
    // phase from the largest-magnitude entry of b
    int br = 0, bc = 0;
    double best = -1;
    for (int r = 0; r < b.dim(); ++r)
        for (int c = 0; c < b.dim(); ++c)
            if (std::abs(b(r, c)) > best) {
                best = std::abs(b(r, c));
                br = r;
                bc = c;
            }
    if (best <= 0) return a.max_abs_diff(b) <= tol;
    const cplx ratio = a(br, bc) / b(br, bc);
    const double mag = std::abs(ratio);
    if (mag == 0) return false;
    const cplx phase = ratio / mag;
    double mx = 0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            mx = std::max(mx, std::abs(a(r, c) - phase * b(r, c)));
    return mx <= tol;
}

CMatrix pauli_matrix(std::string_view pauli) {
    const int n = static_cast<int>(pauli.size());
    if (n == 0) throw DqcError("empty Pauli string");
    const int dim = 1 << n;
    CMatrix m(dim);
    for (int x = 0; x < dim; ++x) {
        int y = x;
        cplx coef = 1.0;
        for (int q = 0; q < n; ++q) {
            const int bit = (x >> q) & 1;
            // leftmost character acts on the highest bit
            switch (pauli[static_cast<size_t>(n - 1 - q)]) {
                case 'I':
                    break;
                case 'X':
                    y ^= 1 << q;
                    break;
                case 'Y':
                    y ^= 1 << q;
                    coef *= bit ? -kI : kI;
                    break;
                case 'Z':
                    if (bit) coef = -coef;
                    break;
                default:
                    throw DqcError("invalid Pauli character");
            }
        }
        m(y, x) = coef;
    }
    return m;
}

CMatrix pauli_exp_matrix(std::string_view pauli, double theta) {
    const CMatrix p = pauli_matrix(pauli);
    CMatrix out(p.dim());
    const double c = std::cos(theta);
    const cplx s = -kI * std::sin(theta);
    for (int r = 0; r < p.dim(); ++r)
        for (int col = 0; col < p.dim(); ++col) {
            out(r, col) = s * p(r, col);
            if (r == col) out(r, col) += c;
        }
    return out;
}

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

StateVector StateVector::zero(int n) { return basis(n, 0); }

StateVector StateVector::basis(int n, uint64_t x) {
    StateVector s;
    s.num_qubits = n;
    s.amps.assign(size_t{1} << n, cplx{});
    s.amps[x] = 1.0;
    return s;
}

double StateVector::norm() const {
    double n2 = 0;
    for (const auto& a : amps) n2 += std::norm(a);
    return std::sqrt(n2);
}

void StateVector::normalize() {
    const double n = norm();
    if (n == 0) throw DqcError("cannot normalize zero state");
    for (auto& a : amps) a /= n;
}

void StateVector::apply_1q(const std::array<cplx, 4>& m, int pos) {
    const size_t stride = size_t{1} << pos;
    for (size_t base = 0; base < amps.size(); base += 2 * stride)
        for (size_t i = base; i < base + stride; ++i) {
            const cplx a0 = amps[i];
            const cplx a1 = amps[i + stride];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i + stride] = m[2] * a0 + m[3] * a1;
        }
}

void StateVector::apply_controlled(const std::array<cplx, 4>& m, int control_pos,
                                   int target_pos) {
    const size_t cmask = size_t{1} << control_pos;
    const size_t tmask = size_t{1} << target_pos;
    for (size_t i = 0; i < amps.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) {
            const cplx a0 = amps[i];
            const cplx a1 = amps[i | tmask];
            amps[i] = m[0] * a0 + m[1] * a1;
            amps[i | tmask] = m[2] * a0 + m[3] * a1;
        }
    }
}

double infidelity(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw DqcError("state dimension mismatch");
    cplx ov{};
    for (size_t i = 0; i < a.amps.size(); ++i) ov += std::conj(a.amps[i]) * b.amps[i];
    return 1.0 - std::norm(ov);
}

bool states_equal_upto_phase(const StateVector& a, const StateVector& b, double tol) {
    return infidelity(a, b) <= tol;
}

std::string dump_amplitudes_csv(const StateVector& s) {
    std::ostringstream out;
    out << "index,re,im\n";
    char buf[96];
    for (size_t i = 0; i < s.amps.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, s.amps[i].real(),
                      s.amps[i].imag());
        out << buf;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace {

struct ExecState {
    std::vector<int> live;   // ascending qubit ids; index = bit position
    StateVector sv;

    int pos(int qubit_id) const {
        auto it = std::lower_bound(live.begin(), live.end(), qubit_id);
        if (it == live.end() || *it != qubit_id)
            throw DqcError("qubit " + std::to_string(qubit_id) + " not live");
        return static_cast<int>(it - live.begin());
    }
};

const std::array<cplx, 4> kHMat = U1q::h().matrix();
const std::array<cplx, 4> kXMat = U1q::x().matrix();

void apply_unitary_gate(ExecState& st, const Gate& g,
                        const std::map<int, int>* outcomes) {
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Local1Q>) {
                st.sv.apply_1q(x.u.matrix(), st.pos(x.qubit));
            } else if constexpr (std::is_same_v<T, Controlled>) {
                st.sv.apply_controlled(x.u.matrix(), st.pos(x.control), st.pos(x.target));
            } else if constexpr (std::is_same_v<T, FanOut>) {
                const int cp = st.pos(x.control);
                for (const auto& t : x.targets)
                    st.sv.apply_controlled(t.u.matrix(), cp, st.pos(t.qubit));
            } else if constexpr (std::is_same_v<T, BellPrep>) {
                st.sv.apply_1q(kHMat, st.pos(x.a));
                st.sv.apply_controlled(kXMat, st.pos(x.a), st.pos(x.b));
            } else if constexpr (std::is_same_v<T, GhzPrep>) {
                const int root = st.pos(x.qubits.front());
                st.sv.apply_1q(kHMat, root);
                for (size_t i = 1; i < x.qubits.size(); ++i)
                    st.sv.apply_controlled(kXMat, root, st.pos(x.qubits[i]));
            } else if constexpr (std::is_same_v<T, Conditioned>) {
                if (!outcomes)
                    throw DqcError("conditioned gate outside branch execution");
                int parity = 0;
                for (int b : x.cond.bits) {
                    auto it = outcomes->find(b);
                    if (it == outcomes->end())
                        throw DqcError("conditioned gate reads unmeasured cbit " +
                                       std::to_string(b));
                    parity ^= it->second;
                }
                if (parity) st.sv.apply_1q(x.u.matrix(), st.pos(x.qubit));
            } else if constexpr (std::is_same_v<T, Measure>) {
                throw DqcError("measure gate reached unitary execution path");
            }
            // Barrier: no-op
        },
        g);
}

}  // namespace

std::vector<Branch> run_branches(const Circuit& c, const StateVector& input,
                                 const SimOptions& opt) {
    const auto all_ids = c.sorted_qubit_ids();
    const auto nc_ids = c.sorted_noncomm_qubit_ids();
    const int n_all = static_cast<int>(all_ids.size());

    size_t n_meas = 0;
    for (const auto& g : c.gates)
        if (std::holds_alternative<Measure>(g)) ++n_meas;
    if (n_meas >= 63 || (uint64_t{1} << n_meas) > opt.branch_cap)
        throw DqcError("branch cap exceeded: 2^" + std::to_string(n_meas) +
                       " measurement branches");

    if (std::abs(input.norm() - 1.0) > 1e-9)
        throw DqcError("input state is not normalized");

    ExecState st;
    st.live = all_ids;
    if (input.num_qubits == n_all) {
        st.sv = input;
    } else if (input.num_qubits == static_cast<int>(nc_ids.size())) {
        // embed: communication qubits start in |0>
        std::vector<int> nc_pos;
        for (int id : nc_ids)
            nc_pos.push_back(static_cast<int>(
                std::lower_bound(all_ids.begin(), all_ids.end(), id) - all_ids.begin()));
        st.sv = StateVector{n_all, std::vector<cplx>(size_t{1} << n_all)};
        for (size_t x = 0; x < input.amps.size(); ++x) {
            size_t idx = 0;
            for (size_t b = 0; b < nc_pos.size(); ++b)
                if ((x >> b) & 1) idx |= size_t{1} << nc_pos[b];
            st.sv.amps[idx] = input.amps[x];
        }
    } else {
        throw DqcError("input state covers neither all qubits nor all non-communication qubits");
    }

    std::vector<Branch> out;
    std::map<int, int> outcomes;

    std::function<void(size_t, ExecState, double)> exec = [&](size_t gi, ExecState state,
                                                              double prob) {
        for (; gi < c.gates.size(); ++gi) {
            const Gate& g = c.gates[gi];
            if (const auto* m = std::get_if<Measure>(&g)) {
                const int p = state.pos(m->qubit);
                const size_t mask = size_t{1} << p;
                double p1 = 0;
                for (size_t i = 0; i < state.sv.amps.size(); ++i)
                    if (i & mask) p1 += std::norm(state.sv.amps[i]);
                const double probs[2] = {1.0 - p1, p1};
                for (int v = 0; v < 2; ++v) {
                    if (probs[v] < opt.prune_eps) continue;
                    ExecState next;
                    next.live = state.live;
                    next.live.erase(next.live.begin() + p);
                    next.sv.num_qubits = state.sv.num_qubits - 1;
                    next.sv.amps.resize(state.sv.amps.size() / 2);
                    const double scale = 1.0 / std::sqrt(probs[v]);
                    const size_t lo_mask = mask - 1;
                    for (size_t y = 0; y < next.sv.amps.size(); ++y) {
                        const size_t idx = (y & lo_mask) |
                                           (static_cast<size_t>(v) << p) |
                                           ((y & ~lo_mask) << 1);
                        next.sv.amps[y] = state.sv.amps[idx] * scale;
                    }
                    outcomes[m->cbit] = v;
                    exec(gi + 1, std::move(next), prob * probs[v]);
                    outcomes.erase(m->cbit);
                }
                return;
            }
            apply_unitary_gate(state, g, &outcomes);
        }
        Branch b;
        b.outcomes = outcomes;
        b.probability = prob;
        b.qubit_ids = state.live;
        b.state = std::move(state.sv);
        out.push_back(std::move(b));
    };

    exec(0, std::move(st), 1.0);
    return out;
}

CMatrix unitary_of(const Circuit& c, const SimOptions& opt) {
    for (size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        if (std::holds_alternative<Measure>(g) || std::holds_alternative<Conditioned>(g) ||
            std::holds_alternative<BellPrep>(g) || std::holds_alternative<GhzPrep>(g))
            throw DqcError("unitary_of: gate " + std::to_string(gi) +
                           " is not a pure unitary");
    }
    const auto ids = c.sorted_qubit_ids();
    const int n = static_cast<int>(ids.size());
    if (n > opt.unitary_cap)
        throw DqcError("unitary_of: " + std::to_string(n) + " qubits exceeds cap");

    const int dim = 1 << n;
    CMatrix u(dim);
    for (int x = 0; x < dim; ++x) {
        ExecState st{ids, StateVector::basis(n, static_cast<uint64_t>(x))};
        for (const auto& g : c.gates) apply_unitary_gate(st, g, nullptr);
        if (std::abs(st.sv.norm() - 1.0) > 1e-9)
            throw DqcError("unitary_of: column lost norm (IR bug)");
        for (int y = 0; y < dim; ++y) u(y, x) = st.sv.amps[static_cast<size_t>(y)];
    }
    // full Gram check only at small dims, column norms already verified
    if (dim <= 256 && !u.is_unitary(1e-9))
        throw DqcError("unitary_of: result is not unitary (IR bug)");
    return u;
}

}  // namespace dqc
