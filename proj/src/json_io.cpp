#include "dqc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dqc {

using json = nlohmann::ordered_json;

namespace {

json u1q_to_json(const U1q& u) {
    json j;
    j["kind"] = ukind_name(u.kind);
    if (u.kind == UKind::Rz || u.kind == UKind::Rx || u.kind == UKind::P)
        j["theta"] = u.theta;
    if (u.kind == UKind::Custom) {
        json m = json::array();
        for (const auto& v : u.mat) m.push_back(json::array({v.real(), v.imag()}));
        j["matrix"] = m;
    }
    return j;
}

json gate_to_json(const Gate& g) {
    json j;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Local1Q>) {
                j["kind"] = "local1q";
                j["unitary"] = u1q_to_json(x.u);
                j["qubit"] = x.qubit;
            } else if constexpr (std::is_same_v<T, Controlled>) {
                j["kind"] = "controlled";
                j["unitary"] = u1q_to_json(x.u);
                j["control"] = x.control;
                j["target"] = x.target;
            } else if constexpr (std::is_same_v<T, FanOut>) {
                j["kind"] = "fanout";
                j["control"] = x.control;
                json ts = json::array();
                for (const auto& t : x.targets)
                    ts.push_back({{"qubit", t.qubit}, {"unitary", u1q_to_json(t.u)}});
                j["targets"] = ts;
            } else if constexpr (std::is_same_v<T, BellPrep>) {
                j["kind"] = "bell_prep";
                j["a"] = x.a;
                j["b"] = x.b;
            } else if constexpr (std::is_same_v<T, GhzPrep>) {
                j["kind"] = "ghz_prep";
                j["qubits"] = x.qubits;
                j["mode"] = x.mode == GhzMode::OneShot ? "one_shot" : "tree";
            } else if constexpr (std::is_same_v<T, Measure>) {
                j["kind"] = "measure";
                j["qubit"] = x.qubit;
                j["cbit"] = x.cbit;
                j["basis"] = "z";
            } else if constexpr (std::is_same_v<T, Conditioned>) {
                j["kind"] = "conditioned";
                j["cond"] = {{"xor_bits", x.cond.bits}};
                j["unitary"] = u1q_to_json(x.u);
                j["qubit"] = x.qubit;
            } else {
                j["kind"] = "barrier";
                j["note"] = x.note;
            }
        },
        g);
    return j;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw DqcError("circuit json: " + where + ": " + what);
}

int get_int(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) fail(where, std::string("missing field '") + field + "'");
    const auto& v = j.at(field);
    if (!v.is_number_integer()) fail(where + "." + field, "expected integer");
    return v.get<int>();
}

double get_angle(const json& j, const std::string& where) {
    if (!j.contains("theta")) fail(where, "missing field 'theta'");
    const auto& v = j.at("theta");
    if (!v.is_number()) fail(where + ".theta", "expected number");
    double t = v.get<double>();
    if (!std::isfinite(t)) fail(where + ".theta", "non-finite angle");
    return t;
}

U1q u1q_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) fail(where, "expected unitary object");
    const std::string k = j.at("kind").get<std::string>();
    if (k == "h") return U1q::h();
    if (k == "x") return U1q::x();
    if (k == "y") return U1q::y();
    if (k == "z") return U1q::z();
    if (k == "s") return U1q::s();
    if (k == "sdg") return U1q::sdg();
    if (k == "t") return U1q::t();
    if (k == "rz") return U1q::rz(get_angle(j, where));
    if (k == "rx") return U1q::rx(get_angle(j, where));
    if (k == "p") return U1q::p(get_angle(j, where));
    if (k == "custom") {
        if (!j.contains("matrix") || !j.at("matrix").is_array() || j.at("matrix").size() != 4)
            fail(where + ".matrix", "expected 4 [re,im] entries");
        std::array<cplx, 4> m{};
        for (int i = 0; i < 4; ++i) {
            const auto& e = j.at("matrix").at(i);
            if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number())
                fail(where + ".matrix", "entry must be [re, im]");
            m[i] = {e.at(0).get<double>(), e.at(1).get<double>()};
            if (!std::isfinite(m[i].real()) || !std::isfinite(m[i].imag()))
                fail(where + ".matrix", "non-finite entry");
        }
        return U1q::custom(m);
    }
    fail(where + ".kind", "unknown unitary kind '" + k + "'");
}

Gate gate_from_json(const json& j, size_t idx) {
    const std::string where = "gates[" + std::to_string(idx) + "]";
    if (!j.is_object() || !j.contains("kind")) fail(where, "expected gate object with 'kind'");
    const std::string k = j.at("kind").get<std::string>();
    if (k == "local1q")
        return Local1Q{u1q_from_json(j.at("unitary"), where + ".unitary"),
                       get_int(j, "qubit", where)};
    if (k == "controlled")
        return Controlled{u1q_from_json(j.at("unitary"), where + ".unitary"),
                          get_int(j, "control", where), get_int(j, "target", where)};
    if (k == "fanout") {
        FanOut fo;
        fo.control = get_int(j, "control", where);
        if (!j.contains("targets") || !j.at("targets").is_array())
            fail(where, "missing 'targets' array");
        for (size_t i = 0; i < j.at("targets").size(); ++i) {
            const auto& t = j.at("targets").at(i);
            const std::string tw = where + ".targets[" + std::to_string(i) + "]";
            fo.targets.push_back(
                {get_int(t, "qubit", tw), u1q_from_json(t.at("unitary"), tw + ".unitary")});
        }
        return fo;
    }
    if (k == "bell_prep") return BellPrep{get_int(j, "a", where), get_int(j, "b", where)};
    if (k == "ghz_prep") {
        GhzPrep gp;
        if (!j.contains("qubits") || !j.at("qubits").is_array())
            fail(where, "missing 'qubits' array");
        for (const auto& q : j.at("qubits")) {
            if (!q.is_number_integer()) fail(where + ".qubits", "expected integer");
            gp.qubits.push_back(q.get<int>());
        }
        const std::string mode = j.value("mode", "one_shot");
        if (mode == "one_shot")
            gp.mode = GhzMode::OneShot;
        else if (mode == "tree")
            gp.mode = GhzMode::Tree;
        else
            fail(where + ".mode", "unknown mode '" + mode + "'");
        return gp;
    }
    if (k == "measure") {
        if (j.value("basis", "z") != "z") fail(where + ".basis", "only 'z' supported");
        return Measure{get_int(j, "qubit", where), get_int(j, "cbit", where)};
    }
    if (k == "conditioned") {
        Conditioned cg;
        if (!j.contains("cond") || !j.at("cond").contains("xor_bits"))
            fail(where, "missing 'cond.xor_bits'");
        for (const auto& b : j.at("cond").at("xor_bits")) {
            if (!b.is_number_integer()) fail(where + ".cond.xor_bits", "expected integer");
            cg.cond.bits.push_back(b.get<int>());
        }
        cg.u = u1q_from_json(j.at("unitary"), where + ".unitary");
        cg.qubit = get_int(j, "qubit", where);
        return cg;
    }
    if (k == "barrier") return Barrier{j.value("note", "")};
    fail(where + ".kind", "unknown gate kind '" + k + "'");
}

QubitRole role_from(const std::string& s, const std::string& where) {
    if (s == "computation") return QubitRole::Computation;
    if (s == "communication") return QubitRole::Communication;
    if (s == "ancilla") return QubitRole::Ancilla;
    fail(where, "unknown role '" + s + "'");
}

}  // namespace

std::string serialize(const Circuit& c) {
    json j;
    j["name"] = c.name;
    json qs = json::array();
    for (const auto& q : c.qubits)
        qs.push_back({{"id", q.id},
                      {"label", q.label},
                      {"node", q.node},
                      {"role", role_name(q.role)}});
    j["qubits"] = qs;
    json cs = json::array();
    for (const auto& b : c.cbits) cs.push_back({{"id", b.id}, {"label", b.label}});
    j["cbits"] = cs;
    json gs = json::array();
    for (const auto& g : c.gates) gs.push_back(gate_to_json(g));
    j["gates"] = gs;
    return j.dump(2) + "\n";
}

Circuit deserialize(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DqcError(std::string("circuit json: parse error: ") + e.what());
    }
    try {
    Circuit c;
    c.name = j.value("name", "");
    if (!j.contains("qubits") || !j.at("qubits").is_array())
        fail("$", "missing 'qubits' array");
    for (size_t i = 0; i < j.at("qubits").size(); ++i) {
        const auto& q = j.at("qubits").at(i);
        const std::string where = "qubits[" + std::to_string(i) + "]";
        Qubit qb;
        qb.id = get_int(q, "id", where);
        qb.label = q.value("label", "");
        qb.node = get_int(q, "node", where);
        qb.role = role_from(q.value("role", "computation"), where + ".role");
        c.qubits.push_back(qb);
    }
    if (j.contains("cbits")) {
        for (size_t i = 0; i < j.at("cbits").size(); ++i) {
            const auto& b = j.at("cbits").at(i);
            const std::string where = "cbits[" + std::to_string(i) + "]";
            c.cbits.push_back({get_int(b, "id", where), b.value("label", "")});
        }
    }
    if (j.contains("gates")) {
        for (size_t i = 0; i < j.at("gates").size(); ++i)
            c.gates.push_back(gate_from_json(j.at("gates").at(i), i));
    }
    // dangling references surface as validation violations
    for (const auto& v : validate(c)) {
        if (v.rule == "UnknownQubit" || v.rule == "UnknownCbit")
            fail("gates[" + std::to_string(v.gate_index) + "]", v.rule + ": " + v.detail);
    }
    return c;
    } catch (const json::exception& e) {
        throw DqcError(std::string("circuit json: malformed document: ") + e.what());
    }
}

Circuit load_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DqcError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return deserialize(ss.str());
}

void save_circuit(const Circuit& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DqcError("cannot write " + path);
    out << serialize(c);
}

}  // namespace dqc
