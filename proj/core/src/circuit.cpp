#include "concord/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace concord {

using json = nlohmann::ordered_json;

ProductState Circuit::product_state() const {
    if (init_p0.size() != n)
        throw CircuitError("init has " + std::to_string(init_p0.size()) + " rows for " +
                           std::to_string(n) + " qubits");
    std::vector<QubitProb> probs;
    probs.reserve(n);
    for (const Rat& p0 : init_p0) probs.push_back({p0, Rat(1) - p0});
    try {
        return ProductState::canonicalize(probs);
    } catch (const std::invalid_argument& e) {
        throw CircuitError(e.what());
    }
}

namespace {

std::int64_t get_int(const json& j, const char* what) {
    if (!j.is_number_integer())
        throw CircuitError(std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

cplx get_entry(const json& j, std::size_t gate_idx) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw CircuitError("gate " + std::to_string(gate_idx) +
                           ": matrix entries must be [re, im] pairs");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

// reindex a 4x4 matrix when the listed qubit order (a, b) is swapped
Mat4 swap_conjugate(const Mat4& m) {
    auto s = [](int i) { return (i & 1) << 1 | (i >> 1); };
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = m.at(s(i), s(j));
    return r;
}

Mat2 named_gate2(const std::string& name, std::size_t gate_idx) {
    if (name == "X") return gates::X();
    if (name == "H") return gates::H();
    throw CircuitError("gate " + std::to_string(gate_idx) + ": unknown one-qubit gate '" +
                       name + "'");
}

Mat4 named_gate4(const std::string& name, std::size_t gate_idx) {
    if (name == "SWAP") return gates::SWAP();
    if (name == "CNOT") return gates::CNOT();
    if (name == "CZ") return gates::CZ();
    throw CircuitError("gate " + std::to_string(gate_idx) + ": unknown two-qubit gate '" +
                       name + "'");
}

}  // namespace

Circuit parse_circuit(const std::string& text, double tol_unitary) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw CircuitError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw CircuitError("top level must be an object");
    if (!doc.contains("qubits")) throw CircuitError("missing 'qubits'");
    std::int64_t n = get_int(doc["qubits"], "'qubits'");
    if (n < 1) throw CircuitError("'qubits' must be >= 1");

    Circuit c;
    c.n = static_cast<std::size_t>(n);

    if (!doc.contains("init") || !doc["init"].is_array() ||
        doc["init"].size() != c.n)
        throw CircuitError("'init' must be an array of " + std::to_string(c.n) +
                           " [num, den] pairs");
    for (std::size_t k = 0; k < c.n; ++k) {
        const json& row = doc["init"][k];
        if (!row.is_array() || row.size() != 2)
            throw CircuitError("init row " + std::to_string(k) + " must be [num, den]");
        std::int64_t num = get_int(row[0], "init numerator");
        std::int64_t den = get_int(row[1], "init denominator");
        if (den <= 0)
            throw CircuitError("init row " + std::to_string(k) +
                               ": denominator must be positive");
        Rat p0 = make_rat(num, den);
        if (p0 < 0 || p0 > 1)
            throw CircuitError("init row " + std::to_string(k) +
                               ": probability outside [0, 1]");
        c.init_p0.push_back(std::move(p0));
    }

    if (doc.contains("gates")) {
        if (!doc["gates"].is_array()) throw CircuitError("'gates' must be an array");
        for (std::size_t t = 0; t < doc["gates"].size(); ++t) {
            const json& g = doc["gates"][t];
            if (!g.is_object() || !g.contains("q") || !g.contains("m"))
                throw CircuitError("gate " + std::to_string(t) +
                                   " must be an object with 'q' and 'm'");
            Gate gate;
            const json& q = g["q"];
            if (q.is_number_integer()) {
                gate.two = false;
                std::int64_t a = q.get<std::int64_t>();
                if (a < 0 || a >= n)
                    throw CircuitError("gate " + std::to_string(t) + ": target out of range");
                gate.k = static_cast<std::size_t>(a);
            } else if (q.is_array() && q.size() == 2) {
                gate.two = true;
                std::int64_t a = get_int(q[0], "gate target");
                std::int64_t b = get_int(q[1], "gate target");
                if (a < 0 || a >= n || b < 0 || b >= n)
                    throw CircuitError("gate " + std::to_string(t) + ": target out of range");
                if (a == b)
                    throw CircuitError("gate " + std::to_string(t) + ": duplicate targets");
                gate.k = static_cast<std::size_t>(a);
                gate.l = static_cast<std::size_t>(b);
            } else {
                throw CircuitError("gate " + std::to_string(t) +
                                   ": 'q' must be an index or a pair");
            }

            const json& m = g["m"];
            if (m.is_string()) {
                if (gate.two)
                    gate.m4 = named_gate4(m.get<std::string>(), t);
                else
                    gate.m2 = named_gate2(m.get<std::string>(), t);
            } else if (m.is_array()) {
                std::size_t want = gate.two ? 16 : 4;
                if (m.size() != want)
                    throw CircuitError("gate " + std::to_string(t) + ": matrix must have " +
                                       std::to_string(want) + " entries");
                if (gate.two)
                    for (std::size_t i = 0; i < 16; ++i) gate.m4.a[i] = get_entry(m[i], t);
                else
                    for (std::size_t i = 0; i < 4; ++i) gate.m2.a[i] = get_entry(m[i], t);
            } else {
                throw CircuitError("gate " + std::to_string(t) +
                                   ": 'm' must be a name or a matrix");
            }

            if (gate.two && gate.k > gate.l) {
                std::swap(gate.k, gate.l);
                gate.m4 = swap_conjugate(gate.m4);
            }

            double defect = gate.two ? unitarity_defect(gate.m4) : unitarity_defect(gate.m2);
            if (defect > tol_unitary)
                throw CircuitError("gate " + std::to_string(t) +
                                   " is not unitary (defect " + std::to_string(defect) + ")");
            c.gates.push_back(std::move(gate));
        }
    }

    if (doc.contains("measure")) {
        if (!doc["measure"].is_array()) throw CircuitError("'measure' must be an array");
        std::set<std::size_t> seen;
        for (const json& q : doc["measure"]) {
            std::int64_t a = get_int(q, "measured qubit");
            if (a < 0 || a >= n) throw CircuitError("measured qubit out of range");
            seen.insert(static_cast<std::size_t>(a));
        }
        c.measured.assign(seen.begin(), seen.end());
    } else {
        c.measured.resize(c.n);
        for (std::size_t k = 0; k < c.n; ++k) c.measured[k] = k;
    }
    return c;
}

std::string serialize_circuit(const Circuit& c) {
    json doc;
    doc["qubits"] = c.n;
    json init = json::array();
    for (const Rat& p : c.init_p0) {
        if (!p.get_num().fits_slong_p() || !p.get_den().fits_slong_p())
            throw CircuitError("init probability does not fit in int64");
        init.push_back({p.get_num().get_si(), p.get_den().get_si()});
    }
    doc["init"] = std::move(init);
    json gates = json::array();
    for (const Gate& g : c.gates) {
        json jm = json::array();
        if (g.two)
            for (const cplx& x : g.m4.a) jm.push_back({x.real(), x.imag()});
        else
            for (const cplx& x : g.m2.a) jm.push_back({x.real(), x.imag()});
        json jg;
        if (g.two)
            jg["q"] = {g.k, g.l};
        else
            jg["q"] = g.k;
        jg["m"] = std::move(jm);
        gates.push_back(std::move(jg));
    }
    doc["gates"] = std::move(gates);
    doc["measure"] = c.measured;
    return doc.dump();
}

}
