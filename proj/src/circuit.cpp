#include "foq/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace foq {

std::optional<int> ControlStructure::get(int wire) const {
    auto it = bits_.find(wire);
    if (it == bits_.end()) return std::nullopt;
    return it->second;
}

std::optional<ControlStructure> ControlStructure::extend(int wire, int bit) const {
    if (bit != 0 && bit != 1) throw std::invalid_argument("control bit must be 0 or 1");
    auto it = bits_.find(wire);
    if (it != bits_.end() && it->second != bit) return std::nullopt;
    ControlStructure out = *this;
    out.bits_[wire] = bit;
    return out;
}

ControlStructure ControlStructure::with(int wire, int bit) const {
    auto r = extend(wire, bit);
    if (!r) {
        throw std::logic_error("control structure " + to_string() + " already binds wire " + std::to_string(wire));
    }
    return *r;
}

bool ControlStructure::satisfied(std::uint64_t index, int wires) const {
    for (const auto& [w, b] : bits_) {
        if (((index >> (wires - w)) & 1U) != static_cast<std::uint64_t>(b)) return false;
    }
    return true;
}

std::string ControlStructure::to_string() const {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [w, b] : bits_) {
        if (!first) out << ", ";
        first = false;
        out << w << ":" << b;
    }
    out << "}";
    return out.str();
}

bool orthogonal(const ControlStructure& a, const ControlStructure& b) {
    for (const auto& [w, bit] : a.bits()) {
        auto other = b.get(w);
        if (other && *other != bit) return true;
    }
    return false;
}

bool operator==(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.cs == b.cs && a.targets == b.targets && a.label == b.label &&
           (a.kind != Gate::Kind::CU || a.matrix == b.matrix);
}

namespace {

void require_free(const ControlStructure& cs, int wire) {
    if (wire < 1) throw std::invalid_argument("wire indices are 1-based");
    if (cs.binds(wire)) {
        throw std::invalid_argument("wire " + std::to_string(wire) + " is both a target and a control");
    }
}

}  // namespace

Gate controlled_gate(const Mat2& u, const ControlStructure& cs, int target, std::string label) {
    require_free(cs, target);
    Gate g;
    g.kind = Gate::Kind::CU;
    g.cs = cs;
    g.targets = {target};
    g.matrix = u;
    g.label = std::move(label);
    return g;
}

Gate controlled_not(const ControlStructure& cs, int target) {
    require_free(cs, target);
    Gate g;
    g.kind = Gate::Kind::CNot;
    g.cs = cs;
    g.targets = {target};
    return g;
}

Gate controlled_swap(const ControlStructure& cs, const std::vector<int>& l1, const std::vector<int>& l2) {
    if (l1.size() != l2.size() || l1.empty()) throw std::invalid_argument("swap lists must have equal nonzero length");
    std::set<int> seen;
    for (int w : l1) {
        require_free(cs, w);
        if (!seen.insert(w).second) throw std::invalid_argument("swap lists overlap");
    }
    for (int w : l2) {
        require_free(cs, w);
        if (!seen.insert(w).second) throw std::invalid_argument("swap lists overlap");
    }
    Gate g;
    g.kind = Gate::Kind::CSwap;
    g.cs = cs;
    g.targets = l1;
    g.targets.insert(g.targets.end(), l2.begin(), l2.end());
    return g;
}

std::vector<Gate> route(const ControlStructure& cs, const std::vector<int>& from, const std::vector<int>& to) {
    if (from.size() != to.size()) throw std::invalid_argument("route lists must have equal length");
    if (from == to) return {};
    const std::set<int> from_set(from.begin(), from.end()), to_set(to.begin(), to.end());
    bool disjoint = true;
    for (int w : from) disjoint = disjoint && !to_set.count(w);
    if (disjoint) return {controlled_swap(cs, from, to)};

    // Content of wire w must end on dest[w]. Wires of `to` not fed by `from`
    // are sent to the wires of `from` that are left vacant, in order.
    std::map<int, int> dest;
    for (std::size_t i = 0; i < from.size(); ++i) dest[from[i]] = to[i];
    std::vector<int> vacated, unfed;
    for (int w : from) {
        if (!to_set.count(w)) vacated.push_back(w);
    }
    for (int w : to) {
        if (!from_set.count(w)) unfed.push_back(w);
    }
    for (std::size_t i = 0; i < unfed.size(); ++i) dest[unfed[i]] = vacated[i];

    std::vector<Gate> out;
    std::set<int> done;
    for (const auto& [start, _] : dest) {
        if (done.count(start)) continue;
        std::vector<int> cycle{start};
        done.insert(start);
        for (int w = dest[start]; w != start; w = dest[w]) {
            cycle.push_back(w);
            done.insert(w);
        }
        for (std::size_t i = 1; i < cycle.size(); ++i) out.push_back(controlled_swap(cs, {cycle[0]}, {cycle[i]}));
    }
    return out;
}

void Circuit::add(Gate g) {
    for (const auto& [w, b] : g.cs.bits()) {
        if (w < 1 || w > wires()) throw std::out_of_range("control wire " + std::to_string(w) + " out of range");
    }
    for (int w : g.targets) {
        if (w < 1 || w > wires()) throw std::out_of_range("target wire " + std::to_string(w) + " out of range");
    }
    gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
    if (other.n_ != n_) throw std::invalid_argument("circuit input widths differ");
    ancillas_ = std::max(ancillas_, other.ancillas_);
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
}

void Circuit::prepend(const Circuit& other) {
    if (other.n_ != n_) throw std::invalid_argument("circuit input widths differ");
    ancillas_ = std::max(ancillas_, other.ancillas_);
    gates_.insert(gates_.begin(), other.gates_.begin(), other.gates_.end());
}

std::size_t Circuit::gate_count() const {
    std::size_t n = 0;
    for (const auto& g : gates_) n += g.cost();
    return n;
}

std::size_t Circuit::size() const { return gate_count() + static_cast<std::size_t>(wires()); }

bool operator==(const Circuit& a, const Circuit& b) {
    return a.n_ == b.n_ && a.ancillas_ == b.ancillas_ && a.gates_ == b.gates_;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const char* kind_name(Gate::Kind k) {
    switch (k) {
        case Gate::Kind::CU:
            return "cu";
        case Gate::Kind::CNot:
            return "cnot";
        case Gate::Kind::CSwap:
            return "cswap";
    }
    return "?";
}

[[noreturn]] void schema_error(const std::string& msg) { throw std::invalid_argument("circuit JSON: " + msg); }

}  // namespace

std::string Circuit::to_json() const {
    using ojson = nlohmann::ordered_json;
    ojson j;
    j["n"] = n_;
    j["ancillas"] = ancillas_;
    j["gates"] = ojson::array();
    for (const auto& g : gates_) {
        ojson jg;
        jg["kind"] = kind_name(g.kind);
        jg["controls"] = ojson::array();
        for (const auto& [w, b] : g.cs.bits()) jg["controls"].push_back({w, b});
        jg["targets"] = g.targets;
        if (g.kind == Gate::Kind::CU) {
            if (!g.label.empty()) jg["label"] = g.label;
            ojson m = ojson::array();
            for (const auto& row : g.matrix) {
                ojson r = ojson::array();
                for (const auto& z : row) r.push_back({z.real(), z.imag()});
                m.push_back(std::move(r));
            }
            jg["matrix"] = std::move(m);
        }
        j["gates"].push_back(std::move(jg));
    }
    return j.dump();
}

Circuit Circuit::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        schema_error(e.what());
    }
    if (!j.is_object()) schema_error("top level must be an object");
    for (const char* key : {"n", "ancillas"}) {
        if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
            schema_error(std::string("'") + key + "' must be a non-negative integer");
        }
    }
    if (!j.contains("gates") || !j["gates"].is_array()) schema_error("'gates' must be an array");
    Circuit c(j["n"].get<int>());
    c.ancillas_ = j["ancillas"].get<int>();
    for (const auto& jg : j["gates"]) {
        if (!jg.is_object() || !jg.contains("kind") || !jg["kind"].is_string()) schema_error("gate needs a 'kind'");
        const std::string kind = jg["kind"].get<std::string>();
        ControlStructure cs;
        if (!jg.contains("controls") || !jg["controls"].is_array()) schema_error("gate needs 'controls'");
        int last = 0;
        for (const auto& ctl : jg["controls"]) {
            if (!ctl.is_array() || ctl.size() != 2 || !ctl[0].is_number_integer() || !ctl[1].is_number_integer()) {
                schema_error("controls must be [wire, bit] pairs");
            }
            const int w = ctl[0].get<int>(), b = ctl[1].get<int>();
            if (b != 0 && b != 1) schema_error("control bits must be 0 or 1");
            if (w <= last) schema_error("controls must be sorted by wire without repeats");
            last = w;
            cs = cs.with(w, b);
        }
        if (!jg.contains("targets") || !jg["targets"].is_array()) schema_error("gate needs 'targets'");
        std::vector<int> targets;
        for (const auto& t : jg["targets"]) {
            if (!t.is_number_integer()) schema_error("targets must be integers");
            targets.push_back(t.get<int>());
        }
        try {
            if (kind == "cu") {
                if (targets.size() != 1) schema_error("cu takes one target");
                if (!jg.contains("matrix") || !jg["matrix"].is_array() || jg["matrix"].size() != 2) {
                    schema_error("cu needs a 2x2 'matrix'");
                }
                Mat2 m{};
                for (std::size_t r = 0; r < 2; ++r) {
                    const auto& row = jg["matrix"][r];
                    if (!row.is_array() || row.size() != 2) schema_error("matrix rows must have two entries");
                    for (std::size_t col = 0; col < 2; ++col) {
                        const auto& z = row[col];
                        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                            schema_error("matrix entries must be [re, im]");
                        }
                        m[r][col] = Complex{z[0].get<double>(), z[1].get<double>()};
                    }
                }
                std::string label;
                if (jg.contains("label")) {
                    if (!jg["label"].is_string()) schema_error("label must be a string");
                    label = jg["label"].get<std::string>();
                }
                c.add(controlled_gate(m, cs, targets[0], label));
            } else if (kind == "cnot") {
                if (targets.size() != 1) schema_error("cnot takes one target");
                c.add(controlled_not(cs, targets[0]));
            } else if (kind == "cswap") {
                if (targets.empty() || targets.size() % 2) schema_error("cswap takes an even number of targets");
                const auto half = static_cast<std::ptrdiff_t>(targets.size() / 2);
                c.add(controlled_swap(cs, {targets.begin(), targets.begin() + half},
                                      {targets.begin() + half, targets.end()}));
            } else {
                schema_error("unknown gate kind '" + kind + "'");
            }
        } catch (const std::out_of_range& e) {
            schema_error(e.what());
        } catch (const std::logic_error& e) {
            if (std::string(e.what()).rfind("circuit JSON", 0) == 0) throw;
            schema_error(e.what());
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

constexpr double kPrune = 1e-15;

void apply_gate(const Gate& g, SparseState& st, int wires) {
    auto mask = [&](int w) { return std::uint64_t{1} << (wires - w); };
    SparseState out;
    switch (g.kind) {
        case Gate::Kind::CU: {
            const std::uint64_t m = mask(g.targets[0]);
            for (const auto& [i, a] : st) {
                if (!g.cs.satisfied(i, wires)) {
                    out[i] += a;
                    continue;
                }
                const int b = (i & m) ? 1 : 0;
                const Complex c0 = g.matrix[0][static_cast<std::size_t>(b)] * a;
                const Complex c1 = g.matrix[1][static_cast<std::size_t>(b)] * a;
                if (g.matrix[0][static_cast<std::size_t>(b)] != Complex{0, 0}) out[i & ~m] += c0;
                if (g.matrix[1][static_cast<std::size_t>(b)] != Complex{0, 0}) out[i | m] += c1;
            }
            break;
        }
        case Gate::Kind::CNot: {
            const std::uint64_t m = mask(g.targets[0]);
            for (const auto& [i, a] : st) out[g.cs.satisfied(i, wires) ? (i ^ m) : i] += a;
            break;
        }
        case Gate::Kind::CSwap: {
            const std::size_t half = g.targets.size() / 2;
            for (const auto& [i, a] : st) {
                std::uint64_t j = i;
                if (g.cs.satisfied(i, wires)) {
                    for (std::size_t k = 0; k < half; ++k) {
                        const std::uint64_t m1 = mask(g.targets[k]), m2 = mask(g.targets[half + k]);
                        const bool b1 = i & m1, b2 = i & m2;
                        j = (j & ~(m1 | m2)) | (b1 ? m2 : 0) | (b2 ? m1 : 0);
                    }
                }
                out[j] += a;
            }
            break;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = std::abs(it->second) < kPrune ? out.erase(it) : std::next(it);
    }
    st = std::move(out);
}

}  // namespace

SparseState simulate_sparse(const Circuit& c, const QuantumState& psi) {
    if (psi.num_qubits() != c.inputs()) {
        throw std::invalid_argument("state has " + std::to_string(psi.num_qubits()) + " qubits, circuit expects " +
                                    std::to_string(c.inputs()));
    }
    if (c.wires() > 62) throw std::invalid_argument("circuit too wide to simulate");
    SparseState st;
    const int shift = c.ancillas();
    for (std::uint64_t i = 0; i < psi.dim(); ++i) {
        if (psi[i] != Complex{0, 0}) st[i << shift] = psi[i];
    }
    for (const auto& g : c.gates()) apply_gate(g, st, c.wires());
    return st;
}

QuantumState simulate_circuit(const Circuit& c, const QuantumState& psi) {
    const SparseState st = simulate_sparse(c, psi);
    QuantumState out(c.wires());
    out[0] = 0.0;
    for (const auto& [i, a] : st) out[i] = a;
    return out;
}

ProjectedRun simulate_projected(const Circuit& c, const QuantumState& psi) {
    const SparseState st = simulate_sparse(c, psi);
    ProjectedRun r;
    r.output = QuantumState(c.inputs());
    r.output[0] = 0.0;
    const int shift = c.ancillas();
    const std::uint64_t low = (std::uint64_t{1} << shift) - 1;
    for (const auto& [i, a] : st) {
        r.output[i >> shift] += a;
        if (i & low) r.residue += std::norm(a);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Merging

Circuit merge_gates(int n, const std::vector<std::pair<ControlStructure, std::vector<int>>>& instances,
                    const Circuit& templ) {
    const std::size_t k = instances.size();
    if (k == 0) throw std::invalid_argument("nothing to merge");
    for (std::size_t i = 0; i < k; ++i) {
        if (static_cast<int>(instances[i].second.size()) != templ.inputs()) {
            throw std::invalid_argument("instance wire list does not match the template width");
        }
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!orthogonal(instances[i].first, instances[j].first)) {
                throw std::invalid_argument("control structures " + instances[i].first.to_string() + " and " +
                                            instances[j].first.to_string() + " are not orthogonal");
            }
        }
    }
    if (templ.ancillas() != 0) throw std::invalid_argument("template must not use ancillas");
    Circuit c(n);
    std::vector<int> anc(k);
    for (auto& a : anc) a = c.new_ancilla();
    const int ak = anc.back();
    const auto& lk = instances.back().second;

    std::vector<Gate> c1;
    for (std::size_t i = 0; i < k; ++i) c1.push_back(controlled_not(instances[i].first, anc[i]));
    for (std::size_t i = 0; i + 1 < k; ++i) c1.push_back(controlled_not(ControlStructure{}.with(anc[i], 1), ak));
    for (std::size_t i = 0; i + 1 < k; ++i) {
        auto moves = route(ControlStructure{}.with(anc[i], 1), instances[i].second, lk);
        c1.insert(c1.end(), moves.begin(), moves.end());
    }
    for (const auto& g : c1) c.add(g);

    for (const Gate& tg : templ.gates()) {
        Gate g = tg;
        ControlStructure cs;
        for (const auto& [w, b] : tg.cs.bits()) cs = cs.with(lk[static_cast<std::size_t>(w - 1)], b);
        g.cs = cs.with(ak, 1);
        for (auto& t : g.targets) t = lk[static_cast<std::size_t>(t - 1)];
        c.add(std::move(g));
    }
    for (auto it = c1.rbegin(); it != c1.rend(); ++it) c.add(*it);
    return c;
}

Circuit merge_gates(int n, const std::vector<std::pair<ControlStructure, int>>& instances, const Mat2& u,
                    const std::string& label) {
    Circuit templ(1);
    templ.add(controlled_gate(u, {}, 1, label));
    std::vector<std::pair<ControlStructure, std::vector<int>>> lists;
    for (const auto& [cs, w] : instances) lists.emplace_back(cs, std::vector<int>{w});
    return merge_gates(n, lists, templ);
}

}  // namespace foq
