#pragma once

// Circuit IR: gates controlled by partial wire->bit maps, over n input wires
// followed by ancilla wires that start in |0>.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foq/state.hpp"
#include "foq/syntax.hpp"

namespace foq {

class ControlStructure {
  public:
    ControlStructure() = default;

    const std::map<int, int>& bits() const { return bits_; }
    bool empty() const { return bits_.empty(); }
    bool binds(int wire) const { return bits_.count(wire) != 0; }
    std::optional<int> get(int wire) const;

    /// cs[wire := bit]; nullopt if wire is already bound to the other value.
    std::optional<ControlStructure> extend(int wire, int bit) const;
    /// Like extend, but throws std::logic_error on conflict.
    ControlStructure with(int wire, int bit) const;

    /// Whether basis index `index` of a `wires`-wire register satisfies cs.
    bool satisfied(std::uint64_t index, int wires) const;

    std::string to_string() const;

    friend bool operator==(const ControlStructure& a, const ControlStructure& b) { return a.bits_ == b.bits_; }
    friend bool operator<(const ControlStructure& a, const ControlStructure& b) { return a.bits_ < b.bits_; }

  private:
    std::map<int, int> bits_;
};

/// True iff some wire is bound to different bits in a and b.
bool orthogonal(const ControlStructure& a, const ControlStructure& b);

struct Gate {
    enum class Kind { CU, CNot, CSwap };
    Kind kind = Kind::CU;
    ControlStructure cs;
    // CU and CNot: one target. CSwap: l1 followed by l2, swapped element-wise.
    std::vector<int> targets;
    Mat2 matrix{};      // CU only
    std::string label;  // CU only, may be empty

    std::size_t cost() const { return kind == Kind::CSwap ? targets.size() / 2 : 1; }
    friend bool operator==(const Gate& a, const Gate& b);
};

Gate controlled_gate(const Mat2& u, const ControlStructure& cs, int target, std::string label = "");
Gate controlled_not(const ControlStructure& cs, int target);
Gate controlled_swap(const ControlStructure& cs, const std::vector<int>& l1, const std::vector<int>& l2);

/// Controlled transpositions that move the content of from[i] to to[i] for
/// every i, for lists that may overlap. Empty when from == to.
std::vector<Gate> route(const ControlStructure& cs, const std::vector<int>& from, const std::vector<int>& to);

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n) : n_(n) {}

    int inputs() const { return n_; }
    int ancillas() const { return ancillas_; }
    int wires() const { return n_ + ancillas_; }
    const std::vector<Gate>& gates() const { return gates_; }

    int new_ancilla() { return n_ + ++ancillas_; }
    void set_ancillas(int a) { ancillas_ = a; }

    /// Appends a gate after checking its wires against the current universe.
    void add(Gate g);
    void append(const Circuit& other);
    void prepend(const Circuit& other);

    /// Gates counted with cswaps weighted by their pair count.
    std::size_t gate_count() const;
    /// gate_count() + wires().
    std::size_t size() const;

    std::string to_json() const;
    static Circuit from_json(const std::string& text);

    friend bool operator==(const Circuit& a, const Circuit& b);

  private:
    int n_ = 0;
    int ancillas_ = 0;
    std::vector<Gate> gates_;
};

/// Sparse amplitude map used for simulation; keys are basis indices over
/// all wires of the circuit.
using SparseState = std::map<std::uint64_t, Complex>;

SparseState simulate_sparse(const Circuit& c, const QuantumState& psi);

/// chi_alpha, the gates, and the full output over n + alpha wires.
QuantumState simulate_circuit(const Circuit& c, const QuantumState& psi);

struct ProjectedRun {
    QuantumState output;  // xi_n of the full output
    double residue = 0;   // probability on nonzero ancilla patterns
};

/// Simulates and projects back onto the input wires without materializing
/// the full dense register.
ProjectedRun simulate_projected(const Circuit& c, const QuantumState& psi);

/// Merges k instances of a template circuit (over wires 1..m), instance i
/// acting on wires l_i under cs_i, into one instance controlled by a fresh
/// ancilla. The cs_i must be pairwise orthogonal.
Circuit merge_gates(int n, const std::vector<std::pair<ControlStructure, std::vector<int>>>& instances,
                    const Circuit& templ);
Circuit merge_gates(int n, const std::vector<std::pair<ControlStructure, int>>& instances, const Mat2& u,
                    const std::string& label = "");

}  // namespace foq
