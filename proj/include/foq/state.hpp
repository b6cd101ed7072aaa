#pragma once

// Dense statevector over n qubits. Basis index bit (n - k) holds qubit k, so
// qubit 1 is the most significant bit of the index.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "foq/syntax.hpp"

namespace foq {

class QuantumState {
  public:
    QuantumState() = default;
    explicit QuantumState(int n);  // |0...0>
    QuantumState(int n, std::vector<Complex> amplitudes);

    static QuantumState basis(const std::string& bits);
    static QuantumState basis(int n, std::uint64_t index);
    static QuantumState random(int n, std::mt19937_64& rng);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    std::vector<Complex>& amplitudes() { return amps_; }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    Complex& operator[](std::size_t i) { return amps_[i]; }

    double norm() const;
    void normalize();

    /// Applies a 2x2 matrix on qubit q (1-based).
    void apply(const Mat2& m, int qubit);

    /// Keeps only the components where qubit q has value k.
    void project(int qubit, int k);

    /// |psi> (x) |0^m>.
    QuantumState pad(int m) const;

    /// Sums out the trailing n - m qubits: sum_w sum_z <wz|psi> |w>.
    QuantumState xi(int m) const;

    /// Probability mass on components whose trailing n - m qubits are not all zero.
    double residue(int m) const;

    std::string to_json() const;
    static QuantumState from_json(const std::string& text, double tolerance = 1e-9);

    friend QuantumState operator+(const QuantumState& a, const QuantumState& b);
    friend QuantumState operator*(Complex c, const QuantumState& a);

  private:
    int n_ = 0;
    std::vector<Complex> amps_{Complex{1, 0}};
};

/// Largest componentwise |a_i - b_i|; infinity on dimension mismatch.
double max_deviation(const QuantumState& a, const QuantumState& b);

/// Bit mask selecting qubit q in a basis index of an n-qubit state.
inline std::uint64_t qubit_mask(int n, int qubit) { return std::uint64_t{1} << (n - qubit); }

constexpr int kMaxDenseQubits = 26;

}  // namespace foq
