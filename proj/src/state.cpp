#include "foq/state.hpp"

#include <cmath>
#include <limits>
#include "json.hpp"
#include <stdexcept>

namespace foq {

namespace {

void check_width(int n) {
    if (n < 0 || n > kMaxDenseQubits) {
        throw std::invalid_argument("state width " + std::to_string(n) + " outside [0, " +
                                    std::to_string(kMaxDenseQubits) + "]");
    }
}

}  // namespace

QuantumState::QuantumState(int n) : n_(n) {
    check_width(n);
    amps_.assign(std::size_t{1} << n, Complex{0, 0});
    amps_[0] = 1.0;
}

QuantumState::QuantumState(int n, std::vector<Complex> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_width(n);
    if (amps_.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("expected " + std::to_string(std::size_t{1} << n) + " amplitudes, got " +
                                    std::to_string(amps_.size()));
    }
}

QuantumState QuantumState::basis(const std::string& bits) {
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw std::invalid_argument("basis label must be a bitstring: '" + bits + "'");
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return basis(static_cast<int>(bits.size()), index);
}

QuantumState QuantumState::basis(int n, std::uint64_t index) {
    QuantumState s(n);
    s.amps_[0] = 0.0;
    s.amps_.at(index) = 1.0;
    return s;
}

QuantumState QuantumState::random(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    QuantumState s(n);
    for (auto& a : s.amps_) a = Complex{g(rng), g(rng)};
    s.normalize();
    return s;
}

double QuantumState::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

void QuantumState::normalize() {
    const double nrm = norm();
    if (nrm == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    for (auto& a : amps_) a /= nrm;
}

void QuantumState::apply(const Mat2& m, int qubit) {
    if (qubit < 1 || qubit > n_) throw std::out_of_range("qubit " + std::to_string(qubit) + " out of range");
    const std::uint64_t mask = qubit_mask(n_, qubit);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const Complex a0 = amps_[i], a1 = amps_[i | mask];
        amps_[i] = m[0][0] * a0 + m[0][1] * a1;
        amps_[i | mask] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void QuantumState::project(int qubit, int k) {
    const std::uint64_t mask = qubit_mask(n_, qubit);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (((i & mask) != 0) != (k == 1)) amps_[i] = 0.0;
    }
}

QuantumState QuantumState::pad(int m) const {
    std::vector<Complex> out(std::size_t{1} << (n_ + m), Complex{0, 0});
    for (std::uint64_t i = 0; i < amps_.size(); ++i) out[i << m] = amps_[i];
    return QuantumState(n_ + m, std::move(out));
}

QuantumState QuantumState::xi(int m) const {
    if (m > n_) throw std::invalid_argument("cannot project onto more qubits than present");
    const int drop = n_ - m;
    std::vector<Complex> out(std::size_t{1} << m, Complex{0, 0});
    for (std::uint64_t i = 0; i < amps_.size(); ++i) out[i >> drop] += amps_[i];
    return QuantumState(m, std::move(out));
}

double QuantumState::residue(int m) const {
    const std::uint64_t low = (std::uint64_t{1} << (n_ - m)) - 1;
    double acc = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (i & low) acc += std::norm(amps_[i]);
    }
    return acc;
}

std::string QuantumState::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& a : amps_) arr.push_back({a.real(), a.imag()});
    j["amplitudes"] = std::move(arr);
    return j.dump();
}

QuantumState QuantumState::from_json(const std::string& text, double tolerance) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("state JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || !j.contains("amplitudes") ||
        !j["amplitudes"].is_array()) {
        throw std::invalid_argument("state JSON must be {\"n\": int, \"amplitudes\": [[re, im], ...]}");
    }
    const int n = j["n"].get<int>();
    std::vector<Complex> amps;
    for (const auto& a : j["amplitudes"]) {
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw std::invalid_argument("each amplitude must be a [re, im] pair");
        }
        amps.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
    QuantumState s(n, std::move(amps));
    if (std::abs(s.norm() - 1.0) > tolerance) {
        throw std::invalid_argument("state is not normalized (norm " + std::to_string(s.norm()) + ")");
    }
    return s;
}

QuantumState operator+(const QuantumState& a, const QuantumState& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("state width mismatch");
    QuantumState out = a;
    for (std::size_t i = 0; i < out.amps_.size(); ++i) out.amps_[i] += b.amps_[i];
    return out;
}

QuantumState operator*(Complex c, const QuantumState& a) {
    QuantumState out = a;
    for (auto& x : out.amps_) x *= c;
    return out;
}

double max_deviation(const QuantumState& a, const QuantumState& b) {
    if (a.num_qubits() != b.num_qubits()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace foq
