#pragma once

// Independent dense-matrix reference computations for the test suites.
// Nothing here calls into the library's evaluators.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;

constexpr double kPi = 3.14159265358979323846;

struct Dense {
    std::size_t dim;
    std::vector<C> m;  // row-major

    explicit Dense(std::size_t d) : dim(d), m(d * d) {}
    C& at(std::size_t r, std::size_t c) { return m[r * dim + c]; }
    C at(std::size_t r, std::size_t c) const { return m[r * dim + c]; }

    static Dense identity(std::size_t d) {
        Dense out(d);
        for (std::size_t i = 0; i < d; ++i) out.at(i, i) = 1;
        return out;
    }
};

inline Dense kron(const Dense& a, const Dense& b) {
    Dense out(a.dim * b.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j)
            for (std::size_t k = 0; k < b.dim; ++k)
                for (std::size_t l = 0; l < b.dim; ++l) out.at(i * b.dim + k, j * b.dim + l) = a.at(i, j) * b.at(k, l);
    return out;
}

inline Dense mul(const Dense& a, const Dense& b) {
    Dense out(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t k = 0; k < a.dim; ++k) {
            const C x = a.at(i, k);
            if (x == C{}) continue;
            for (std::size_t j = 0; j < a.dim; ++j) out.at(i, j) += x * b.at(k, j);
        }
    return out;
}

inline Vec apply(const Dense& a, const Vec& v) {
    Vec out(a.dim);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) out[i] += a.at(i, j) * v[j];
    return out;
}

inline Dense gate2(C a, C b, C c, C d) {
    Dense g(2);
    g.at(0, 0) = a;
    g.at(0, 1) = b;
    g.at(1, 0) = c;
    g.at(1, 1) = d;
    return g;
}

inline Dense x_gate() { return gate2(0, 1, 1, 0); }
inline Dense ry(double t) { return gate2(std::cos(t), -std::sin(t), std::sin(t), std::cos(t)); }
inline Dense phase(double t) { return gate2(1, 0, 0, std::polar(1.0, t)); }
inline Dense hadamard() {
    const double r = 1 / std::sqrt(2.0);
    return gate2(r, r, r, -r);
}

/// Gate g on qubit q (1-based, qubit 1 most significant) of an n-qubit register.
inline Dense on_qubit(int n, int q, const Dense& g) {
    Dense out = Dense::identity(1);
    for (int k = 1; k <= n; ++k) out = kron(out, k == q ? g : Dense::identity(2));
    return out;
}

/// Gate g on qubit t, applied only where qubit c holds 1.
inline Dense controlled(int n, int c, int t, const Dense& g) {
    const std::size_t d = std::size_t{1} << n;
    Dense out(d);
    const std::size_t cm = std::size_t{1} << (n - c), tm = std::size_t{1} << (n - t);
    for (std::size_t col = 0; col < d; ++col) {
        if (!(col & cm)) {
            out.at(col, col) = 1;
            continue;
        }
        const int bit = (col & tm) ? 1 : 0;
        const std::size_t base = col & ~tm;
        out.at(base, col) += g.at(0, static_cast<std::size_t>(bit));
        out.at(base | tm, col) += g.at(1, static_cast<std::size_t>(bit));
    }
    return out;
}

/// Unitary DFT, |x> -> N^{-1/2} sum_k e^{2 pi i x k / N} |k>.
inline Dense dft(int n) {
    const std::size_t d = std::size_t{1} << n;
    Dense out(d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
            out.at(j, k) = std::polar(1 / std::sqrt(static_cast<double>(d)),
                                      2 * kPi * static_cast<double>(j * k) / static_cast<double>(d));
    return out;
}

inline Vec basis(int n, std::size_t idx) {
    Vec v(std::size_t{1} << n);
    v[idx] = 1;
    return v;
}

inline double max_diff(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return INFINITY;
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline Vec random_state(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(std::size_t{1} << n);
    double s = 0;
    for (auto& x : v) {
        x = C(g(rng), g(rng));
        s += std::norm(x);
    }
    for (auto& x : v) x /= std::sqrt(s);
    return v;
}

/// Reduced density matrix on the listed qubits (1-based), in list order.
inline Dense reduced(const Vec& psi, int n, const std::vector<int>& keep) {
    const std::size_t k = keep.size();
    Dense rho(std::size_t{1} << k);
    auto sub_index = [&](std::size_t idx) {
        std::size_t s = 0;
        for (int q : keep) s = (s << 1) | ((idx >> (n - q)) & 1U);
        return s;
    };
    std::uint64_t keep_mask = 0;
    for (int q : keep) keep_mask |= std::uint64_t{1} << (n - q);
    for (std::size_t a = 0; a < psi.size(); ++a) {
        if (psi[a] == C{}) continue;
        for (std::size_t b = 0; b < psi.size(); ++b) {
            if ((a & ~keep_mask) != (b & ~keep_mask)) continue;
            rho.at(sub_index(a), sub_index(b)) += psi[a] * std::conj(psi[b]);
        }
    }
    return rho;
}

}  // namespace oracle
