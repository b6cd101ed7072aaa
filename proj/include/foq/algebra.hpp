#pragma once

// Yamakami's function algebra over quantum states: terms, a direct
// statevector evaluator, and the translation of terms into PFOQ programs.

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "foq/state.hpp"
#include "foq/syntax.hpp"

namespace foq {

struct AlgebraTerm;
using TermPtr = std::shared_ptr<const AlgebraTerm>;

struct AlgebraTerm {
    enum class Kind { I, Ph, Rot, Not, Swap, Comp, Branch, KQRec };
    Kind kind = Kind::I;
    PhaseExpr theta;  // Ph, Rot
    // Comp[F,G] and Branch[F,G] use f, g. KQRec uses f, g, h.
    TermPtr f, g, h;
    int k = 0, t = 0;
    // KQRec: entry w (as a k-bit number, first bit most significant) is true
    // when F_w is the recursive call and false when it is I.
    std::vector<bool> recurse;

    std::size_t size() const;
    std::string to_string() const;
};

class AlgebraError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

TermPtr term_i();
TermPtr term_ph(PhaseExpr theta);
TermPtr term_rot(PhaseExpr theta);
TermPtr term_not();
TermPtr term_swap();
TermPtr term_comp(TermPtr f, TermPtr g);
TermPtr term_branch(TermPtr f, TermPtr g);
/// Throws AlgebraError unless k >= 1, t >= k - 1 and recurse has 2^k entries.
TermPtr term_kqrec(int k, int t, TermPtr f, TermPtr g, TermPtr h, std::vector<bool> recurse);

/// Constant phase from text such as "pi/4"; throws AlgebraError otherwise.
PhaseExpr parse_theta(const std::string& text);

/// Parses the s-expression term syntax, e.g. `(comp (branch not i) swap)`,
/// `(kqrec :k 1 :t 1 :f not :g i :h i :sel (0 rec) (1 i))`.
TermPtr parse_term(const std::string& text);

/// Reference semantics. The empty state is a fixed point of every term.
QuantumState eval_algebra(const TermPtr& term, const QuantumState& psi);

/// PFOQ program computing the same function on its main register.
Program to_pfoq(const TermPtr& term);

/// phi_P(x) as a bitstring, P given by natural coefficients (constant first).
std::string phi_encode_bits(const std::string& x, const std::vector<std::uint64_t>& poly);
QuantumState phi_encode(const std::string& x, const std::vector<std::uint64_t>& poly);

/// All terms of size <= 4 over the basic functions with theta in
/// {pi/4, pi/2}, followed by `random_count` random terms of size <= 7.
std::vector<TermPtr> term_corpus(std::size_t random_count = 20, std::uint64_t seed = 2024);
TermPtr random_term(std::mt19937_64& rng, std::size_t max_size);

}  // namespace foq
