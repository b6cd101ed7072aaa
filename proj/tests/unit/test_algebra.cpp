#include <random>
#include <set>

#include "doctest.h"
#include "foq/algebra.hpp"
#include "foq/analysis.hpp"
#include "foq/interpreter.hpp"
#include "foq/parser.hpp"
#include "oracles.hpp"

using namespace foq;
using oracle::Dense;

namespace {

Dense block_diag(const std::vector<Dense>& blocks) {
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.dim;
    Dense out(d);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.dim; ++i)
            for (std::size_t j = 0; j < b.dim; ++j) out.at(off + i, off + j) = b.at(i, j);
        off += b.dim;
    }
    return out;
}

double angle(const AlgebraTerm& t) { return eval_phase(t.theta, 0); }

// The term's action on length-l states as a matrix, built from the defining
// equations by block structure.
Dense matrix_of(const AlgebraTerm& t, int l) {
    using K = AlgebraTerm::Kind;
    const std::size_t d = std::size_t{1} << l;
    if (l == 0) return Dense::identity(1);
    switch (t.kind) {
        case K::I:
            return Dense::identity(d);
        case K::Ph:
            return oracle::on_qubit(l, 1, oracle::phase(angle(t)));
        case K::Rot:
            return oracle::on_qubit(l, 1, oracle::ry(angle(t)));
        case K::Not:
            return oracle::on_qubit(l, 1, oracle::x_gate());
        case K::Swap: {
            if (l <= 1) return Dense::identity(d);
            Dense s(4);
            s.at(0, 0) = s.at(1, 2) = s.at(2, 1) = s.at(3, 3) = 1;
            return oracle::kron(s, Dense::identity(d / 4));
        }
        case K::Comp:
            return oracle::mul(matrix_of(*t.f, l), matrix_of(*t.g, l));
        case K::Branch:
            if (l <= 1) return Dense::identity(d);
            return block_diag({matrix_of(*t.f, l - 1), matrix_of(*t.g, l - 1)});
        case K::KQRec: {
            if (l <= t.t) return matrix_of(*t.f, l);
            std::vector<Dense> blocks;
            for (std::size_t w = 0; w < t.recurse.size(); ++w) {
                blocks.push_back(t.recurse[w] ? matrix_of(t, l - t.k) : Dense::identity(std::size_t{1} << (l - t.k)));
            }
            return oracle::mul(matrix_of(*t.g, l), oracle::mul(block_diag(blocks), matrix_of(*t.h, l)));
        }
    }
    return Dense::identity(d);
}

}  // namespace

TEST_CASE("basic functions") {
    const QuantumState one = eval_algebra(term_not(), QuantumState::basis("0"));
    CHECK(std::abs(one[1] - Complex(1, 0)) < 1e-12);
    const QuantumState psi = QuantumState::basis("1");
    CHECK(max_deviation(eval_algebra(term_swap(), psi), psi) < 1e-12);
    CHECK(max_deviation(eval_algebra(term_swap(), QuantumState::basis("100")), QuantumState::basis("010")) < 1e-12);
    // Branch[NOT, I] on |0>|0> flips the second qubit.
    const QuantumState b = eval_algebra(term_branch(term_not(), term_i()), QuantumState::basis("00"));
    CHECK(max_deviation(b, QuantumState::basis("01")) < 1e-12);
    CHECK(max_deviation(eval_algebra(term_branch(term_not(), term_i()), QuantumState::basis("10")),
                        QuantumState::basis("10")) < 1e-12);
}

TEST_CASE("term syntax") {
    const TermPtr t = parse_term("(comp (branch not i) swap)");
    CHECK(t->kind == AlgebraTerm::Kind::Comp);
    CHECK(t->size() == 5);
    CHECK(parse_term(t->to_string())->to_string() == t->to_string());
    const TermPtr k = parse_term("(kqrec :k 1 :t 1 :f not :g i :h i :sel (0 rec) (1 i))");
    CHECK(k->kind == AlgebraTerm::Kind::KQRec);
    CHECK(k->recurse == std::vector<bool>{true, false});
    CHECK(parse_term("(ph pi / 4)")->kind == AlgebraTerm::Kind::Ph);
    CHECK_THROWS_AS(parse_term("(comp not)"), AlgebraError);
    CHECK_THROWS_AS(parse_term("(rot x)"), AlgebraError);
    CHECK_THROWS_AS(parse_term("(kqrec :k 2 :t 0 :f i :g i :h i :sel (00 i) (01 i) (10 i) (11 i))"), AlgebraError);
    CHECK_THROWS_AS(parse_term("(kqrec :k 1 :t 1 :f i :g i :h i :sel (0 i))"), AlgebraError);
    CHECK_THROWS_AS(parse_term("not not"), AlgebraError);
}

TEST_CASE("translation of the basic functions") {
    const Program i = to_pfoq(term_i());
    CHECK(i.decls.empty());
    CHECK(std::holds_alternative<Skip>(i.main->node));
    const Program s = to_pfoq(term_swap());
    const std::string text = pretty_print(s);
    CHECK(text.find("size(q) > 1") != std::string::npos);
    CHECK(text.find("qcase q[1]") != std::string::npos);
    CHECK(text.find("qcase q[2]") != std::string::npos);
}

TEST_CASE("kqrec with k = 1 translates to an accepted program") {
    const TermPtr t = parse_term("(kqrec :k 1 :t 1 :f not :g i :h i :sel (0 rec) (1 i))");
    const Program p = to_pfoq(t);
    const PfoqVerdict v = check_pfoq(p);
    CHECK(v.accepted);
    for (int l = 1; l <= 5; ++l) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << l); ++x) {
            const QuantumState psi = QuantumState::basis(l, x);
            const EvalOutcome out = run(p, psi);
            REQUIRE(out.ok());
            CHECK(max_deviation(out.state, eval_algebra(t, psi)) < 1e-9);
        }
    }
}

TEST_CASE("generated names never clash") {
    const TermPtr t = parse_term("(comp (branch not (kqrec :k 1 :t 0 :f not :g i :h i :sel (0 rec) (1 i))) "
                                 "(branch i (kqrec :k 1 :t 0 :f not :g i :h i :sel (0 rec) (1 i))))");
    const Program a = to_pfoq(t), b = to_pfoq(t);
    std::set<std::string> names;
    for (const auto& d : a.decls) CHECK(names.insert(d.name).second);
    for (const auto& d : b.decls) CHECK(names.insert(d.name).second);
    CHECK(wellformed_check(a).empty());
    // Printing and re-parsing keeps the program intact.
    CHECK(equal(parse_program_or_throw(pretty_print(a)), a));
}

TEST_CASE("evaluation agrees with the block-matrix reading of the definitions") {
    std::mt19937_64 rng(13);
    const auto corpus = term_corpus();
    for (std::size_t i = 0; i < corpus.size(); i += 5) {
        const AlgebraTerm& t = *corpus[i];
        for (int l = 1; l <= 4; ++l) {
            CAPTURE(t.to_string());
            CAPTURE(l);
            const oracle::Vec psi = oracle::random_state(l, rng);
            const QuantumState got = eval_algebra(corpus[i], QuantumState(l, psi));
            CHECK(oracle::max_diff(got.amplitudes(), oracle::apply(matrix_of(t, l), psi)) < 1e-9);
            CHECK(std::abs(got.norm() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("translated programs are PFOQ and compute the term") {
    const auto corpus = term_corpus();
    CHECK(corpus.size() > 3000);
    for (std::size_t i = 0; i < corpus.size(); i += 11) {
        CAPTURE(corpus[i]->to_string());
        const Program p = to_pfoq(corpus[i]);
        REQUIRE(check_pfoq(p).accepted);
        for (int l = 1; l <= 4; ++l) {
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << l); ++x) {
                const QuantumState psi = QuantumState::basis(l, x);
                const EvalOutcome out = run(p, psi);
                REQUIRE(out.ok());
                CHECK(max_deviation(out.state, eval_algebra(corpus[i], psi)) < 1e-9);
            }
        }
    }
}

TEST_CASE("extended input encoding") {
    const std::string one = phi_encode_bits("1", {0, 1});
    CHECK(one.size() == 23);
    CHECK(one == "01" "0" "1" + std::string(17, '0') + "1" "1");
    const std::string empty = phi_encode_bits("", {2});
    CHECK(empty.size() == 12 * 2 + 9);
    CHECK(empty.front() == '1');
    for (const std::string x : {"0", "01", "110", "1011"}) {
        const std::vector<std::uint64_t> poly{1, 0, 1};
        const std::uint64_t p = 1 + x.size() * x.size();
        const std::string e = phi_encode_bits(x, poly);
        CHECK(e.size() == 2 * x.size() + 12 * p + 9);
        CHECK(e.substr(0, x.size() + 1) == std::string(x.size(), '0') + "1");
        CHECK(e.substr(e.size() - x.size()) == x);
    }
    const QuantumState s = phi_encode("", {1});
    CHECK(s.num_qubits() == 21);
    CHECK(std::abs(s[std::stoull(phi_encode_bits("", {1}), nullptr, 2)] - Complex(1, 0)) < 1e-12);
    CHECK_THROWS(phi_encode_bits("2", {1}));
}
