#include <random>

#include "doctest.h"
#include "foq/analysis.hpp"
#include "foq/examples.hpp"
#include "foq/parser.hpp"
#include "foq/transform.hpp"

using namespace foq;

TEST_CASE("dagger negates angles and fixes NOT") {
    const StmtPtr s = parse_statement("q[1] *= RY[pi / 2^x](x);");
    const OperatorExpr& op = std::get<Assign>(s->node).op;
    const OperatorExpr d = dagger(op);
    CHECK(d.kind == OperatorExpr::Kind::RY);
    for (int n = 0; n < 4; ++n) {
        const Mat2 a = gate_matrix(op.kind, op.phase, n), b = gate_matrix(d.kind, d.phase, n);
        // b is the conjugate transpose of a.
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) CHECK(std::abs(b[r][c] - std::conj(a[c][r])) < 1e-12);
    }
    CHECK(dagger(OperatorExpr::make_not()).kind == OperatorExpr::Kind::Not);
    CHECK(dagger(d).phase == op.phase);
}

TEST_CASE("inversion reverses sequences and keeps calls") {
    const StmtPtr s = parse_statement("q[1] *= NOT; call f(q \\ [1]); q[2] *= PH[pi / 4](0);");
    const std::string got = pretty_print(invert(s));
    CHECK(got.find("call f(q \\ [1]);") != std::string::npos);
    CHECK(got.find("q[2]") < got.find("q[1] *= NOT"));
    CHECK(got.find("PH[-(pi / 4)](0)") != std::string::npos);
}

TEST_CASE("inversion is an involution on the examples") {
    for (const auto& [name, src] : example_sources()) {
        CAPTURE(name);
        const Program p = parse_program_or_throw(src);
        CHECK(equal(invert(invert(p)), p));
        CHECK(check_pfoq(invert(p)).accepted);
    }
}

TEST_CASE("property: the inverse program undoes the program") {
    std::mt19937_64 rng(17);
    for (const auto& [name, src] : example_sources()) {
        const Program p = parse_program_or_throw(src);
        const Program inv = invert(p);
        for (int n = 1; n <= 6; ++n) {
            for (int k = 0; k < 4; ++k) {
                CAPTURE(name);
                CAPTURE(n);
                const QuantumState psi = QuantumState::random(n, rng);
                const EvalOutcome fwd = run(p, psi);
                REQUIRE(fwd.ok());
                const EvalOutcome back = run(inv, fwd.state);
                REQUIRE(back.ok());
                CHECK(max_deviation(back.state, psi) < 1e-9);
                CHECK(back.level == fwd.level);
            }
        }
    }
}
