#include "doctest.h"
#include "foq/examples.hpp"
#include "foq/interpreter.hpp"
#include "foq/parser.hpp"

using namespace foq;

TEST_CASE("reference programs parse") {
    const Program qft = qft_program();
    REQUIRE(qft.decls.size() == 3);
    CHECK(qft.decls[0].name == "rec");
    CHECK(qft.decls[1].int_param == std::optional<std::string>("x"));
    CHECK(qft.decls[2].set_param == "p");
    CHECK(teleport_program().decls.size() == 2);
    CHECK(fibo_program().decls.size() == 1);
}

TEST_CASE("parse errors carry a location and what was expected") {
    const ParseResult r = parse_program("decl f(p) {\n  p[1] *= NOT\n}\n:: call f(q);", "bad.foq");
    REQUIRE_FALSE(r.ok());
    REQUIRE_FALSE(r.errors.empty());
    const ParseError& e = r.errors.front();
    CHECK(e.span.file == "bad.foq");
    CHECK(e.span.line == 3);
    CHECK(e.to_string().rfind("bad.foq:3:", 0) == 0);
    CHECK(e.message().find(";") != std::string::npos);
    CHECK_THROWS_AS(parse_program_or_throw(":: q[1] *= RY[pi](0)"), ParseException);
    CHECK_THROWS_AS(parse_program_or_throw(":: qcase q[1] of { 0 -> skip; }"), ParseException);
}

TEST_CASE("empty main is skip and comments are ignored") {
    const Program p = parse_program_or_throw("# nothing\n:: // still nothing\n");
    CHECK(std::holds_alternative<Skip>(p.main->node));
}

TEST_CASE("macros expand to their definitions") {
    SUBCASE("H is RY(pi/4) then NOT") {
        const StmtPtr h = parse_statement("q[1] *= H;");
        const StmtPtr expect = parse_statement("q[1] *= RY[pi / 4](0); q[1] *= NOT;");
        CHECK(equal(h, expect));
    }
    SUBCASE("CNOT is a quantum case") {
        const StmtPtr c = parse_statement("CNOT(q[1], q[2]);");
        const StmtPtr expect = parse_statement("qcase q[1] of { 0 -> skip;, 1 -> q[2] *= NOT; }");
        CHECK(equal(c, expect));
    }
    SUBCASE("SWAP is three CNOTs") {
        const StmtPtr s = parse_statement("SWAP(q[1], q[2]);");
        const StmtPtr expect = parse_statement("CNOT(q[1], q[2]); CNOT(q[2], q[1]); CNOT(q[1], q[2]);");
        CHECK(equal(s, expect));
    }
}

TEST_CASE("multi-qubit quantum case nests on the first index") {
    const StmtPtr m = parse_statement(
        "qcase q[1, 2] of { 00 -> skip;, 01 -> q[3] *= NOT;, 10 -> skip;, 11 -> q[3] *= H; }");
    const StmtPtr expect = parse_statement(
        "qcase q[1] of { 0 -> qcase q[2] of { 0 -> skip;, 1 -> q[3] *= NOT; },"
        " 1 -> qcase q[2] of { 0 -> skip;, 1 -> q[3] *= H; } }");
    CHECK(equal(m, expect));
    CHECK_THROWS(parse_statement("qcase q[1, 2] of { 00 -> skip;, 01 -> skip;, 10 -> skip; }"));
    CHECK_THROWS(parse_statement("qcase q[1, 2] of { 00 -> skip;, 00 -> skip;, 10 -> skip;, 11 -> skip; }"));
    CHECK_THROWS(parse_statement("qcase q[1] of { 0 -> skip;, 2 -> skip; }"));
}

TEST_CASE("comparison sugar and arithmetic") {
    const StmtPtr lt = parse_statement("if 1 < size(q) then skip; else q[1] *= NOT;");
    const StmtPtr gt = parse_statement("if size(q) > 1 then skip; else q[1] *= NOT;");
    CHECK(equal(lt, gt));
    const StmtPtr nested = parse_statement("if not (size(q) = 2 or size(q) >= 4) and 0 < 1 then skip; else skip;");
    CHECK(std::holds_alternative<If>(nested->node));
    const IndexList l{4, 5, 6};
    CHECK(eval_bool(std::get<If>(nested->node).cond, l));
}

TEST_CASE("set removal syntax") {
    const StmtPtr s = parse_statement("q[1] *= NOT; call f((q \\ [1]) \\ [size(q) - 1, 2]);");
    const auto& seq = std::get<Seq>(s->node);
    const auto& call = std::get<Call>(seq.second->node);
    CHECK(to_string(call.set) == "q \\ [1] \\ [size(q) - 1, 2]");
}
