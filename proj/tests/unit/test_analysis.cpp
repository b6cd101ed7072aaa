#include "doctest.h"
#include "foq/analysis.hpp"
#include "foq/examples.hpp"
#include "foq/interpreter.hpp"
#include "foq/parser.hpp"
#include "json.hpp"

using namespace foq;

TEST_CASE("QFT call relations") {
    const Program qft = qft_program();
    const ProcRelations rel = call_relations(qft);
    CHECK(rel.calls_directly("rec", "rot"));
    CHECK(rel.calls_directly("rec", "rec"));
    CHECK_FALSE(rel.calls_directly("rot", "rec"));
    CHECK(rel.equiv("rec", "rec"));
    CHECK(rel.equiv("rot", "rot"));
    CHECK(rel.equiv("inv", "inv"));
    CHECK(rel.succ("rec", "rot"));
    CHECK_FALSE(rel.succ("rot", "rec"));
    CHECK_FALSE(rel.geq("inv", "rec"));
    CHECK(rel.scc[rel.id("rec")] != rel.scc[rel.id("rot")]);
}

TEST_CASE("QFT is PFOQ with widths 1 and degree 2") {
    const PfoqVerdict v = check_pfoq(qft_program());
    CHECK(v.accepted);
    CHECK(v.width_of("rec") == 1);
    CHECK(v.width_of("rot") == 1);
    CHECK(v.width_of("inv") == 1);
    CHECK(v.rank_of("rec") == 1);
    CHECK(v.rank_of("rot") == 0);
    CHECK(v.program_rank == 1);
    CHECK(v.degree == std::optional<int>(2));
    const auto j = nlohmann::json::parse(v.to_json());
    CHECK(j["accepted"] == true);
    CHECK(j["widths"]["rot"] == 1);
    CHECK(j["degree"] == 2);
    CHECK(j["diagnostics"].empty());
}

TEST_CASE("two sequential recursive calls give width 2") {
    const PfoqVerdict v = check_pfoq(parse_program_or_throw(double_recursion_source()));
    CHECK_FALSE(v.accepted);
    CHECK(v.width_of("twice") == 2);
    CHECK_FALSE(v.degree.has_value());
    REQUIRE_FALSE(v.diagnostics.empty());
    CHECK(v.diagnostics.front().message.find("width 2") != std::string::npos);
}

TEST_CASE("the merging showcase and the other examples are PFOQ") {
    for (const auto& [name, src] : example_sources()) {
        CAPTURE(name);
        CHECK(check_pfoq(parse_program_or_throw(src)).accepted);
    }
}

TEST_CASE("well-foundedness") {
    SUBCASE("recursive call on the same set") {
        const Program p = parse_program_or_throw("decl f(p) { call f(p); } :: call f(q);");
        const WfResult wf = check_wf(p, call_relations(p));
        CHECK_FALSE(wf.ok);
        REQUIRE(wf.diagnostics.size() == 1);
        CHECK(wf.diagnostics[0].span.line == 1);
        CHECK_FALSE(check_pfoq(p).accepted);
    }
    SUBCASE("mutual recursion must shrink on every edge of the cycle") {
        const Program bad = parse_program_or_throw(
            "decl f(p) { call g(p \\ [1]); }, decl g(p) { call f(p); } :: call f(q);");
        CHECK_FALSE(check_wf(bad, call_relations(bad)).ok);
        const Program good = parse_program_or_throw(
            "decl f(p) { call g(p \\ [1]); }, decl g(p) { call f(p \\ [size(p)]); } :: call f(q);");
        const ProcRelations rel = call_relations(good);
        CHECK(check_wf(good, rel).ok);
        CHECK(rel.equiv("f", "g"));
        CHECK(rel.scc[rel.id("f")] == rel.scc[rel.id("g")]);
    }
    SUBCASE("calls down the order need not shrink") {
        const Program p = parse_program_or_throw(
            "decl leaf(p) { p[1] *= NOT; }, decl top(p) { call leaf(p); call top(p \\ [1]); } :: call top(q);");
        CHECK(check_pfoq(p).accepted);
    }
    SUBCASE("a removal chain must be rooted at the caller's parameter") {
        const Program p = parse_program_or_throw("decl f(p) { call f(nil \\ [1]); } :: call f(q);");
        CHECK_FALSE(check_wf(p, call_relations(p)).ok);
    }
}

TEST_CASE("width: sums along sequences, maxima across branches") {
    const Program p = parse_program_or_throw(R"(
decl f(p) {
  if size(p) > 2 then {
    qcase p[1] of { 0 -> call f(p \ [1]);, 1 -> call f(p \ [1, 2]); }
  } else {
    call g(p);
    call g(p);
  }
},
decl g(p) { skip; }
:: call f(q);
)");
    const ProcRelations rel = call_relations(p);
    CHECK(width(p, rel, "f") == 1);
    CHECK(width(p, rel, "g") == 0);
    CHECK(statement_width(parse_statement("call f(q); call f(q);"), rel, "f") == 2);
    CHECK(statement_width(parse_statement("call g(q); call g(q);"), rel, "f") == 0);
}

TEST_CASE("ranks follow the strict call order") {
    const Program p = parse_program_or_throw(R"(
decl a(p) { call b(p); call a(p \ [1]); },
decl b(p) { call c(p); call b(p \ [1]); },
decl c(p) { call c(p \ [1]); },
decl d(p) { skip; }
:: call a(q);
)");
    const Ranks r = rank(p, call_relations(p));
    CHECK(r.per_proc.at("a") == 2);
    CHECK(r.per_proc.at("b") == 1);
    CHECK(r.per_proc.at("c") == 0);
    CHECK(r.per_proc.at("d") == 0);
    CHECK(r.program == 2);
}

TEST_CASE("level stays within the rank polynomial") {
    const Program qft = qft_program();
    const int d = *level_bound_degree(qft);
    for (int n = 1; n <= 12; ++n) {
        double bound = 1;
        for (int k = 0; k < d; ++k) bound *= n + 1;
        CHECK(static_cast<double>(level_of(qft, n)) <= 2 * bound);
    }
}

namespace {

// A chain of m procedures, each calling itself and the next one.
std::string chain(int m) {
    std::string s;
    for (int i = 0; i < m; ++i) {
        s += "decl f" + std::to_string(i) + "(p) { ";
        if (i + 1 < m) s += "call f" + std::to_string(i + 1) + "(p); ";
        s += "qcase p[1] of { 0 -> call f" + std::to_string(i) + "(p \\ [1]);, 1 -> skip; } },\n";
    }
    return s + ":: call f0(q);";
}

}  // namespace

TEST_CASE("the decision procedure is at most quadratic in the program size") {
    double prev_ratio = 0;
    for (int m : {10, 20, 40, 80}) {
        const Program p = parse_program_or_throw(chain(m));
        OpCounter counter;
        CHECK(check_pfoq(p, &counter).accepted);
        const double size = static_cast<double>(program_size(p));
        const double ratio = static_cast<double>(counter.ops) / (size * size);
        CAPTURE(m);
        CAPTURE(ratio);
        CHECK(ratio < 4.0);
        if (prev_ratio > 0) CHECK(ratio <= prev_ratio * 1.2);
        prev_ratio = ratio;
    }
}
