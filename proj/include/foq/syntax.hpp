#pragma once

// Abstract syntax of FOQ programs.
//
// All nodes are immutable and shared through std::shared_ptr<const T>; a
// transformed program shares every untouched subtree with its source.

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace foq {

using Complex = std::complex<double>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;

struct SourceSpan {
    std::string file;
    std::size_t begin = 0;
    std::size_t end = 0;
    int line = 0;
    int column = 0;

    std::string to_string() const;
};

class EvalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Phase functions: closed expressions over one bound integer variable.

struct PhaseNode;
using PhaseNodePtr = std::shared_ptr<const PhaseNode>;

struct PhaseNode {
    enum class Kind { Int, Pi, Var, Add, Sub, Mul, Div, Pow2, Neg };
    Kind kind;
    std::int64_t value = 0;  // Int only
    PhaseNodePtr lhs;        // unary operand for Pow2/Neg
    PhaseNodePtr rhs;
};

class PhaseExpr {
  public:
    PhaseExpr() = default;
    PhaseExpr(std::string var, PhaseNodePtr root) : var_(std::move(var)), root_(std::move(root)) {}

    static PhaseExpr constant_pi_over(std::int64_t denominator);

    const std::string& var() const { return var_; }
    const PhaseNodePtr& root() const { return root_; }

    // Raw value of the expression at n, without reduction. Throws EvalError
    // on division by zero or a non-finite result.
    double eval_raw(std::int64_t n) const;

    // Syntactic negation; -(-f) normalizes back to f.
    PhaseExpr neg() const;

    std::string to_string() const;

    friend bool operator==(const PhaseExpr& a, const PhaseExpr& b);

  private:
    std::string var_ = "y";
    PhaseNodePtr root_;
};

PhaseNodePtr phase_int(std::int64_t v);
PhaseNodePtr phase_pi();
PhaseNodePtr phase_var();
PhaseNodePtr phase_binary(PhaseNode::Kind kind, PhaseNodePtr lhs, PhaseNodePtr rhs);
PhaseNodePtr phase_unary(PhaseNode::Kind kind, PhaseNodePtr operand);

/// Evaluates f at n and reduces the result into [0, 2pi).
double eval_phase(const PhaseExpr& f, std::int64_t n);

// ---------------------------------------------------------------------------
// Classical expressions.

struct IntExpr;
struct BoolExpr;
struct SetExpr;
using IntExprPtr = std::shared_ptr<const IntExpr>;
using BoolExprPtr = std::shared_ptr<const BoolExpr>;
using SetExprPtr = std::shared_ptr<const SetExpr>;

struct IntLit {
    std::int64_t value;
};
struct IntVar {
    std::string name;
};
struct IntOffset {  // i + n or i - n, n a natural literal
    IntExprPtr base;
    std::int64_t offset;  // signed: i - n stores -n
};
struct IntSize {
    SetExprPtr set;
};

struct IntExpr {
    std::variant<IntLit, IntVar, IntOffset, IntSize> node;
};

enum class CmpOp { Gt, Ge, Eq };

struct BoolCmp {
    CmpOp op;
    IntExprPtr lhs, rhs;
};
struct BoolAnd {
    BoolExprPtr lhs, rhs;
};
struct BoolOr {
    BoolExprPtr lhs, rhs;
};
struct BoolNot {
    BoolExprPtr operand;
};

struct BoolExpr {
    std::variant<BoolCmp, BoolAnd, BoolOr, BoolNot> node;
};

struct SetNil {};
struct SetVar {
    std::string name;
};
// s \ [i1, ..., ik]: removes the elements at positions i1..ik of s, all
// positions read against s itself. k = 1 is the single-removal primitive.
struct SetRemove {
    SetExprPtr base;
    std::vector<IntExprPtr> indices;
};

struct SetExpr {
    std::variant<SetNil, SetVar, SetRemove> node;
};

struct QubitExpr {
    SetExprPtr set;
    IntExprPtr index;
};

IntExprPtr int_lit(std::int64_t v);
IntExprPtr int_var(std::string name);
IntExprPtr int_offset(IntExprPtr base, std::int64_t offset);
IntExprPtr int_size(SetExprPtr set);
BoolExprPtr bool_cmp(CmpOp op, IntExprPtr lhs, IntExprPtr rhs);
BoolExprPtr bool_and(BoolExprPtr lhs, BoolExprPtr rhs);
BoolExprPtr bool_or(BoolExprPtr lhs, BoolExprPtr rhs);
BoolExprPtr bool_not(BoolExprPtr operand);
SetExprPtr set_nil();
SetExprPtr set_var(std::string name);
SetExprPtr set_remove(SetExprPtr base, std::vector<IntExprPtr> indices);

// ---------------------------------------------------------------------------
// Operators and statements.

struct OperatorExpr {
    enum class Kind { Not, RY, Ph };
    Kind kind = Kind::Not;
    PhaseExpr phase;  // unused for Not
    IntExprPtr arg;   // null for Not

    static OperatorExpr make_not() { return {}; }
    static OperatorExpr ry(PhaseExpr f, IntExprPtr arg) { return {Kind::RY, std::move(f), std::move(arg)}; }
    static OperatorExpr ph(PhaseExpr f, IntExprPtr arg) { return {Kind::Ph, std::move(f), std::move(arg)}; }
};

struct Statement;
using StmtPtr = std::shared_ptr<const Statement>;

struct Skip {};
struct Assign {
    QubitExpr target;
    OperatorExpr op;
};
struct Seq {
    StmtPtr first, second;
};
struct If {
    BoolExprPtr cond;
    StmtPtr then_branch, else_branch;
};
struct QCase {
    QubitExpr control;
    StmtPtr zero, one;
};
struct Call {
    std::string proc;
    IntExprPtr arg;  // null when the call carries no classical argument
    SetExprPtr set;
};

struct Statement {
    std::variant<Skip, Assign, Seq, If, QCase, Call> node;
    SourceSpan span;
};

StmtPtr make_skip(SourceSpan span = {});
StmtPtr make_assign(QubitExpr target, OperatorExpr op, SourceSpan span = {});
StmtPtr make_seq(StmtPtr first, StmtPtr second, SourceSpan span = {});
StmtPtr make_if(BoolExprPtr cond, StmtPtr then_branch, StmtPtr else_branch, SourceSpan span = {});
StmtPtr make_qcase(QubitExpr control, StmtPtr zero, StmtPtr one, SourceSpan span = {});
StmtPtr make_call(std::string proc, IntExprPtr arg, SetExprPtr set, SourceSpan span = {});

/// Right-nested sequence of one or more statements.
StmtPtr make_block(const std::vector<StmtPtr>& stmts);

struct ProcDecl {
    std::string name;
    std::optional<std::string> int_param;
    std::string set_param;
    StmtPtr body;
    SourceSpan span;
};

struct Program {
    std::vector<ProcDecl> decls;
    StmtPtr main;
    std::string main_var = "q";

    const ProcDecl* find(const std::string& name) const;
};

// ---------------------------------------------------------------------------
// Operations.

struct Diagnostic {
    SourceSpan span;
    std::string message;
};

/// Well-formedness clauses: variables in scope, distinct declaration names,
/// every callee declared. Empty result means well-formed.
std::vector<Diagnostic> wellformed_check(const Program& p);

/// Replaces every occurrence of integer variable `var` by literal n.
StmtPtr substitute_int(const StmtPtr& s, const std::string& var, std::int64_t n);

/// Matrix of the operator's semantics at integer argument n.
Mat2 gate_matrix(OperatorExpr::Kind kind, const PhaseExpr& f, std::int64_t n);

/// Canonical surface text; parse_program(pretty_print(p)) reproduces p.
std::string pretty_print(const Program& p);
std::string pretty_print(const StmtPtr& s, int indent = 0);
std::string to_string(const IntExprPtr& e);
std::string to_string(const BoolExprPtr& e);
std::string to_string(const SetExprPtr& e);
std::string to_string(const QubitExpr& q);
std::string to_string(const OperatorExpr& op);

// Structural equality; source spans are ignored.
bool equal(const IntExprPtr& a, const IntExprPtr& b);
bool equal(const BoolExprPtr& a, const BoolExprPtr& b);
bool equal(const SetExprPtr& a, const SetExprPtr& b);
bool equal(const StmtPtr& a, const StmtPtr& b);
bool equal(const Program& a, const Program& b);

/// Number of AST nodes, the program size |P|.
std::size_t program_size(const Program& p);

}  // namespace foq
