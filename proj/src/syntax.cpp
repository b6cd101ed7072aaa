#include "foq/syntax.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace foq {

std::string SourceSpan::to_string() const {
    std::ostringstream out;
    out << (file.empty() ? "<input>" : file) << ":" << line << ":" << column;
    return out.str();
}

// ---------------------------------------------------------------------------
// Phase expressions

PhaseNodePtr phase_int(std::int64_t v) {
    if (v < 0) {
        return phase_unary(PhaseNode::Kind::Neg, phase_int(-v));
    }
    return std::make_shared<const PhaseNode>(PhaseNode{PhaseNode::Kind::Int, v, nullptr, nullptr});
}

PhaseNodePtr phase_pi() {
    return std::make_shared<const PhaseNode>(PhaseNode{PhaseNode::Kind::Pi, 0, nullptr, nullptr});
}

PhaseNodePtr phase_var() {
    return std::make_shared<const PhaseNode>(PhaseNode{PhaseNode::Kind::Var, 0, nullptr, nullptr});
}

PhaseNodePtr phase_binary(PhaseNode::Kind kind, PhaseNodePtr lhs, PhaseNodePtr rhs) {
    return std::make_shared<const PhaseNode>(PhaseNode{kind, 0, std::move(lhs), std::move(rhs)});
}

PhaseNodePtr phase_unary(PhaseNode::Kind kind, PhaseNodePtr operand) {
    return std::make_shared<const PhaseNode>(PhaseNode{kind, 0, std::move(operand), nullptr});
}

PhaseExpr PhaseExpr::constant_pi_over(std::int64_t denominator) {
    return PhaseExpr("y", phase_binary(PhaseNode::Kind::Div, phase_pi(), phase_int(denominator)));
}

namespace {

double eval_node(const PhaseNode& node, std::int64_t n) {
    using K = PhaseNode::Kind;
    switch (node.kind) {
        case K::Int:
            return static_cast<double>(node.value);
        case K::Pi:
            return std::numbers::pi;
        case K::Var:
            return static_cast<double>(n);
        case K::Add:
            return eval_node(*node.lhs, n) + eval_node(*node.rhs, n);
        case K::Sub:
            return eval_node(*node.lhs, n) - eval_node(*node.rhs, n);
        case K::Mul:
            return eval_node(*node.lhs, n) * eval_node(*node.rhs, n);
        case K::Div: {
            double d = eval_node(*node.rhs, n);
            if (d == 0.0) {
                throw EvalError("division by zero in phase function");
            }
            return eval_node(*node.lhs, n) / d;
        }
        case K::Pow2:
            return std::exp2(eval_node(*node.lhs, n));
        case K::Neg:
            return -eval_node(*node.lhs, n);
    }
    return 0.0;
}

bool equal_node(const PhaseNodePtr& a, const PhaseNodePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->value != b->value) return false;
    return equal_node(a->lhs, b->lhs) && equal_node(a->rhs, b->rhs);
}

int phase_prec(PhaseNode::Kind k) {
    using K = PhaseNode::Kind;
    switch (k) {
        case K::Add:
        case K::Sub:
            return 1;
        case K::Mul:
        case K::Div:
            return 2;
        case K::Neg:
            return 3;
        case K::Pow2:
            return 4;
        default:
            return 5;
    }
}

void print_node(std::ostream& out, const PhaseNode& node, const std::string& var) {
    using K = PhaseNode::Kind;
    auto child = [&](const PhaseNode& c, bool wrap) {
        if (wrap) out << "(";
        print_node(out, c, var);
        if (wrap) out << ")";
    };
    const int p = phase_prec(node.kind);
    switch (node.kind) {
        case K::Int:
            out << node.value;
            return;
        case K::Pi:
            out << "pi";
            return;
        case K::Var:
            out << var;
            return;
        case K::Neg:
            out << "-";
            child(*node.lhs, phase_prec(node.lhs->kind) < p);
            return;
        case K::Pow2:
            out << "2^";
            child(*node.lhs, phase_prec(node.lhs->kind) <= p);
            return;
        default:
            break;
    }
    const char* op = node.kind == K::Add ? " + " : node.kind == K::Sub ? " - " : node.kind == K::Mul ? " * " : " / ";
    child(*node.lhs, phase_prec(node.lhs->kind) < p);
    out << op;
    child(*node.rhs, phase_prec(node.rhs->kind) <= p);
}

}  // namespace

double PhaseExpr::eval_raw(std::int64_t n) const {
    if (!root_) return 0.0;
    double v = eval_node(*root_, n);
    if (!std::isfinite(v)) {
        throw EvalError("phase function is not finite at " + std::to_string(n));
    }
    return v;
}

PhaseExpr PhaseExpr::neg() const {
    if (root_ && root_->kind == PhaseNode::Kind::Neg) {
        return PhaseExpr(var_, root_->lhs);
    }
    return PhaseExpr(var_, phase_unary(PhaseNode::Kind::Neg, root_ ? root_ : phase_int(0)));
}

std::string PhaseExpr::to_string() const {
    std::ostringstream out;
    if (root_) {
        print_node(out, *root_, var_);
    } else {
        out << "0";
    }
    return out.str();
}

bool operator==(const PhaseExpr& a, const PhaseExpr& b) {
    return equal_node(a.root_, b.root_);
}

double eval_phase(const PhaseExpr& f, std::int64_t n) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(f.eval_raw(n), two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

Mat2 gate_matrix(OperatorExpr::Kind kind, const PhaseExpr& f, std::int64_t n) {
    switch (kind) {
        case OperatorExpr::Kind::Not:
            return Mat2{{{Complex{0, 0}, Complex{1, 0}}, {Complex{1, 0}, Complex{0, 0}}}};
        case OperatorExpr::Kind::RY: {
            double t = eval_phase(f, n);
            double c = std::cos(t), s = std::sin(t);
            return Mat2{{{Complex{c, 0}, Complex{-s, 0}}, {Complex{s, 0}, Complex{c, 0}}}};
        }
        case OperatorExpr::Kind::Ph: {
            double t = eval_phase(f, n);
            return Mat2{{{Complex{1, 0}, Complex{0, 0}}, {Complex{0, 0}, std::polar(1.0, t)}}};
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Factories

IntExprPtr int_lit(std::int64_t v) { return std::make_shared<const IntExpr>(IntExpr{IntLit{v}}); }
IntExprPtr int_var(std::string name) { return std::make_shared<const IntExpr>(IntExpr{IntVar{std::move(name)}}); }
IntExprPtr int_offset(IntExprPtr base, std::int64_t offset) {
    return std::make_shared<const IntExpr>(IntExpr{IntOffset{std::move(base), offset}});
}
IntExprPtr int_size(SetExprPtr set) { return std::make_shared<const IntExpr>(IntExpr{IntSize{std::move(set)}}); }

BoolExprPtr bool_cmp(CmpOp op, IntExprPtr lhs, IntExprPtr rhs) {
    return std::make_shared<const BoolExpr>(BoolExpr{BoolCmp{op, std::move(lhs), std::move(rhs)}});
}
BoolExprPtr bool_and(BoolExprPtr lhs, BoolExprPtr rhs) {
    return std::make_shared<const BoolExpr>(BoolExpr{BoolAnd{std::move(lhs), std::move(rhs)}});
}
BoolExprPtr bool_or(BoolExprPtr lhs, BoolExprPtr rhs) {
    return std::make_shared<const BoolExpr>(BoolExpr{BoolOr{std::move(lhs), std::move(rhs)}});
}
BoolExprPtr bool_not(BoolExprPtr operand) {
    return std::make_shared<const BoolExpr>(BoolExpr{BoolNot{std::move(operand)}});
}

SetExprPtr set_nil() { return std::make_shared<const SetExpr>(SetExpr{SetNil{}}); }
SetExprPtr set_var(std::string name) { return std::make_shared<const SetExpr>(SetExpr{SetVar{std::move(name)}}); }
SetExprPtr set_remove(SetExprPtr base, std::vector<IntExprPtr> indices) {
    return std::make_shared<const SetExpr>(SetExpr{SetRemove{std::move(base), std::move(indices)}});
}

StmtPtr make_skip(SourceSpan span) { return std::make_shared<const Statement>(Statement{Skip{}, std::move(span)}); }
StmtPtr make_assign(QubitExpr target, OperatorExpr op, SourceSpan span) {
    return std::make_shared<const Statement>(Statement{Assign{std::move(target), std::move(op)}, std::move(span)});
}
StmtPtr make_seq(StmtPtr first, StmtPtr second, SourceSpan span) {
    return std::make_shared<const Statement>(Statement{Seq{std::move(first), std::move(second)}, std::move(span)});
}
StmtPtr make_if(BoolExprPtr cond, StmtPtr then_branch, StmtPtr else_branch, SourceSpan span) {
    return std::make_shared<const Statement>(
        Statement{If{std::move(cond), std::move(then_branch), std::move(else_branch)}, std::move(span)});
}
StmtPtr make_qcase(QubitExpr control, StmtPtr zero, StmtPtr one, SourceSpan span) {
    return std::make_shared<const Statement>(
        Statement{QCase{std::move(control), std::move(zero), std::move(one)}, std::move(span)});
}
StmtPtr make_call(std::string proc, IntExprPtr arg, SetExprPtr set, SourceSpan span) {
    return std::make_shared<const Statement>(
        Statement{Call{std::move(proc), std::move(arg), std::move(set)}, std::move(span)});
}

StmtPtr make_block(const std::vector<StmtPtr>& stmts) {
    if (stmts.empty()) return make_skip();
    StmtPtr acc = stmts.back();
    for (auto it = stmts.rbegin() + 1; it != stmts.rend(); ++it) {
        acc = make_seq(*it, acc, (*it)->span);
    }
    return acc;
}

const ProcDecl* Program::find(const std::string& name) const {
    for (const auto& d : decls) {
        if (d.name == name) return &d;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Well-formedness

namespace {

struct Scope {
    std::optional<std::string> int_var;
    std::string set_var;
    std::string where;
};

class WfChecker {
  public:
    WfChecker(const Program& p, std::vector<Diagnostic>& out) : program_(p), out_(out) {}

    void check_int(const IntExprPtr& e, const Scope& sc, const SourceSpan& at) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, IntVar>) {
                    if (!sc.int_var || *sc.int_var != n.name) {
                        report(at, "unknown integer variable '" + n.name + "' in " + sc.where);
                    }
                } else if constexpr (std::is_same_v<T, IntOffset>) {
                    check_int(n.base, sc, at);
                } else if constexpr (std::is_same_v<T, IntSize>) {
                    check_set(n.set, sc, at);
                }
            },
            e->node);
    }

    void check_bool(const BoolExprPtr& e, const Scope& sc, const SourceSpan& at) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, BoolCmp>) {
                    check_int(n.lhs, sc, at);
                    check_int(n.rhs, sc, at);
                } else if constexpr (std::is_same_v<T, BoolNot>) {
                    check_bool(n.operand, sc, at);
                } else {
                    check_bool(n.lhs, sc, at);
                    check_bool(n.rhs, sc, at);
                }
            },
            e->node);
    }

    void check_set(const SetExprPtr& e, const Scope& sc, const SourceSpan& at) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, SetVar>) {
                    if (n.name != sc.set_var) {
                        report(at, "unknown sorted-set variable '" + n.name + "' in " + sc.where);
                    }
                } else if constexpr (std::is_same_v<T, SetRemove>) {
                    check_set(n.base, sc, at);
                    for (const auto& i : n.indices) check_int(i, sc, at);
                }
            },
            e->node);
    }

    void check_stmt(const StmtPtr& s, const Scope& sc) {
        const SourceSpan& at = s->span;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Assign>) {
                    check_set(n.target.set, sc, at);
                    check_int(n.target.index, sc, at);
                    if (n.op.arg) check_int(n.op.arg, sc, at);
                } else if constexpr (std::is_same_v<T, Seq>) {
                    check_stmt(n.first, sc);
                    check_stmt(n.second, sc);
                } else if constexpr (std::is_same_v<T, If>) {
                    check_bool(n.cond, sc, at);
                    check_stmt(n.then_branch, sc);
                    check_stmt(n.else_branch, sc);
                } else if constexpr (std::is_same_v<T, QCase>) {
                    check_set(n.control.set, sc, at);
                    check_int(n.control.index, sc, at);
                    check_stmt(n.zero, sc);
                    check_stmt(n.one, sc);
                } else if constexpr (std::is_same_v<T, Call>) {
                    if (const ProcDecl* callee = program_.find(n.proc); !callee) {
                        report(at, "call to undeclared procedure '" + n.proc + "'");
                    } else if (callee->int_param.has_value() != (n.arg != nullptr)) {
                        report(at, "procedure '" + n.proc + "' " +
                                       (n.arg ? "takes no integer argument" : "expects an integer argument"));
                    }
                    if (n.arg) check_int(n.arg, sc, at);
                    check_set(n.set, sc, at);
                }
            },
            s->node);
    }

  private:
    void report(const SourceSpan& at, std::string msg) { out_.push_back({at, std::move(msg)}); }

    const Program& program_;
    std::vector<Diagnostic>& out_;
};

}  // namespace

std::vector<Diagnostic> wellformed_check(const Program& p) {
    std::vector<Diagnostic> out;
    WfChecker checker(p, out);
    std::set<std::string> seen;
    for (const auto& d : p.decls) {
        if (!seen.insert(d.name).second) {
            out.push_back({d.span, "duplicate procedure name '" + d.name + "'"});
        }
        if (d.int_param && *d.int_param == d.set_param) {
            out.push_back({d.span, "procedure '" + d.name + "' uses the same name for both parameters"});
        }
        checker.check_stmt(d.body, Scope{d.int_param, d.set_param, "procedure '" + d.name + "'"});
    }
    if (p.main) {
        checker.check_stmt(p.main, Scope{std::nullopt, p.main_var, "main statement"});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

IntExprPtr subst_int(const IntExprPtr& e, const std::string& var, std::int64_t n);

SetExprPtr subst_set(const SetExprPtr& e, const std::string& var, std::int64_t n) {
    if (const auto* r = std::get_if<SetRemove>(&e->node)) {
        auto base = subst_set(r->base, var, n);
        bool changed = base != r->base;
        std::vector<IntExprPtr> idx;
        idx.reserve(r->indices.size());
        for (const auto& i : r->indices) {
            idx.push_back(subst_int(i, var, n));
            changed = changed || idx.back() != i;
        }
        return changed ? set_remove(std::move(base), std::move(idx)) : e;
    }
    return e;
}

IntExprPtr subst_int(const IntExprPtr& e, const std::string& var, std::int64_t n) {
    return std::visit(
        [&](const auto& node) -> IntExprPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IntVar>) {
                return node.name == var ? int_lit(n) : e;
            } else if constexpr (std::is_same_v<T, IntOffset>) {
                auto base = subst_int(node.base, var, n);
                return base == node.base ? e : int_offset(base, node.offset);
            } else if constexpr (std::is_same_v<T, IntSize>) {
                auto set = subst_set(node.set, var, n);
                return set == node.set ? e : int_size(set);
            } else {
                return e;
            }
        },
        e->node);
}

BoolExprPtr subst_bool(const BoolExprPtr& e, const std::string& var, std::int64_t n) {
    return std::visit(
        [&](const auto& node) -> BoolExprPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, BoolCmp>) {
                auto l = subst_int(node.lhs, var, n), r = subst_int(node.rhs, var, n);
                return (l == node.lhs && r == node.rhs) ? e : bool_cmp(node.op, l, r);
            } else if constexpr (std::is_same_v<T, BoolNot>) {
                auto o = subst_bool(node.operand, var, n);
                return o == node.operand ? e : bool_not(o);
            } else {
                auto l = subst_bool(node.lhs, var, n), r = subst_bool(node.rhs, var, n);
                if (l == node.lhs && r == node.rhs) return e;
                return std::is_same_v<T, BoolAnd> ? bool_and(l, r) : bool_or(l, r);
            }
        },
        e->node);
}

QubitExpr subst_qubit(const QubitExpr& q, const std::string& var, std::int64_t n) {
    return {subst_set(q.set, var, n), subst_int(q.index, var, n)};
}

}  // namespace

StmtPtr substitute_int(const StmtPtr& s, const std::string& var, std::int64_t n) {
    return std::visit(
        [&](const auto& node) -> StmtPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Skip>) {
                return s;
            } else if constexpr (std::is_same_v<T, Assign>) {
                auto target = subst_qubit(node.target, var, n);
                OperatorExpr op = node.op;
                if (op.arg) op.arg = subst_int(op.arg, var, n);
                if (target.set == node.target.set && target.index == node.target.index && op.arg == node.op.arg) {
                    return s;
                }
                return make_assign(std::move(target), std::move(op), s->span);
            } else if constexpr (std::is_same_v<T, Seq>) {
                auto a = substitute_int(node.first, var, n), b = substitute_int(node.second, var, n);
                return (a == node.first && b == node.second) ? s : make_seq(a, b, s->span);
            } else if constexpr (std::is_same_v<T, If>) {
                auto c = subst_bool(node.cond, var, n);
                auto a = substitute_int(node.then_branch, var, n), b = substitute_int(node.else_branch, var, n);
                if (c == node.cond && a == node.then_branch && b == node.else_branch) return s;
                return make_if(c, a, b, s->span);
            } else if constexpr (std::is_same_v<T, QCase>) {
                auto q = subst_qubit(node.control, var, n);
                auto a = substitute_int(node.zero, var, n), b = substitute_int(node.one, var, n);
                if (q.set == node.control.set && q.index == node.control.index && a == node.zero && b == node.one) {
                    return s;
                }
                return make_qcase(std::move(q), a, b, s->span);
            } else {
                IntExprPtr arg = node.arg ? subst_int(node.arg, var, n) : nullptr;
                auto set = subst_set(node.set, var, n);
                return (arg == node.arg && set == node.set) ? s : make_call(node.proc, arg, set, s->span);
            }
        },
        s->node);
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const SetExprPtr& e) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, SetNil>) {
                return "nil";
            } else if constexpr (std::is_same_v<T, SetVar>) {
                return n.name;
            } else {
                std::string out = to_string(n.base) + " \\ [";
                for (std::size_t i = 0; i < n.indices.size(); ++i) {
                    if (i) out += ", ";
                    out += to_string(n.indices[i]);
                }
                return out + "]";
            }
        },
        e->node);
}

std::string to_string(const IntExprPtr& e) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return std::to_string(n.value);
            } else if constexpr (std::is_same_v<T, IntVar>) {
                return n.name;
            } else if constexpr (std::is_same_v<T, IntOffset>) {
                return to_string(n.base) + (n.offset < 0 ? " - " : " + ") + std::to_string(std::abs(n.offset));
            } else {
                return "size(" + to_string(n.set) + ")";
            }
        },
        e->node);
}

namespace {

int bool_prec(const BoolExprPtr& e) {
    if (std::holds_alternative<BoolOr>(e->node)) return 1;
    if (std::holds_alternative<BoolAnd>(e->node)) return 2;
    if (std::holds_alternative<BoolNot>(e->node)) return 3;
    return 4;
}

std::string bool_child(const BoolExprPtr& e, bool wrap) {
    return wrap ? "(" + to_string(e) + ")" : to_string(e);
}

}  // namespace

std::string to_string(const BoolExprPtr& e) {
    const int p = bool_prec(e);
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BoolCmp>) {
                const char* op = n.op == CmpOp::Gt ? " > " : n.op == CmpOp::Ge ? " >= " : " = ";
                return to_string(n.lhs) + op + to_string(n.rhs);
            } else if constexpr (std::is_same_v<T, BoolNot>) {
                return "not " + bool_child(n.operand, bool_prec(n.operand) < p);
            } else {
                const char* op = std::is_same_v<T, BoolAnd> ? " and " : " or ";
                return bool_child(n.lhs, bool_prec(n.lhs) < p) + op + bool_child(n.rhs, bool_prec(n.rhs) <= p);
            }
        },
        e->node);
}

std::string to_string(const QubitExpr& q) {
    std::string set = to_string(q.set);
    if (std::holds_alternative<SetRemove>(q.set->node)) set = "(" + set + ")";
    return set + "[" + to_string(q.index) + "]";
}

std::string to_string(const OperatorExpr& op) {
    switch (op.kind) {
        case OperatorExpr::Kind::Not:
            return "NOT";
        case OperatorExpr::Kind::RY:
            return "RY[" + op.phase.to_string() + "](" + to_string(op.arg) + ")";
        case OperatorExpr::Kind::Ph:
            return "PH[" + op.phase.to_string() + "](" + to_string(op.arg) + ")";
    }
    return "";
}

namespace {

std::string pad(int indent) { return std::string(static_cast<std::size_t>(indent) * 2, ' '); }

void print_stmt(std::ostringstream& out, const StmtPtr& s, int indent);

// Prints the statements of a right-nested sequence, one per line.
void print_lines(std::ostringstream& out, const StmtPtr& s, int indent) {
    const Statement* cur = s.get();
    while (const auto* seq = std::get_if<Seq>(&cur->node)) {
        if (std::holds_alternative<Seq>(seq->first->node)) {
            out << pad(indent) << "{\n";
            print_lines(out, seq->first, indent + 1);
            out << pad(indent) << "}\n";
        } else {
            print_stmt(out, seq->first, indent);
        }
        cur = seq->second.get();
    }
    StmtPtr last(s, cur);
    print_stmt(out, last, indent);
}

void print_branch(std::ostringstream& out, const StmtPtr& s, int indent) {
    out << "{\n";
    print_lines(out, s, indent + 1);
    out << pad(indent) << "}";
}

void print_stmt(std::ostringstream& out, const StmtPtr& s, int indent) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip>) {
                out << pad(indent) << "skip;\n";
            } else if constexpr (std::is_same_v<T, Assign>) {
                out << pad(indent) << to_string(n.target) << " *= " << to_string(n.op) << ";\n";
            } else if constexpr (std::is_same_v<T, Seq>) {
                print_lines(out, s, indent);
            } else if constexpr (std::is_same_v<T, If>) {
                out << pad(indent) << "if " << to_string(n.cond) << " then ";
                print_branch(out, n.then_branch, indent);
                out << " else ";
                print_branch(out, n.else_branch, indent);
                out << "\n";
            } else if constexpr (std::is_same_v<T, QCase>) {
                out << pad(indent) << "qcase " << to_string(n.control) << " of {\n";
                out << pad(indent + 1) << "0 -> ";
                print_branch(out, n.zero, indent + 1);
                out << ",\n" << pad(indent + 1) << "1 -> ";
                print_branch(out, n.one, indent + 1);
                out << "\n" << pad(indent) << "}\n";
            } else {
                out << pad(indent) << "call " << n.proc;
                if (n.arg) out << "[" << to_string(n.arg) << "]";
                out << "(" << to_string(n.set) << ");\n";
            }
        },
        s->node);
}

}  // namespace

std::string pretty_print(const StmtPtr& s, int indent) {
    std::ostringstream out;
    print_lines(out, s, indent);
    return out.str();
}

std::string pretty_print(const Program& p) {
    std::ostringstream out;
    for (const auto& d : p.decls) {
        out << "decl " << d.name;
        if (d.int_param) out << "[" << *d.int_param << "]";
        out << "(" << d.set_param << ") {\n";
        print_lines(out, d.body, 1);
        out << "},\n";
    }
    out << "::\n";
    if (p.main) print_lines(out, p.main, 0);
    return out.str();
}

// ---------------------------------------------------------------------------
// Equality

bool equal(const SetExprPtr& a, const SetExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->node.index() != b->node.index()) return false;
    if (const auto* va = std::get_if<SetVar>(&a->node)) return va->name == std::get<SetVar>(b->node).name;
    if (const auto* ra = std::get_if<SetRemove>(&a->node)) {
        const auto& rb = std::get<SetRemove>(b->node);
        if (ra->indices.size() != rb.indices.size() || !equal(ra->base, rb.base)) return false;
        for (std::size_t i = 0; i < ra->indices.size(); ++i) {
            if (!equal(ra->indices[i], rb.indices[i])) return false;
        }
    }
    return true;
}

bool equal(const IntExprPtr& a, const IntExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, IntLit>) {
                return na.value == nb.value;
            } else if constexpr (std::is_same_v<T, IntVar>) {
                return na.name == nb.name;
            } else if constexpr (std::is_same_v<T, IntOffset>) {
                return na.offset == nb.offset && equal(na.base, nb.base);
            } else {
                return equal(na.set, nb.set);
            }
        },
        a->node);
}

bool equal(const BoolExprPtr& a, const BoolExprPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, BoolCmp>) {
                return na.op == nb.op && equal(na.lhs, nb.lhs) && equal(na.rhs, nb.rhs);
            } else if constexpr (std::is_same_v<T, BoolNot>) {
                return equal(na.operand, nb.operand);
            } else {
                return equal(na.lhs, nb.lhs) && equal(na.rhs, nb.rhs);
            }
        },
        a->node);
}

namespace {

bool equal_qubit(const QubitExpr& a, const QubitExpr& b) { return equal(a.set, b.set) && equal(a.index, b.index); }

bool equal_op(const OperatorExpr& a, const OperatorExpr& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == OperatorExpr::Kind::Not) return true;
    return a.phase == b.phase && equal(a.arg, b.arg);
}

}  // namespace

bool equal(const StmtPtr& a, const StmtPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b->node);
            if constexpr (std::is_same_v<T, Skip>) {
                return true;
            } else if constexpr (std::is_same_v<T, Assign>) {
                return equal_qubit(na.target, nb.target) && equal_op(na.op, nb.op);
            } else if constexpr (std::is_same_v<T, Seq>) {
                return equal(na.first, nb.first) && equal(na.second, nb.second);
            } else if constexpr (std::is_same_v<T, If>) {
                return equal(na.cond, nb.cond) && equal(na.then_branch, nb.then_branch) &&
                       equal(na.else_branch, nb.else_branch);
            } else if constexpr (std::is_same_v<T, QCase>) {
                return equal_qubit(na.control, nb.control) && equal(na.zero, nb.zero) && equal(na.one, nb.one);
            } else {
                return na.proc == nb.proc && ((!na.arg && !nb.arg) || equal(na.arg, nb.arg)) &&
                       equal(na.set, nb.set);
            }
        },
        a->node);
}

bool equal(const Program& a, const Program& b) {
    if (a.decls.size() != b.decls.size() || a.main_var != b.main_var) return false;
    for (std::size_t i = 0; i < a.decls.size(); ++i) {
        const auto &da = a.decls[i], &db = b.decls[i];
        if (da.name != db.name || da.int_param != db.int_param || da.set_param != db.set_param ||
            !equal(da.body, db.body)) {
            return false;
        }
    }
    return equal(a.main, b.main);
}

// ---------------------------------------------------------------------------
// Size

namespace {

std::size_t size_of(const IntExprPtr& e);

std::size_t size_of(const SetExprPtr& e) {
    if (const auto* r = std::get_if<SetRemove>(&e->node)) {
        std::size_t n = 1 + size_of(r->base);
        for (const auto& i : r->indices) n += size_of(i);
        return n;
    }
    return 1;
}

std::size_t size_of(const IntExprPtr& e) {
    if (const auto* o = std::get_if<IntOffset>(&e->node)) return 2 + size_of(o->base);
    if (const auto* s = std::get_if<IntSize>(&e->node)) return 1 + size_of(s->set);
    return 1;
}

std::size_t size_of(const BoolExprPtr& e) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BoolCmp>) {
                return 1 + size_of(n.lhs) + size_of(n.rhs);
            } else if constexpr (std::is_same_v<T, BoolNot>) {
                return 1 + size_of(n.operand);
            } else {
                return 1 + size_of(n.lhs) + size_of(n.rhs);
            }
        },
        e->node);
}

std::size_t size_of(const StmtPtr& s) {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip>) {
                return 1;
            } else if constexpr (std::is_same_v<T, Assign>) {
                return 2 + size_of(n.target.set) + size_of(n.target.index) + (n.op.arg ? size_of(n.op.arg) : 0);
            } else if constexpr (std::is_same_v<T, Seq>) {
                return 1 + size_of(n.first) + size_of(n.second);
            } else if constexpr (std::is_same_v<T, If>) {
                return 1 + size_of(n.cond) + size_of(n.then_branch) + size_of(n.else_branch);
            } else if constexpr (std::is_same_v<T, QCase>) {
                return 1 + size_of(n.control.set) + size_of(n.control.index) + size_of(n.zero) + size_of(n.one);
            } else {
                return 1 + (n.arg ? size_of(n.arg) : 0) + size_of(n.set);
            }
        },
        s->node);
}

}  // namespace

std::size_t program_size(const Program& p) {
    std::size_t n = p.main ? size_of(p.main) : 0;
    for (const auto& d : p.decls) n += 1 + size_of(d.body);
    return n;
}

}  // namespace foq
