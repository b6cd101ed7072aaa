#include "foq/interpreter.hpp"

#include <algorithm>

namespace foq {

namespace {

// Nested calls beyond this depth are reported as budget exhaustion rather
// than risking the native stack.
constexpr int kMaxCallDepth = 4000;

}  // namespace

IndexList eval_set(const SetExprPtr& e, const IndexList& l) {
    return std::visit(
        [&](const auto& n) -> IndexList {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, SetNil>) {
                return {};
            } else if constexpr (std::is_same_v<T, SetVar>) {
                return l;
            } else {
                IndexList base = eval_set(n.base, l);
                std::vector<bool> drop(base.size(), false);
                for (const auto& i : n.indices) {
                    const std::int64_t k = eval_int(i, l);
                    if (k < 1 || k > static_cast<std::int64_t>(base.size())) return {};
                    drop[static_cast<std::size_t>(k - 1)] = true;
                }
                IndexList out;
                for (std::size_t j = 0; j < base.size(); ++j) {
                    if (!drop[j]) out.push_back(base[j]);
                }
                return out;
            }
        },
        e->node);
}

std::int64_t eval_int(const IntExprPtr& e, const IndexList& l) {
    return std::visit(
        [&](const auto& n) -> std::int64_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, IntVar>) {
                throw EvalError("unbound integer variable '" + n.name + "'");
            } else if constexpr (std::is_same_v<T, IntOffset>) {
                return eval_int(n.base, l) + n.offset;
            } else {
                return static_cast<std::int64_t>(eval_set(n.set, l).size());
            }
        },
        e->node);
}

bool eval_bool(const BoolExprPtr& e, const IndexList& l) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BoolCmp>) {
                const auto a = eval_int(n.lhs, l), b = eval_int(n.rhs, l);
                switch (n.op) {
                    case CmpOp::Gt:
                        return a > b;
                    case CmpOp::Ge:
                        return a >= b;
                    case CmpOp::Eq:
                        return a == b;
                }
                return false;
            } else if constexpr (std::is_same_v<T, BoolAnd>) {
                return eval_bool(n.lhs, l) && eval_bool(n.rhs, l);
            } else if constexpr (std::is_same_v<T, BoolOr>) {
                return eval_bool(n.lhs, l) || eval_bool(n.rhs, l);
            } else {
                return !eval_bool(n.operand, l);
            }
        },
        e->node);
}

int eval_qubit(const QubitExpr& q, const IndexList& l) {
    const IndexList s = eval_set(q.set, l);
    const std::int64_t k = eval_int(q.index, l);
    if (k < 1 || k > static_cast<std::int64_t>(s.size())) return 0;
    return s[static_cast<std::size_t>(k - 1)];
}

namespace {

struct Result {
    bool ok;
    std::int64_t level;
};

class Machine {
  public:
    Machine(const Program& p, const EvalOptions& opts) : program_(p), opts_(opts) {}

    Result exec(const StmtPtr& s, QuantumState& psi, std::vector<bool>& allowed, const IndexList& l) {
        if (++steps_ > opts_.budget) {
            throw BudgetExceeded("step budget of " + std::to_string(opts_.budget) + " exhausted");
        }
        return std::visit([&](const auto& n) { return step(n, *s, psi, allowed, l); }, s->node);
    }

    std::uint64_t steps() const { return steps_; }
    const std::string& error() const { return error_; }
    const SourceSpan& error_span() const { return error_span_; }

  private:
    Result bottom(const Statement& s, std::string msg) {
        error_ = std::move(msg);
        error_span_ = s.span;
        return {false, 0};
    }

    static bool accessible(const std::vector<bool>& allowed, int q) {
        return q >= 1 && static_cast<std::size_t>(q) < allowed.size() && allowed[static_cast<std::size_t>(q)];
    }

    Result step(const Skip&, const Statement&, QuantumState&, std::vector<bool>&, const IndexList&) {
        return {true, 0};
    }

    Result step(const Assign& a, const Statement& s, QuantumState& psi, std::vector<bool>& allowed,
                const IndexList& l) {
        const int q = eval_qubit(a.target, l);
        if (!accessible(allowed, q)) {
            return bottom(s, "assignment to inaccessible qubit " + std::to_string(q) + " (" + to_string(a.target) +
                                 ")");
        }
        const std::int64_t arg = a.op.arg ? eval_int(a.op.arg, l) : 0;
        psi.apply(gate_matrix(a.op.kind, a.op.phase, arg), q);
        return {true, 0};
    }

    Result step(const Seq& q, const Statement&, QuantumState& psi, std::vector<bool>& allowed, const IndexList& l) {
        const Result r1 = exec(q.first, psi, allowed, l);
        if (!r1.ok) return r1;
        const Result r2 = exec(q.second, psi, allowed, l);
        return {r2.ok, r1.level + r2.level};
    }

    Result step(const If& c, const Statement&, QuantumState& psi, std::vector<bool>& allowed, const IndexList& l) {
        return exec(eval_bool(c.cond, l) ? c.then_branch : c.else_branch, psi, allowed, l);
    }

    Result step(const QCase& c, const Statement& s, QuantumState& psi, std::vector<bool>& allowed,
                const IndexList& l) {
        const int q = eval_qubit(c.control, l);
        if (!accessible(allowed, q)) {
            return bottom(s, "quantum case on inaccessible qubit " + std::to_string(q) + " (" +
                                 to_string(c.control) + ")");
        }
        allowed[static_cast<std::size_t>(q)] = false;
        QuantumState psi0 = psi, psi1 = psi;
        const Result r0 = exec(c.zero, psi0, allowed, l);
        std::string err0 = error_;
        SourceSpan span0 = error_span_;
        const Result r1 = exec(c.one, psi1, allowed, l);
        allowed[static_cast<std::size_t>(q)] = true;
        const std::int64_t level = std::max(r0.level, r1.level);
        if (!r0.ok) {
            error_ = std::move(err0);
            error_span_ = std::move(span0);
        }
        if (!r0.ok || !r1.ok) return {false, level};
        const std::uint64_t mask = qubit_mask(psi.num_qubits(), q);
        for (std::uint64_t i = 0; i < psi.dim(); ++i) psi[i] = (i & mask) ? psi1[i] : psi0[i];
        return {true, level};
    }

    Result step(const Call& c, const Statement& s, QuantumState& psi, std::vector<bool>& allowed,
                const IndexList& l) {
        const IndexList sub = eval_set(c.set, l);
        if (sub.empty()) return {true, 1};
        const ProcDecl* decl = program_.find(c.proc);
        if (!decl) return bottom(s, "call to undeclared procedure '" + c.proc + "'");
        StmtPtr body = decl->body;
        if (decl->int_param) {
            const std::int64_t n = c.arg ? eval_int(c.arg, l) : 0;
            body = substitute_int(body, *decl->int_param, n);
        }
        if (++depth_ > kMaxCallDepth) {
            throw BudgetExceeded("call depth limit of " + std::to_string(kMaxCallDepth) + " exceeded");
        }
        const Result r = exec(body, psi, allowed, sub);
        --depth_;
        return {r.ok, r.level + 1};
    }

    const Program& program_;
    EvalOptions opts_;
    std::uint64_t steps_ = 0;
    int depth_ = 0;
    std::string error_;
    SourceSpan error_span_;
};

}  // namespace

EvalOutcome eval_statement(const Program& p, const StmtPtr& s, QuantumState psi, std::vector<bool> allowed,
                           const IndexList& l, const EvalOptions& opts) {
    Machine m(p, opts);
    EvalOutcome out;
    const QuantumState input = psi;
    Result r{true, 0};
    try {
        r = m.exec(s, psi, allowed, l);
    } catch (const EvalError& e) {
        r = {false, 0};
        out.error = std::string("evaluation error: ") + e.what();
        psi = input;
    }
    out.terminal = r.ok ? Terminal::Top : Terminal::Bottom;
    out.state = std::move(psi);
    out.level = r.level;
    out.steps = m.steps();
    if (!r.ok && out.error.empty()) {
        out.error = m.error();
        out.error_span = m.error_span();
    }
    return out;
}

EvalOutcome run(const Program& p, const QuantumState& psi, const EvalOptions& opts) {
    const int n = psi.num_qubits();
    IndexList l(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) l[static_cast<std::size_t>(i)] = i + 1;
    std::vector<bool> allowed(static_cast<std::size_t>(n) + 1, true);
    allowed[0] = false;
    return eval_statement(p, p.main, psi, std::move(allowed), l, opts);
}

std::int64_t level_of(const Program& p, int n, const EvalOptions& opts) {
    return run(p, QuantumState(n), opts).level;
}

namespace {

BoolExprPtr bounds_guard(const QubitExpr& q) {
    return bool_and(bool_cmp(CmpOp::Gt, q.index, int_lit(0)), bool_cmp(CmpOp::Ge, int_size(q.set), q.index));
}

}  // namespace

StmtPtr guard_errors(const StmtPtr& s) {
    return std::visit(
        [&](const auto& n) -> StmtPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip> || std::is_same_v<T, Call>) {
                return s;
            } else if constexpr (std::is_same_v<T, Assign>) {
                return make_if(bounds_guard(n.target), s, make_skip(s->span), s->span);
            } else if constexpr (std::is_same_v<T, Seq>) {
                return make_seq(guard_errors(n.first), guard_errors(n.second), s->span);
            } else if constexpr (std::is_same_v<T, If>) {
                return make_if(n.cond, guard_errors(n.then_branch), guard_errors(n.else_branch), s->span);
            } else {
                auto inner = make_qcase(n.control, guard_errors(n.zero), guard_errors(n.one), s->span);
                return make_if(bounds_guard(n.control), inner, make_skip(s->span), s->span);
            }
        },
        s->node);
}

Program guard_errors(const Program& p) {
    Program out = p;
    for (auto& d : out.decls) d.body = guard_errors(d.body);
    if (out.main) out.main = guard_errors(out.main);
    return out;
}

}  // namespace foq
