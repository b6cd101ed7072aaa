#include "foq/transform.hpp"

namespace foq {

OperatorExpr dagger(const OperatorExpr& op) {
    if (op.kind == OperatorExpr::Kind::Not) return op;
    OperatorExpr out = op;
    out.phase = op.phase.neg();
    return out;
}

StmtPtr invert(const StmtPtr& s) {
    return std::visit(
        [&](const auto& n) -> StmtPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Skip> || std::is_same_v<T, Call>) {
                return s;
            } else if constexpr (std::is_same_v<T, Assign>) {
                return make_assign(n.target, dagger(n.op), s->span);
            } else if constexpr (std::is_same_v<T, Seq>) {
                return make_seq(invert(n.second), invert(n.first), s->span);
            } else if constexpr (std::is_same_v<T, If>) {
                return make_if(n.cond, invert(n.then_branch), invert(n.else_branch), s->span);
            } else {
                return make_qcase(n.control, invert(n.zero), invert(n.one), s->span);
            }
        },
        s->node);
}

Program invert(const Program& p) {
    Program out = p;
    for (auto& d : out.decls) d.body = invert(d.body);
    if (out.main) out.main = invert(out.main);
    return out;
}

}  // namespace foq
