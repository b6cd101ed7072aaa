#include "foq/analysis.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "foq/interpreter.hpp"
#include "json.hpp"

namespace foq {

int ProcRelations::id(const std::string& name) const {
    auto it = index.find(name);
    return it == index.end() ? -1 : it->second;
}

bool ProcRelations::calls_directly(const std::string& a, const std::string& b) const {
    const int i = id(a), j = id(b);
    if (i < 0 || j < 0) return false;
    const auto& out = calls[static_cast<std::size_t>(i)];
    return std::find(out.begin(), out.end(), j) != out.end();
}

bool ProcRelations::geq(const std::string& a, const std::string& b) const {
    const int i = id(a), j = id(b);
    return i >= 0 && j >= 0 && reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

bool ProcRelations::equiv(const std::string& a, const std::string& b) const { return geq(a, b) && geq(b, a); }

bool ProcRelations::succ(const std::string& a, const std::string& b) const { return geq(a, b) && !equiv(a, b); }

namespace {

void collect_calls(const StmtPtr& s, std::vector<const Call*>& out, OpCounter* counter) {
    if (counter) counter->tick();
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Seq>) {
                collect_calls(n.first, out, counter);
                collect_calls(n.second, out, counter);
            } else if constexpr (std::is_same_v<T, If>) {
                collect_calls(n.then_branch, out, counter);
                collect_calls(n.else_branch, out, counter);
            } else if constexpr (std::is_same_v<T, QCase>) {
                collect_calls(n.zero, out, counter);
                collect_calls(n.one, out, counter);
            } else if constexpr (std::is_same_v<T, Call>) {
                out.push_back(&n);
            }
        },
        s->node);
}

// Calls with their source spans, for diagnostics.
void collect_call_stmts(const StmtPtr& s, std::vector<const Statement*>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Seq>) {
                collect_call_stmts(n.first, out);
                collect_call_stmts(n.second, out);
            } else if constexpr (std::is_same_v<T, If>) {
                collect_call_stmts(n.then_branch, out);
                collect_call_stmts(n.else_branch, out);
            } else if constexpr (std::is_same_v<T, QCase>) {
                collect_call_stmts(n.zero, out);
                collect_call_stmts(n.one, out);
            } else if constexpr (std::is_same_v<T, Call>) {
                out.push_back(s.get());
            }
        },
        s->node);
}

}  // namespace

ProcRelations call_relations(const Program& p, OpCounter* counter) {
    ProcRelations rel;
    for (const auto& d : p.decls) {
        if (rel.index.emplace(d.name, static_cast<int>(rel.procs.size())).second) rel.procs.push_back(d.name);
    }
    const std::size_t n = rel.procs.size();
    rel.calls.assign(n, {});
    for (const auto& d : p.decls) {
        const auto from = static_cast<std::size_t>(rel.id(d.name));
        std::vector<const Call*> found;
        collect_calls(d.body, found, counter);
        for (const Call* c : found) {
            const int to = rel.id(c->proc);
            if (to < 0) continue;
            auto& out = rel.calls[from];
            if (std::find(out.begin(), out.end(), to) == out.end()) out.push_back(to);
        }
    }

    // Reflexive-transitive closure: one DFS per procedure.
    rel.reach.assign(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<int> stack{static_cast<int>(s)};
        rel.reach[s][s] = true;
        while (!stack.empty()) {
            const auto v = static_cast<std::size_t>(stack.back());
            stack.pop_back();
            for (int w : rel.calls[v]) {
                if (counter) counter->tick();
                if (!rel.reach[s][static_cast<std::size_t>(w)]) {
                    rel.reach[s][static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
            }
        }
    }

    // Tarjan's strongly connected components.
    rel.scc.assign(n, -1);
    std::vector<int> idx(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next = 0, comp = 0;
    std::function<void(int)> visit = [&](int v) {
        const auto uv = static_cast<std::size_t>(v);
        idx[uv] = low[uv] = next++;
        stack.push_back(v);
        on_stack[uv] = true;
        for (int w : rel.calls[uv]) {
            if (counter) counter->tick();
            const auto uw = static_cast<std::size_t>(w);
            if (idx[uw] < 0) {
                visit(w);
                low[uv] = std::min(low[uv], low[uw]);
            } else if (on_stack[uw]) {
                low[uv] = std::min(low[uv], idx[uw]);
            }
        }
        if (low[uv] == idx[uv]) {
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(w)] = false;
                rel.scc[static_cast<std::size_t>(w)] = comp;
            } while (w != v);
            ++comp;
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (idx[v] < 0) visit(static_cast<int>(v));
    }
    return rel;
}

namespace {

bool decreasing_argument(const SetExprPtr& s, const std::string& param) {
    const auto* r = std::get_if<SetRemove>(&s->node);
    if (!r) return false;
    SetExprPtr cur = s;
    while (const auto* rr = std::get_if<SetRemove>(&cur->node)) {
        if (rr->indices.empty()) return false;
        cur = rr->base;
    }
    const auto* v = std::get_if<SetVar>(&cur->node);
    return v && v->name == param;
}

}  // namespace

WfResult check_wf(const Program& p, const ProcRelations& rel, OpCounter* counter) {
    WfResult out;
    for (const auto& d : p.decls) {
        std::vector<const Statement*> calls;
        collect_call_stmts(d.body, calls);
        for (const Statement* st : calls) {
            if (counter) counter->tick();
            const auto& c = std::get<Call>(st->node);
            if (!rel.equiv(d.name, c.proc)) continue;
            if (!decreasing_argument(c.set, d.set_param)) {
                out.ok = false;
                out.diagnostics.push_back({st->span, "call to '" + c.proc + "' in '" + d.name +
                                                         "' must pass " + d.set_param +
                                                         " \\ [...] (argument is " + to_string(c.set) + ")"});
            }
        }
    }
    return out;
}

std::int64_t statement_width(const StmtPtr& s, const ProcRelations& rel, const std::string& proc,
                             OpCounter* counter) {
    if (counter) counter->tick();
    return std::visit(
        [&](const auto& n) -> std::int64_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Seq>) {
                return statement_width(n.first, rel, proc, counter) + statement_width(n.second, rel, proc, counter);
            } else if constexpr (std::is_same_v<T, If>) {
                return std::max(statement_width(n.then_branch, rel, proc, counter),
                                statement_width(n.else_branch, rel, proc, counter));
            } else if constexpr (std::is_same_v<T, QCase>) {
                return std::max(statement_width(n.zero, rel, proc, counter),
                                statement_width(n.one, rel, proc, counter));
            } else if constexpr (std::is_same_v<T, Call>) {
                return rel.equiv(n.proc, proc) ? 1 : 0;
            } else {
                return 0;
            }
        },
        s->node);
}

std::int64_t width(const Program& p, const ProcRelations& rel, const std::string& proc, OpCounter* counter) {
    const ProcDecl* d = p.find(proc);
    if (!d) throw std::invalid_argument("unknown procedure '" + proc + "'");
    return statement_width(d->body, rel, proc, counter);
}

Ranks rank(const Program&, const ProcRelations& rel) {
    Ranks out;
    const std::size_t n = rel.procs.size();
    std::vector<int> memo(n, -1);
    std::function<int(std::size_t)> rk = [&](std::size_t v) {
        if (memo[v] >= 0) return memo[v];
        int best = 0;
        for (std::size_t w = 0; w < n; ++w) {
            if (rel.reach[v][w] && !rel.reach[w][v]) best = std::max(best, 1 + rk(w));
        }
        return memo[v] = best;
    };
    for (std::size_t v = 0; v < n; ++v) {
        out.per_proc[rel.procs[v]] = rk(v);
        out.program = std::max(out.program, memo[v]);
    }
    return out;
}

std::int64_t PfoqVerdict::width_of(const std::string& proc) const {
    for (const auto& [name, w] : widths) {
        if (name == proc) return w;
    }
    throw std::invalid_argument("no width recorded for '" + proc + "'");
}

int PfoqVerdict::rank_of(const std::string& proc) const {
    for (const auto& [name, r] : ranks) {
        if (name == proc) return r;
    }
    throw std::invalid_argument("no rank recorded for '" + proc + "'");
}

std::string PfoqVerdict::to_json() const {
    nlohmann::ordered_json j;
    j["accepted"] = accepted;
    j["widths"] = nlohmann::ordered_json::object();
    for (const auto& [name, w] : widths) j["widths"][name] = w;
    j["ranks"] = nlohmann::ordered_json::object();
    for (const auto& [name, r] : ranks) j["ranks"][name] = r;
    j["degree"] = degree ? nlohmann::ordered_json(*degree) : nlohmann::ordered_json(nullptr);
    j["diagnostics"] = nlohmann::ordered_json::array();
    for (const auto& d : diagnostics) {
        j["diagnostics"].push_back({{"location", d.span.to_string()}, {"message", d.message}});
    }
    return j.dump();
}

PfoqVerdict check_pfoq(const Program& p, OpCounter* counter) {
    const Program guarded = guard_errors(p);
    const ProcRelations rel = call_relations(guarded, counter);
    PfoqVerdict v;
    WfResult wf = check_wf(guarded, rel, counter);
    v.diagnostics = std::move(wf.diagnostics);
    bool narrow = true;
    for (const auto& d : guarded.decls) {
        const std::int64_t w = width(guarded, rel, d.name, counter);
        v.widths.emplace_back(d.name, w);
        if (w > 1) {
            narrow = false;
            v.diagnostics.push_back({d.span, "procedure '" + d.name + "' has width " + std::to_string(w) +
                                                 " (at most 1 allowed)"});
        }
    }
    const Ranks r = rank(guarded, rel);
    for (const auto& name : rel.procs) v.ranks.emplace_back(name, r.per_proc.at(name));
    v.program_rank = r.program;
    v.accepted = wf.ok && narrow;
    if (v.accepted) v.degree = r.program + 1;
    return v;
}

std::optional<int> level_bound_degree(const Program& p) { return check_pfoq(p).degree; }

}  // namespace foq
